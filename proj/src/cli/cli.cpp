#include "lmu/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "lmu/encoder.hpp"
#include "lmu/error.hpp"
#include "lmu/evaluator.hpp"
#include "lmu/model.hpp"
#include "lmu/oracle.hpp"
#include "lmu/pctl.hpp"
#include "lmu/translator.hpp"

namespace lmu {

namespace {

struct Options {
  std::string model_path;
  std::string lmu;
  std::string pctl;
  std::string state;
  std::string term;
  std::vector<std::string> point;
  bool json = false;
  bool cross_check = false;
  bool approx = false;
  bool show_cle = false;
  bool provenance = false;
  bool probabilities = false;
};

// Raised when the oracle disagrees with the evaluator.
class Mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError& e) {
    throw Error(path + ":" + e.what());
  }
}

std::vector<StateIndex> selected_states(const Model& model, const std::string& state) {
  if (!state.empty()) return {model.system.index(state)};
  std::vector<StateIndex> all(model.system.size());
  for (StateIndex s = 0; s < all.size(); ++s) all[s] = s;
  return all;
}

void require_boolean(const Model& model) {
  auto problems = validate_model(model.system, model.interpretation, ValuationMode::Boolean);
  if (!problems.empty()) throw Error(problems.front());
}

// The formula to check, plus the PCTL source when there is one.
struct Input {
  Formula formula;
  std::optional<PctlState> pctl;
};

Input read_formula(const Options& o) {
  if (o.lmu.empty() == o.pctl.empty()) throw Error("give exactly one of --lmu and --pctl");
  if (!o.lmu.empty()) return {parse_formula(o.lmu), std::nullopt};
  PctlState phi = parse_pctl(o.pctl);
  return {encode_pctl(phi), phi};
}

std::string approx_label(const Rational& q) { return "~" + q.decimal(); }

int check(const Options& o, std::ostream& out) {
  Model model = load_model(o.model_path);
  Input input = read_formula(o);
  if (input.pctl) require_boolean(model);
  auto states = selected_states(model, o.state);

  Translator translator(input.formula, model);
  std::vector<Rational> values;
  std::vector<std::string> cles;
  std::size_t iterations = 0;
  for (StateIndex s : states) {
    EvalResult r = eval_term(translator.translate(s), {});
    iterations += r.iterations;
    values.push_back(r.value);
    cles.push_back(r.str());
  }

  std::vector<std::string> mismatches;
  if (o.cross_check) {
    if (input.pctl) {
      StateSet verdict = pctl_oracle(*input.pctl, model);
      for (std::size_t k = 0; k < states.size(); ++k) {
        Rational expected = verdict[states[k]] ? Rational::one() : Rational::zero();
        if (values[k] != expected) {
          mismatches.push_back(model.system.name(states[k]) + ": evaluator " + values[k].str() + ", oracle " +
                               expected.str());
        }
      }
    } else {
      StateBounds bounds = kleene_bounds(input.formula, model);
      for (std::size_t k = 0; k < states.size(); ++k) {
        const StateIndex s = states[k];
        if (values[k] < bounds.lower[s] || values[k] > bounds.upper[s]) {
          mismatches.push_back(model.system.name(s) + ": evaluator " + values[k].str() + " outside oracle bounds [" +
                               bounds.lower[s].str() + ", " + bounds.upper[s].str() + "]");
        }
      }
    }
  }

  if (o.json) {
    nlohmann::ordered_json doc;
    doc["formula"] = input.pctl ? render(*input.pctl) : render(input.formula);
    doc["results"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < states.size(); ++k) {
      nlohmann::ordered_json r;
      r["state"] = model.system.name(states[k]);
      r["num"] = values[k].numerator().get_str();
      r["den"] = values[k].denominator().get_str();
      r["approx"] = values[k].decimal();
      if (o.show_cle) r["cle"] = cles[k];
      doc["results"].push_back(std::move(r));
    }
    doc["iterations"] = iterations;
    if (o.provenance) doc["encoding"] = render(input.formula);
    if (o.cross_check) doc["cross_check"] = mismatches.empty() ? "agree" : "mismatch";
    out << doc.dump(2) << "\n";
  } else {
    if (o.provenance) {
      if (input.pctl) out << "formula: " << render(*input.pctl) << "\n";
      out << "encoding: " << render(input.formula) << "\n";
    }
    for (std::size_t k = 0; k < states.size(); ++k) {
      out << model.system.name(states[k]) << " = " << values[k].str();
      if (o.approx) out << "  (" << approx_label(values[k]) << ")";
      out << "\n";
      if (o.show_cle) out << "  " << cles[k] << "\n";
    }
    if (o.provenance) out << "iterations: " << iterations << "\n";
    if (o.cross_check && mismatches.empty()) out << "cross-check: oracle agrees\n";
  }
  if (!mismatches.empty()) {
    std::string all;
    for (const auto& m : mismatches) all += "\n  " + m;
    throw Mismatch("cross-check failed:" + all);
  }
  return 0;
}

int encode(const Options& o, std::ostream& out) {
  out << render(encode_pctl(parse_pctl(o.pctl))) << "\n";
  return 0;
}

int translate_cmd(const Options& o, std::ostream& out) {
  Model model = load_model(o.model_path);
  Input input = read_formula(o);
  if (input.pctl) require_boolean(model);
  Translator translator(input.formula, model);
  auto states = selected_states(model, o.state);
  for (StateIndex s : states) {
    if (states.size() > 1) out << model.system.name(s) << ": ";
    out << render(translator.translate(s)) << "\n";
  }
  return 0;
}

Point parse_point(const std::vector<std::string>& items) {
  Point point;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("point assignment '" + item + "' is not of the form x=q");
    point.emplace_back(item.substr(0, eq), Rational::parse(item.substr(eq + 1)));
  }
  return point;
}

int eval_cmd(const Options& o, std::ostream& out) {
  MuTerm t = parse_term(o.term);
  Point point = parse_point(o.point);
  EvalResult r = eval_term(t, point);
  if (o.json) {
    nlohmann::ordered_json doc;
    doc["term"] = render(t);
    doc["num"] = r.value.numerator().get_str();
    doc["den"] = r.value.denominator().get_str();
    doc["approx"] = r.value.decimal();
    if (o.show_cle) doc["cle"] = r.str();
    doc["iterations"] = r.iterations;
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << r.value.str();
  if (o.approx) out << "  (" << approx_label(r.value) << ")";
  out << "\n";
  if (o.show_cle) out << r.str() << "\n";
  return 0;
}

int oracle_cmd(const Options& o, std::ostream& out) {
  Model model = load_model(o.model_path);
  require_boolean(model);
  PctlState phi = parse_pctl(o.pctl);
  StateSet verdict = pctl_oracle(phi, model);
  std::optional<std::vector<Rational>> probs;
  if (o.probabilities) probs = pctl_path_probabilities(phi, model);
  for (StateIndex s : selected_states(model, o.state)) {
    out << model.system.name(s) << " = " << (verdict[s] ? 1 : 0);
    if (probs) out << "  (p = " << (*probs)[s].str() << ")";
    out << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact model checker for the Lukasiewicz mu-calculus and PCTL", "lmu"};
  app.require_subcommand(1);
  Options o;

  auto* check_cmd = app.add_subcommand("check", "Evaluate a formula at every state of a model");
  check_cmd->add_option("--model", o.model_path, "Model file")->required();
  check_cmd->add_option("--lmu", o.lmu, "Lukasiewicz mu-calculus formula");
  check_cmd->add_option("--pctl", o.pctl, "PCTL state formula");
  check_cmd->add_option("--state", o.state, "Report only this state");
  check_cmd->add_flag("--json", o.json, "Structured output");
  check_cmd->add_flag("--cross-check", o.cross_check, "Compare against the oracle; fail on disagreement");
  check_cmd->add_flag("--approx", o.approx, "Also print decimal approximations");
  check_cmd->add_flag("--show-cle", o.show_cle, "Print the conditioned linear expression per state");
  check_cmd->add_flag("--provenance", o.provenance, "Print the encoded formula and iteration count");

  auto* encode_cmd = app.add_subcommand("encode", "Print the mu-calculus encoding of a PCTL formula");
  encode_cmd->add_option("--pctl", o.pctl, "PCTL state formula")->required();

  auto* translate = app.add_subcommand("translate", "Print the mu-term of a formula at a state");
  translate->add_option("--model", o.model_path, "Model file")->required();
  translate->add_option("--lmu", o.lmu, "Lukasiewicz mu-calculus formula");
  translate->add_option("--pctl", o.pctl, "PCTL state formula");
  translate->add_option("--state", o.state, "Translate only at this state");

  auto* eval = app.add_subcommand("eval", "Evaluate a mu-term at a point");
  eval->add_option("--term", o.term, "Mu-term")->required();
  eval->add_option("--point", o.point, "Variable assignment x=q (repeatable)");
  eval->add_flag("--cle", o.show_cle, "Print the conditioned linear expression");
  eval->add_flag("--approx", o.approx, "Also print a decimal approximation");
  eval->add_flag("--json", o.json, "Structured output");

  auto* oracle = app.add_subcommand("oracle", "Check a PCTL formula with the reference checker");
  oracle->add_option("--model", o.model_path, "Model file")->required();
  oracle->add_option("--pctl", o.pctl, "PCTL state formula")->required();
  oracle->add_option("--state", o.state, "Report only this state");
  oracle->add_flag("--probabilities", o.probabilities, "Also print extremal path probabilities");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check_cmd) return check(o, out);
    if (*encode_cmd) return encode(o, out);
    if (*translate) return translate_cmd(o, out);
    if (*eval) return eval_cmd(o, out);
    return oracle_cmd(o, out);
  } catch (const Mismatch& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lmu
