#include "lmu/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lmu/error.hpp"

namespace lmu {

Distribution::Distribution(std::vector<Entry> weights) : weights_(std::move(weights)) {
  std::stable_sort(weights_.begin(), weights_.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
}

Rational Distribution::weight(StateIndex s) const {
  for (const auto& [state, w] : weights_) {
    if (state == s) return w;
  }
  return Rational::zero();
}

Rational Distribution::total() const {
  Rational sum;
  for (const auto& entry : weights_) sum += entry.second;
  return sum;
}

Pnts::Pnts(std::vector<std::string> state_names, std::vector<std::vector<Distribution>> transitions)
    : names_(std::move(state_names)), transitions_(std::move(transitions)) {
  transitions_.resize(names_.size());
  for (auto& out : transitions_) {
    std::vector<Distribution> unique;
    for (auto& d : out) {
      if (std::find(unique.begin(), unique.end(), d) == unique.end()) unique.push_back(std::move(d));
    }
    out = std::move(unique);
  }
}

std::optional<StateIndex> Pnts::find(std::string_view name) const {
  for (StateIndex s = 0; s < names_.size(); ++s) {
    if (names_[s] == name) return s;
  }
  return std::nullopt;
}

StateIndex Pnts::index(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw Error("unknown state '" + std::string(name) + "'");
}

void Interpretation::set(std::string proposition, std::vector<Rational> values) {
  valuation_[std::move(proposition)] = std::move(values);
}

bool Interpretation::contains(std::string_view proposition) const {
  return valuation_.find(proposition) != valuation_.end();
}

const std::vector<Rational>& Interpretation::values(std::string_view proposition) const {
  auto it = valuation_.find(proposition);
  if (it == valuation_.end()) throw Error("unknown proposition '" + std::string(proposition) + "'");
  return it->second;
}

const Rational& Interpretation::value(std::string_view proposition, StateIndex s) const {
  return values(proposition).at(s);
}

Rational Interpretation::complement(std::string_view proposition, StateIndex s) const {
  return Rational::one() - value(proposition, s);
}

bool Interpretation::is_boolean() const {
  for (const auto& [name, values] : valuation_) {
    for (const auto& v : values) {
      if (!v.is_zero() && v != Rational::one()) return false;
    }
  }
  return true;
}

namespace {

void check_distribution(const Distribution& d, std::size_t states, const std::string& where,
                        std::vector<std::string>& errors) {
  std::set<StateIndex> seen;
  for (const auto& [state, w] : d.weights()) {
    if (state >= states) {
      errors.push_back(where + ": distribution refers to unknown state #" + std::to_string(state));
      continue;
    }
    if (!seen.insert(state).second) {
      errors.push_back(where + ": state #" + std::to_string(state) + " listed twice");
    }
    if (w.is_zero()) {
      errors.push_back(where + ": zero weight must be omitted");
    } else if (w.sign() < 0 || w > Rational::one()) {
      errors.push_back(where + ": weight " + w.str() + " outside (0,1]");
    }
  }
  Rational total = d.total();
  if (total != Rational::one()) {
    errors.push_back(where + ": distribution sums to " + total.str() + ", expected 1");
  }
}

}  // namespace

std::vector<std::string> validate_model(const Pnts& system, const Interpretation& interpretation,
                                        ValuationMode mode) {
  std::vector<std::string> errors;
  std::set<std::string> names;
  for (const auto& name : system.names()) {
    if (!names.insert(name).second) errors.push_back("state '" + name + "' declared twice");
  }
  for (StateIndex s = 0; s < system.size(); ++s) {
    auto out = system.distributions(s);
    for (std::size_t k = 0; k < out.size(); ++k) {
      check_distribution(out[k], system.size(),
                         "state " + system.name(s) + ", distribution " + std::to_string(k + 1), errors);
    }
  }
  for (const auto& [prop, values] : interpretation.valuation()) {
    if (values.size() != system.size()) {
      errors.push_back("proposition " + prop + " has " + std::to_string(values.size()) + " values for " +
                       std::to_string(system.size()) + " states");
    }
    for (std::size_t s = 0; s < values.size(); ++s) {
      const Rational& v = values[s];
      std::string at = s < system.size() ? system.name(s) : "#" + std::to_string(s);
      if (!v.in_unit_interval()) {
        errors.push_back("proposition " + prop + " at " + at + ": value " + v.str() + " outside [0,1]");
      } else if (mode == ValuationMode::Boolean && !v.is_zero() && v != Rational::one()) {
        errors.push_back("proposition " + prop + " at " + at + ": non-boolean valuation in PCTL mode");
      }
    }
  }
  return errors;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Token {
  enum Kind { Word, Number, Symbol, End } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, std::size_t line_no) : text_(line), line_(line_no) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t col = pos_ + 1;
    if (pos_ >= text_.size() || text_[pos_] == '#') return {Token::End, "", line_, col};
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {Token::Word, std::string(text_.substr(start, pos_ - start)), line_, col};
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return {Token::Symbol, "->", line_, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      std::size_t start = pos_++;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '/' || text_[pos_] == '.')) {
        ++pos_;
      }
      return {Token::Number, std::string(text_.substr(start, pos_ - start)), line_, col};
    }
    ++pos_;
    return {Token::Symbol, std::string(1, c), line_, col};
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

[[noreturn]] void fail(const Token& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

struct RawEntry {
  Token state;
  Token weight;
};

struct Statement {
  enum Kind { Prop, Trans } kind;
  Token head;  // proposition name or source state
  std::vector<RawEntry> entries;
};

std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  LineLexer lexer(line, line_no);
  do {
    out.push_back(lexer.next());
  } while (out.back().kind != Token::End);
  return out;
}

class StatementParser {
 public:
  explicit StatementParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  Token expect_symbol(const std::string& s) {
    Token t = take();
    if (t.kind != Token::Symbol || t.text != s) fail(t, "expected '" + s + "'");
    return t;
  }

  Token expect_word(const char* what) {
    Token t = take();
    if (t.kind != Token::Word) fail(t, std::string("expected ") + what);
    return t;
  }

  void expect_end() {
    if (peek().kind != Token::End) fail(peek(), "unexpected '" + peek().text + "'");
  }

  std::vector<RawEntry> entries() {
    expect_symbol("{");
    std::vector<RawEntry> out;
    if (peek().kind == Token::Symbol && peek().text == "}") {
      take();
      return out;
    }
    for (;;) {
      Token state = expect_word("state name");
      expect_symbol(":");
      Token weight = take();
      if (weight.kind != Token::Number) fail(weight, "expected rational");
      out.push_back({state, weight});
      Token sep = take();
      if (sep.kind == Token::Symbol && sep.text == "}") break;
      if (sep.kind != Token::Symbol || sep.text != ",") fail(sep, "expected ',' or '}'");
    }
    return out;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Rational parse_weight(const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const Error& e) {
    fail(t, e.what());
  }
}

}  // namespace

Model parse_model(std::string_view text) {
  std::vector<Token> state_tokens;
  std::vector<Statement> statements;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    StatementParser p(tokenize_line(line, line_no));
    if (p.peek().kind == Token::End) continue;
    Token keyword = p.expect_word("'state', 'prop' or 'trans'");
    if (keyword.text == "state") {
      if (p.peek().kind == Token::End) fail(p.peek(), "expected state name");
      while (p.peek().kind != Token::End) {
        Token name = p.expect_word("state name");
        if (!std::islower(static_cast<unsigned char>(name.text.front()))) {
          fail(name, "state names must begin with a lowercase letter");
        }
        state_tokens.push_back(name);
      }
    } else if (keyword.text == "prop") {
      Token name = p.expect_word("proposition name");
      if (!std::isupper(static_cast<unsigned char>(name.text.front()))) {
        fail(name, "proposition names must begin with an uppercase letter");
      }
      p.expect_symbol("=");
      auto entries = p.entries();
      p.expect_end();
      statements.push_back({Statement::Prop, name, std::move(entries)});
    } else if (keyword.text == "trans") {
      Token source = p.expect_word("state name");
      p.expect_symbol("->");
      auto entries = p.entries();
      p.expect_end();
      statements.push_back({Statement::Trans, source, std::move(entries)});
    } else {
      fail(keyword, "expected 'state', 'prop' or 'trans'");
    }
    if (end == text.size()) break;
  }

  std::vector<std::string> names;
  for (const auto& t : state_tokens) {
    if (std::find(names.begin(), names.end(), t.text) != names.end()) {
      fail(t, "state '" + t.text + "' declared twice");
    }
    names.push_back(t.text);
  }
  auto resolve = [&](const Token& t) -> StateIndex {
    auto it = std::find(names.begin(), names.end(), t.text);
    if (it == names.end()) fail(t, "unknown state '" + t.text + "'");
    return static_cast<StateIndex>(it - names.begin());
  };

  std::vector<std::vector<Distribution>> transitions(names.size());
  Interpretation interpretation;
  for (const auto& st : statements) {
    std::vector<Distribution::Entry> weights;
    std::set<StateIndex> seen;
    for (const auto& e : st.entries) {
      StateIndex s = resolve(e.state);
      if (!seen.insert(s).second) fail(e.state, "state '" + e.state.text + "' listed twice");
      weights.emplace_back(s, parse_weight(e.weight));
    }
    if (st.kind == Statement::Prop) {
      if (interpretation.contains(st.head.text)) {
        fail(st.head, "proposition '" + st.head.text + "' defined twice");
      }
      std::vector<Rational> values(names.size());
      for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!weights[k].second.in_unit_interval()) {
          fail(st.entries[k].weight, "valuation " + weights[k].second.str() + " outside [0,1]");
        }
        values[weights[k].first] = weights[k].second;
      }
      interpretation.set(st.head.text, std::move(values));
    } else {
      StateIndex source = resolve(st.head);
      Rational total;
      for (std::size_t k = 0; k < weights.size(); ++k) {
        const Rational& w = weights[k].second;
        if (w.is_zero()) fail(st.entries[k].weight, "zero weight must be omitted");
        if (w.sign() < 0 || w > Rational::one()) {
          fail(st.entries[k].weight, "weight " + w.str() + " outside (0,1]");
        }
        total += w;
      }
      if (total != Rational::one()) {
        fail(st.head, "distribution sums to " + total.str() + ", expected 1");
      }
      transitions[source].emplace_back(std::move(weights));
    }
  }

  Model model{Pnts(std::move(names), std::move(transitions)), std::move(interpretation)};
  if (auto errors = validate_model(model.system, model.interpretation); !errors.empty()) {
    throw Error(errors.front());
  }
  return model;
}

std::string render_model(const Model& model) {
  const Pnts& m = model.system;
  std::ostringstream out;
  out << "state";
  for (const auto& name : m.names()) out << ' ' << name;
  out << '\n';
  for (const auto& [prop, values] : model.interpretation.valuation()) {
    out << "prop " << prop << " = {";
    bool first = true;
    for (StateIndex s = 0; s < values.size(); ++s) {
      if (values[s].is_zero()) continue;
      out << (first ? " " : ", ") << m.name(s) << ": " << values[s];
      first = false;
    }
    out << (first ? "}" : " }") << '\n';
  }
  for (StateIndex s = 0; s < m.size(); ++s) {
    for (const auto& d : m.distributions(s)) {
      out << "trans " << m.name(s) << " -> {";
      bool first = true;
      for (const auto& [t, w] : d.weights()) {
        out << (first ? " " : ", ") << m.name(t) << ": " << w;
        first = false;
      }
      out << " }\n";
    }
  }
  return out.str();
}

void EdgeRelation::add(StateIndex from, StateIndex to) {
  auto& out = successors_.at(from);
  auto it = std::lower_bound(out.begin(), out.end(), to);
  if (it == out.end() || *it != to) out.insert(it, to);
}

bool EdgeRelation::contains(StateIndex from, StateIndex to) const {
  const auto& out = successors_.at(from);
  return std::binary_search(out.begin(), out.end(), to);
}

std::set<std::pair<StateIndex, StateIndex>> EdgeRelation::edges() const {
  std::set<std::pair<StateIndex, StateIndex>> out;
  for (StateIndex s = 0; s < successors_.size(); ++s) {
    for (StateIndex t : successors_[s]) out.emplace(s, t);
  }
  return out;
}

EdgeRelation underlying_graph(const Pnts& system) {
  EdgeRelation graph(system.size());
  for (StateIndex s = 0; s < system.size(); ++s) {
    for (const auto& d : system.distributions(s)) {
      for (const auto& [t, w] : d.weights()) {
        if (w.sign() > 0) graph.add(s, t);
      }
    }
  }
  return graph;
}

}  // namespace lmu
