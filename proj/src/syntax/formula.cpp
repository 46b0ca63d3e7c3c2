#include "lmu/formula.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <map>

#include "lexer.hpp"
#include "lmu/error.hpp"

namespace lmu {

Formula Formula::make(FormulaKind kind, std::string name, Rational q, std::shared_ptr<const Node> lhs,
                      std::shared_ptr<const Node> rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->coefficient = std::move(q);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);

  switch (kind) {
    case FormulaKind::Var:
      node->free = {node->name};
      break;
    case FormulaKind::Prop:
    case FormulaKind::CoProp:
      break;
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      node->free = detail::without_name(node->lhs->free, node->name);
      break;
    default:
      node->free = node->rhs ? detail::merge_names(node->lhs->free, node->rhs->free) : node->lhs->free;
  }

  std::size_t h = detail::mix_hash(static_cast<std::size_t>(kind), std::hash<std::string>{}(node->name));
  h = detail::mix_hash(h, node->coefficient.hash());
  if (node->lhs) h = detail::mix_hash(h, node->lhs->hash);
  if (node->rhs) h = detail::mix_hash(h, node->rhs->hash);
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::var(std::string name) { return make(FormulaKind::Var, std::move(name), {}, nullptr, nullptr); }
Formula Formula::prop(std::string name) { return make(FormulaKind::Prop, std::move(name), {}, nullptr, nullptr); }
Formula Formula::coprop(std::string name) {
  return make(FormulaKind::CoProp, std::move(name), {}, nullptr, nullptr);
}

Formula Formula::scalar(Rational q, Formula f) {
  if (!q.in_unit_interval()) throw Error("scalar " + q.str() + " outside [0,1]");
  return make(FormulaKind::Scalar, {}, std::move(q), f.node_, nullptr);
}

Formula Formula::binary(FormulaKind kind, Formula a, Formula b) {
  return make(kind, {}, {}, a.node_, b.node_);
}
Formula Formula::join(Formula a, Formula b) { return binary(FormulaKind::Join, std::move(a), std::move(b)); }
Formula Formula::meet(Formula a, Formula b) { return binary(FormulaKind::Meet, std::move(a), std::move(b)); }
Formula Formula::oplus(Formula a, Formula b) { return binary(FormulaKind::OPlus, std::move(a), std::move(b)); }
Formula Formula::otimes(Formula a, Formula b) { return binary(FormulaKind::OTimes, std::move(a), std::move(b)); }
Formula Formula::diamond(Formula f) { return make(FormulaKind::Diamond, {}, {}, f.node_, nullptr); }
Formula Formula::box(Formula f) { return make(FormulaKind::Box, {}, {}, f.node_, nullptr); }

Formula Formula::binder(FormulaKind kind, std::string variable, Formula body) {
  return make(kind, std::move(variable), {}, body.node_, nullptr);
}
Formula Formula::mu(std::string variable, Formula body) {
  return binder(FormulaKind::Mu, std::move(variable), std::move(body));
}
Formula Formula::nu(std::string variable, Formula body) {
  return binder(FormulaKind::Nu, std::move(variable), std::move(body));
}

const std::string& Formula::constant_variable() {
  static const std::string name = "_c";
  return name;
}

Formula Formula::one() {
  static const Formula f = nu(constant_variable(), var(constant_variable()));
  return f;
}

Formula Formula::zero() {
  static const Formula f = mu(constant_variable(), var(constant_variable()));
  return f;
}

Formula Formula::constant(Rational q) { return scalar(std::move(q), one()); }

bool Formula::is_binary() const {
  switch (kind()) {
    case FormulaKind::Join:
    case FormulaKind::Meet:
    case FormulaKind::OPlus:
    case FormulaKind::OTimes:
      return true;
    default:
      return false;
  }
}

bool Formula::is_one() const {
  return kind() == FormulaKind::Nu && body().kind() == FormulaKind::Var && body().name() == name();
}

bool Formula::is_zero() const {
  return kind() == FormulaKind::Mu && body().kind() == FormulaKind::Var && body().name() == name();
}

namespace {

template <class Visit>
void walk(const Formula& f, Visit&& visit) {
  visit(f);
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Prop:
    case FormulaKind::CoProp:
      return;
    default:
      break;
  }
  if (f.is_binary()) {
    walk(f.left(), visit);
    walk(f.right(), visit);
  } else {
    walk(f.body(), visit);
  }
}

}  // namespace

std::set<std::string> variable_names(const Formula& f) {
  std::set<std::string> names;
  walk(f, [&](const Formula& g) {
    if (g.kind() == FormulaKind::Var || g.is_binder()) names.insert(g.name());
  });
  return names;
}

std::string fresh_variable(const Formula& f, const std::string& prefix) {
  auto used = variable_names(f);
  for (std::size_t k = 1;; ++k) {
    std::string candidate = prefix + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

std::size_t binder_count(const Formula& f) {
  std::size_t n = 0;
  walk(f, [&](const Formula& g) { n += g.is_binder(); });
  return n;
}

bool has_fixed_points(const Formula& f) {
  bool found = false;
  walk(f, [&](const Formula& g) { found = found || (g.is_binder() && !g.is_one() && !g.is_zero()); });
  return found;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 0;
  walk(f, [&](const Formula&) { ++n; });
  return n;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using syntax::TokenKind;
using syntax::TokenStream;

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const FormulaParseOptions& options)
      : in_(syntax::tokenize(text, syntax::Dialect::Lmu)), options_(options) {}

  Formula parse() {
    Formula f = expression();
    in_.expect_end();
    return f;
  }

 private:
  static constexpr std::array<std::pair<std::string_view, FormulaKind>, 4> kLevels = {{
      {"\\/", FormulaKind::Join},
      {"/\\", FormulaKind::Meet},
      {"(+)", FormulaKind::OPlus},
      {"(.)", FormulaKind::OTimes},
  }};

  Formula expression() { return level(0); }

  Formula level(std::size_t k) {
    if (k == kLevels.size()) return prefix();
    Formula lhs = level(k + 1);
    while (in_.accept_symbol(kLevels[k].first)) {
      lhs = Formula::binary(kLevels[k].second, lhs, level(k + 1));
    }
    return lhs;
  }

  Formula prefix() {
    const auto& tok = in_.peek();
    if (tok.kind == TokenKind::Number && in_.peek(1).kind == TokenKind::Symbol && in_.peek(1).text == "*") {
      auto number = in_.take();
      in_.take();
      Rational q = Rational::parse(number.text);
      if (!q.in_unit_interval()) TokenStream::fail_at(number, "scalar " + q.str() + " outside [0,1]");
      return Formula::scalar(q, prefix());
    }
    if (in_.accept_symbol("<>")) return Formula::diamond(prefix());
    if (in_.accept_symbol("[]")) return Formula::box(prefix());
    if (in_.at_symbol("~")) {
      in_.take();
      auto id = in_.expect_identifier();
      if (bound_.count(id.text) || options_.free_variables.count(id.text) || !is_proposition(id.text)) {
        TokenStream::fail_at(id, "complement applies to propositions only, found '" + id.text + "'");
      }
      return Formula::coprop(id.text);
    }
    return primary();
  }

  Formula primary() {
    const auto tok = in_.peek();
    if (tok.kind == TokenKind::Identifier && (tok.text == "mu" || tok.text == "nu")) {
      in_.take();
      auto id = in_.expect_identifier();
      check_name(id);
      in_.expect_symbol(".");
      ++bound_[id.text];
      // `mu X. (...)` binds exactly the parenthesized group; otherwise the
      // body extends as far right as possible.
      Formula body = in_.accept_symbol("(") ? group() : expression();
      if (--bound_[id.text] == 0) bound_.erase(id.text);
      return Formula::binder(tok.text == "mu" ? FormulaKind::Mu : FormulaKind::Nu, id.text, body);
    }
    if (tok.kind == TokenKind::Identifier) {
      in_.take();
      check_name(tok);
      return identifier(tok);
    }
    if (tok.kind == TokenKind::Number) {
      in_.take();
      if (tok.text == "1") return Formula::one();
      if (tok.text == "0") return Formula::zero();
      TokenStream::fail_at(tok, "constant " + tok.text + " must be written " + tok.text + "*1");
    }
    if (in_.accept_symbol("(")) {
      Formula f = expression();
      in_.expect_symbol(")");
      return f;
    }
    in_.fail("unexpected " + syntax::describe(tok));
  }

  Formula group() {
    Formula f = expression();
    in_.expect_symbol(")");
    return f;
  }

  static bool is_proposition(const std::string& name) {
    return std::isupper(static_cast<unsigned char>(name.front())) != 0;
  }

  static void check_name(const syntax::Token& id) {
    if (id.text == "mu" || id.text == "nu") TokenStream::fail_at(id, "'" + id.text + "' is reserved");
  }

  Formula identifier(const syntax::Token& id) {
    if (bound_.count(id.text) || options_.free_variables.count(id.text)) return Formula::var(id.text);
    if (is_proposition(id.text)) return Formula::prop(id.text);
    if (options_.require_closed) TokenStream::fail_at(id, "unbound variable '" + id.text + "'");
    return Formula::var(id.text);
  }

  TokenStream in_;
  const FormulaParseOptions& options_;
  std::map<std::string, int> bound_;
};

}  // namespace

Formula parse_formula(std::string_view text, const FormulaParseOptions& options) {
  return FormulaParser(text, options).parse();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength; higher binds tighter.
int strength(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      return (f.is_one() || f.is_zero()) && f.name() == Formula::constant_variable() ? 6 : 0;
    case FormulaKind::Join:
      return 1;
    case FormulaKind::Meet:
      return 2;
    case FormulaKind::OPlus:
      return 3;
    case FormulaKind::OTimes:
      return 4;
    case FormulaKind::Scalar:
    case FormulaKind::Diamond:
    case FormulaKind::Box:
    case FormulaKind::CoProp:
      return 5;
    default:
      return 6;
  }
}

const char* symbol(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::Join:
      return " \\/ ";
    case FormulaKind::Meet:
      return " /\\ ";
    case FormulaKind::OPlus:
      return " (+) ";
    default:
      return " (.) ";
  }
}

void emit(const Formula& f, int need, std::string& out) {
  const int own = strength(f);
  const bool parens = own < need;
  if (parens) out += '(';
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Prop:
      out += f.name();
      break;
    case FormulaKind::CoProp:
      out += '~';
      out += f.name();
      break;
    case FormulaKind::Scalar:
      out += f.coefficient().str();
      out += '*';
      emit(f.body(), 5, out);
      break;
    case FormulaKind::Diamond:
      out += "<>";
      emit(f.body(), 5, out);
      break;
    case FormulaKind::Box:
      out += "[]";
      emit(f.body(), 5, out);
      break;
    case FormulaKind::Mu:
    case FormulaKind::Nu:
      if (f.is_one() && f.name() == Formula::constant_variable()) {
        out += '1';
      } else if (f.is_zero() && f.name() == Formula::constant_variable()) {
        out += '0';
      } else {
        out += f.kind() == FormulaKind::Mu ? "mu " : "nu ";
        out += f.name();
        out += ". ";
        emit(f.body(), f.body().is_binder() ? 0 : 5, out);
      }
      break;
    default:
      emit(f.left(), own, out);
      out += symbol(f.kind());
      emit(f.right(), own + 1, out);
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  emit(f, 0, out);
  return out;
}

}  // namespace lmu
