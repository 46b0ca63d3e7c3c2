#include "lmu/term.hpp"

#include <array>
#include <functional>
#include <map>

#include "lexer.hpp"
#include "lmu/error.hpp"

namespace lmu {

namespace {
const std::string kConstantVariable = "_c";
}

MuTerm MuTerm::make(TermKind kind, std::string name, Rational q, std::shared_ptr<const Node> lhs,
                    std::shared_ptr<const Node> rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->coefficient = std::move(q);
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  if (kind == TermKind::Var) {
    node->free = {node->name};
  } else if (kind == TermKind::Mu || kind == TermKind::Nu) {
    node->free = detail::without_name(node->lhs->free, node->name);
  } else if (node->rhs) {
    node->free = detail::merge_names(node->lhs->free, node->rhs->free);
  } else {
    node->free = node->lhs->free;
  }
  std::size_t h = detail::mix_hash(static_cast<std::size_t>(kind) + 101, std::hash<std::string>{}(node->name));
  h = detail::mix_hash(h, node->coefficient.hash());
  if (node->lhs) h = detail::mix_hash(h, node->lhs->hash);
  if (node->rhs) h = detail::mix_hash(h, node->rhs->hash);
  node->hash = h;
  return MuTerm(std::move(node));
}

MuTerm MuTerm::var(std::string name) { return make(TermKind::Var, std::move(name), {}, nullptr, nullptr); }

MuTerm MuTerm::scalar(Rational q, MuTerm t) {
  if (!q.in_unit_interval()) throw Error("scalar " + q.str() + " outside [0,1]");
  return make(TermKind::Scalar, {}, std::move(q), t.node_, nullptr);
}

MuTerm MuTerm::binary(TermKind kind, MuTerm a, MuTerm b) { return make(kind, {}, {}, a.node_, b.node_); }
MuTerm MuTerm::join(MuTerm a, MuTerm b) { return binary(TermKind::Join, std::move(a), std::move(b)); }
MuTerm MuTerm::meet(MuTerm a, MuTerm b) { return binary(TermKind::Meet, std::move(a), std::move(b)); }
MuTerm MuTerm::oplus(MuTerm a, MuTerm b) { return binary(TermKind::OPlus, std::move(a), std::move(b)); }
MuTerm MuTerm::otimes(MuTerm a, MuTerm b) { return binary(TermKind::OTimes, std::move(a), std::move(b)); }

MuTerm MuTerm::binder(TermKind kind, std::string variable, MuTerm body) {
  return make(kind, std::move(variable), {}, body.node_, nullptr);
}
MuTerm MuTerm::mu(std::string variable, MuTerm body) { return binder(TermKind::Mu, std::move(variable), std::move(body)); }
MuTerm MuTerm::nu(std::string variable, MuTerm body) { return binder(TermKind::Nu, std::move(variable), std::move(body)); }

MuTerm MuTerm::one() {
  static const MuTerm t = nu(kConstantVariable, var(kConstantVariable));
  return t;
}

MuTerm MuTerm::constant(Rational q) { return scalar(std::move(q), one()); }

bool MuTerm::is_binary() const {
  switch (kind()) {
    case TermKind::Join:
    case TermKind::Meet:
    case TermKind::OPlus:
    case TermKind::OTimes:
      return true;
    default:
      return false;
  }
}

bool MuTerm::is_one() const {
  return kind() == TermKind::Nu && body().kind() == TermKind::Var && body().name() == name();
}

bool MuTerm::is_constant(Rational* value) const {
  if (kind() != TermKind::Scalar || !body().is_one()) return false;
  if (value) *value = coefficient();
  return true;
}

std::size_t fixed_point_depth(const MuTerm& t) {
  if (t.kind() == TermKind::Var) return 0;
  if (t.is_binary()) return std::max(fixed_point_depth(t.left()), fixed_point_depth(t.right()));
  return fixed_point_depth(t.body()) + (t.is_binder() ? 1 : 0);
}

namespace {

using syntax::TokenKind;
using syntax::TokenStream;

class TermParser {
 public:
  TermParser(std::string_view text, bool require_closed)
      : in_(syntax::tokenize(text, syntax::Dialect::Term)), require_closed_(require_closed) {}

  MuTerm parse() {
    MuTerm t = level(0);
    in_.expect_end();
    return t;
  }

 private:
  static constexpr std::array<std::pair<std::string_view, TermKind>, 4> kLevels = {{
      {"\\/", TermKind::Join},
      {"/\\", TermKind::Meet},
      {"(+)", TermKind::OPlus},
      {"(.)", TermKind::OTimes},
  }};

  MuTerm level(std::size_t k) {
    if (k == kLevels.size()) return prefix();
    MuTerm lhs = level(k + 1);
    while (in_.accept_symbol(kLevels[k].first)) lhs = MuTerm::binary(kLevels[k].second, lhs, level(k + 1));
    return lhs;
  }

  MuTerm prefix() {
    if (in_.peek().kind == TokenKind::Number && in_.peek(1).kind == TokenKind::Symbol && in_.peek(1).text == "*") {
      auto number = in_.take();
      in_.take();
      Rational q = Rational::parse(number.text);
      if (!q.in_unit_interval()) TokenStream::fail_at(number, "scalar " + q.str() + " outside [0,1]");
      return MuTerm::scalar(q, prefix());
    }
    return primary();
  }

  MuTerm primary() {
    const auto tok = in_.peek();
    if (tok.kind == TokenKind::Identifier && (tok.text == "mu" || tok.text == "nu")) {
      in_.take();
      auto id = in_.expect_identifier();
      if (id.text == "mu" || id.text == "nu") TokenStream::fail_at(id, "'" + id.text + "' is reserved");
      in_.expect_symbol(".");
      ++bound_[id.text];
      MuTerm body = in_.accept_symbol("(") ? group() : level(0);
      if (--bound_[id.text] == 0) bound_.erase(id.text);
      return MuTerm::binder(tok.text == "mu" ? TermKind::Mu : TermKind::Nu, id.text, body);
    }
    if (tok.kind == TokenKind::Identifier) {
      in_.take();
      if (require_closed_ && !bound_.count(tok.text)) {
        TokenStream::fail_at(tok, "unbound variable '" + tok.text + "'");
      }
      return MuTerm::var(tok.text);
    }
    if (tok.kind == TokenKind::Number) {
      in_.take();
      if (tok.text == "1") return MuTerm::one();
      if (tok.text == "0") return MuTerm::mu(kConstantVariable, MuTerm::var(kConstantVariable));
      TokenStream::fail_at(tok, "constant " + tok.text + " must be written " + tok.text + "*1");
    }
    if (in_.accept_symbol("(")) {
      MuTerm t = level(0);
      in_.expect_symbol(")");
      return t;
    }
    in_.fail("unexpected " + syntax::describe(tok));
  }

  MuTerm group() {
    MuTerm t = level(0);
    in_.expect_symbol(")");
    return t;
  }

  TokenStream in_;
  bool require_closed_;
  std::map<std::string, int> bound_;
};

bool is_literal(const MuTerm& t) {
  return t.is_binder() && t.name() == kConstantVariable && t.body().kind() == TermKind::Var &&
         t.body().name() == kConstantVariable;
}

int strength(const MuTerm& t) {
  switch (t.kind()) {
    case TermKind::Mu:
    case TermKind::Nu:
      return is_literal(t) ? 6 : 0;
    case TermKind::Join:
      return 1;
    case TermKind::Meet:
      return 2;
    case TermKind::OPlus:
      return 3;
    case TermKind::OTimes:
      return 4;
    case TermKind::Scalar:
      return 5;
    default:
      return 6;
  }
}

void emit(const MuTerm& t, int need, std::string& out) {
  const int own = strength(t);
  const bool parens = own < need;
  if (parens) out += '(';
  switch (t.kind()) {
    case TermKind::Var:
      out += t.name();
      break;
    case TermKind::Scalar:
      out += t.coefficient().str();
      out += '*';
      emit(t.body(), 5, out);
      break;
    case TermKind::Mu:
    case TermKind::Nu:
      if (is_literal(t)) {
        out += t.kind() == TermKind::Nu ? '1' : '0';
      } else {
        out += t.kind() == TermKind::Mu ? "mu " : "nu ";
        out += t.name();
        out += ". ";
        emit(t.body(), t.body().is_binder() ? 0 : 5, out);
      }
      break;
    default:
      emit(t.left(), own, out);
      switch (t.kind()) {
        case TermKind::Join:
          out += " \\/ ";
          break;
        case TermKind::Meet:
          out += " /\\ ";
          break;
        case TermKind::OPlus:
          out += " (+) ";
          break;
        default:
          out += " (.) ";
      }
      emit(t.right(), own + 1, out);
  }
  if (parens) out += ')';
}

}  // namespace

MuTerm parse_term(std::string_view text, bool require_closed) { return TermParser(text, require_closed).parse(); }

std::string render(const MuTerm& t) {
  std::string out;
  emit(t, 0, out);
  return out;
}

}  // namespace lmu
