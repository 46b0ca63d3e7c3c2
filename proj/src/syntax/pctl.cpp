#include "lmu/pctl.hpp"

#include <array>
#include <cctype>

#include "lexer.hpp"
#include "lmu/error.hpp"

namespace lmu {

PctlPath PctlPath::next(PctlState phi) {
  return PctlPath{PathKind::Next, nullptr, std::make_shared<const PctlState>(std::move(phi))};
}

PctlPath PctlPath::until(PctlState lhs, PctlState rhs) {
  return PctlPath{PathKind::Until, std::make_shared<const PctlState>(std::move(lhs)),
                  std::make_shared<const PctlState>(std::move(rhs))};
}

PctlState PctlState::truth() {
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::True;
  return PctlState(std::move(n));
}

PctlState PctlState::falsity() { return negation(truth()); }

PctlState PctlState::prop(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::Prop;
  n->name = std::move(name);
  return PctlState(std::move(n));
}

PctlState PctlState::negation(PctlState phi) {
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::Not;
  n->lhs = std::make_shared<const PctlState>(std::move(phi));
  return PctlState(std::move(n));
}

PctlState PctlState::disjunction(PctlState a, PctlState b) {
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::Or;
  n->lhs = std::make_shared<const PctlState>(std::move(a));
  n->rhs = std::make_shared<const PctlState>(std::move(b));
  return PctlState(std::move(n));
}

PctlState PctlState::conjunction(PctlState a, PctlState b) {
  return negation(disjunction(negation(std::move(a)), negation(std::move(b))));
}

PctlState PctlState::exists(PctlPath path) {
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::Exists;
  n->path = std::move(path);
  return PctlState(std::move(n));
}

PctlState PctlState::forall(PctlPath path) {
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::Forall;
  n->path = std::move(path);
  return PctlState(std::move(n));
}

PctlState PctlState::pexists(Bound bound, Rational q, PctlPath path) {
  if (!q.in_unit_interval()) throw Error("threshold " + q.str() + " outside [0,1]");
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::PExists;
  n->bound = bound;
  n->threshold = std::move(q);
  n->path = std::move(path);
  return PctlState(std::move(n));
}

PctlState PctlState::pforall(Bound bound, Rational q, PctlPath path) {
  if (!q.in_unit_interval()) throw Error("threshold " + q.str() + " outside [0,1]");
  auto n = std::make_shared<Node>();
  n->kind = PctlKind::PForall;
  n->bound = bound;
  n->threshold = std::move(q);
  n->path = std::move(path);
  return PctlState(std::move(n));
}

bool operator==(const PctlPath& a, const PctlPath& b) {
  if (a.kind != b.kind || *a.right != *b.right) return false;
  return a.kind == PathKind::Next || *a.left == *b.left;
}

bool operator==(const PctlState& a, const PctlState& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case PctlKind::True:
      return true;
    case PctlKind::Prop:
      return a.name() == b.name();
    case PctlKind::Not:
      return a.operand() == b.operand();
    case PctlKind::Or:
      return a.left() == b.left() && a.right() == b.right();
    case PctlKind::Exists:
    case PctlKind::Forall:
      return a.path() == b.path();
    case PctlKind::PExists:
    case PctlKind::PForall:
      return a.bound() == b.bound() && a.threshold() == b.threshold() && a.path() == b.path();
  }
  return false;
}

std::size_t pctl_depth(const PctlState& phi) {
  switch (phi.kind()) {
    case PctlKind::True:
    case PctlKind::Prop:
      return 0;
    case PctlKind::Not:
      return pctl_depth(phi.operand());
    case PctlKind::Or:
      return std::max(pctl_depth(phi.left()), pctl_depth(phi.right()));
    default: {
      const auto& path = phi.path();
      std::size_t inner = pctl_depth(*path.right);
      if (path.kind == PathKind::Until) inner = std::max(inner, pctl_depth(*path.left));
      return inner + 1;
    }
  }
}

namespace {

using syntax::TokenKind;
using syntax::TokenStream;

constexpr std::array<std::string_view, 8> kReserved = {"E", "A", "X", "U", "Pmax", "Pmin", "true", "false"};

bool reserved(const std::string& word) {
  for (auto r : kReserved) {
    if (word == r) return true;
  }
  return false;
}

class PctlParser {
 public:
  explicit PctlParser(std::string_view text) : in_(syntax::tokenize(text, syntax::Dialect::Pctl)) {}

  PctlState parse() {
    PctlState phi = disjunction();
    in_.expect_end();
    return phi;
  }

 private:
  PctlState disjunction() {
    PctlState lhs = conjunction();
    while (in_.accept_symbol("|")) lhs = PctlState::disjunction(lhs, conjunction());
    return lhs;
  }

  PctlState conjunction() {
    PctlState lhs = unary();
    while (in_.accept_symbol("&")) lhs = PctlState::conjunction(lhs, unary());
    return lhs;
  }

  PctlState unary() {
    if (in_.accept_symbol("!")) return PctlState::negation(unary());
    if (in_.at_identifier("E") || in_.at_identifier("A")) {
      bool exists = in_.take().text == "E";
      if (in_.at_identifier("X")) {
        in_.take();
        auto path = PctlPath::next(unary());
        return exists ? PctlState::exists(path) : PctlState::forall(path);
      }
      in_.expect_symbol("[");
      PctlState lhs = disjunction();
      expect_word("U");
      PctlState rhs = disjunction();
      in_.expect_symbol("]");
      auto path = PctlPath::until(lhs, rhs);
      return exists ? PctlState::exists(path) : PctlState::forall(path);
    }
    if (in_.at_identifier("Pmax") || in_.at_identifier("Pmin")) {
      bool max = in_.take().text == "Pmax";
      Bound bound;
      if (in_.accept_symbol(">=")) {
        bound = Bound::GreaterEqual;
      } else if (in_.accept_symbol(">")) {
        bound = Bound::Greater;
      } else {
        in_.fail("expected '>' or '>=', found " + syntax::describe(in_.peek()));
      }
      if (in_.peek().kind != TokenKind::Number) in_.fail("expected threshold, found " + syntax::describe(in_.peek()));
      auto number = in_.take();
      Rational q = Rational::parse(number.text);
      if (!q.in_unit_interval()) TokenStream::fail_at(number, "threshold " + q.str() + " outside [0,1]");
      in_.expect_symbol("[");
      PctlPath path = [&] {
        if (in_.at_identifier("X")) {
          in_.take();
          return PctlPath::next(disjunction());
        }
        PctlState lhs = disjunction();
        expect_word("U");
        return PctlPath::until(lhs, disjunction());
      }();
      in_.expect_symbol("]");
      return max ? PctlState::pexists(bound, q, path) : PctlState::pforall(bound, q, path);
    }
    return primary();
  }

  PctlState primary() {
    const auto tok = in_.peek();
    if (tok.kind == TokenKind::Identifier) {
      in_.take();
      if (tok.text == "true") return PctlState::truth();
      if (tok.text == "false") return PctlState::falsity();
      if (reserved(tok.text)) TokenStream::fail_at(tok, "unexpected keyword '" + tok.text + "'");
      if (!std::isupper(static_cast<unsigned char>(tok.text.front()))) {
        TokenStream::fail_at(tok, "proposition '" + tok.text + "' must start with an uppercase letter");
      }
      return PctlState::prop(tok.text);
    }
    if (in_.accept_symbol("(")) {
      PctlState phi = disjunction();
      in_.expect_symbol(")");
      return phi;
    }
    in_.fail("unexpected " + syntax::describe(tok));
  }

  void expect_word(std::string_view word) {
    if (!in_.at_identifier(word)) in_.fail("expected '" + std::string(word) + "', found " + syntax::describe(in_.peek()));
    in_.take();
  }

  TokenStream in_;
};

int strength(const PctlState& phi) {
  switch (phi.kind()) {
    case PctlKind::Or:
      return 1;
    case PctlKind::Not:
      return 3;
    case PctlKind::Exists:
    case PctlKind::Forall:
      return phi.path().kind == PathKind::Next ? 3 : 4;
    default:
      return 4;
  }
}

void emit(const PctlState& phi, int need, std::string& out);

void emit_path(const PctlPath& path, std::string& out) {
  if (path.kind == PathKind::Next) {
    out += "X ";
    emit(*path.right, 0, out);
  } else {
    emit(*path.left, 0, out);
    out += " U ";
    emit(*path.right, 0, out);
  }
}

void emit(const PctlState& phi, int need, std::string& out) {
  const int own = strength(phi);
  const bool parens = own < need;
  if (parens) out += '(';
  switch (phi.kind()) {
    case PctlKind::True:
      out += "true";
      break;
    case PctlKind::Prop:
      out += phi.name();
      break;
    case PctlKind::Not:
      out += '!';
      emit(phi.operand(), 3, out);
      break;
    case PctlKind::Or:
      emit(phi.left(), 1, out);
      out += " | ";
      emit(phi.right(), 2, out);
      break;
    case PctlKind::Exists:
    case PctlKind::Forall:
      out += phi.kind() == PctlKind::Exists ? "E" : "A";
      if (phi.path().kind == PathKind::Next) {
        out += " X ";
        emit(*phi.path().right, 3, out);
      } else {
        out += '[';
        emit_path(phi.path(), out);
        out += ']';
      }
      break;
    case PctlKind::PExists:
    case PctlKind::PForall:
      out += phi.kind() == PctlKind::PExists ? "Pmax" : "Pmin";
      out += phi.bound() == Bound::Greater ? ">" : ">=";
      out += phi.threshold().str();
      out += " [";
      emit_path(phi.path(), out);
      out += ']';
      break;
  }
  if (parens) out += ')';
}

}  // namespace

PctlState parse_pctl(std::string_view text) { return PctlParser(text).parse(); }

std::string render(const PctlState& phi) {
  std::string out;
  emit(phi, 0, out);
  return out;
}

std::string render(const PctlPath& path) {
  std::string out;
  emit_path(path, out);
  return out;
}

}  // namespace lmu
