#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lmu/error.hpp"

namespace lmu::syntax {

enum class TokenKind { Identifier, Number, Symbol, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

enum class Dialect { Lmu, Term, Pctl };

/// Splits formula text into tokens. `[]` is a single symbol only in the Łμ
/// dialect; PCTL uses brackets for path formulas.
std::vector<Token> tokenize(std::string_view text, Dialect dialect);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token take();
  bool at_symbol(std::string_view symbol) const;
  bool at_identifier(std::string_view word) const;
  bool accept_symbol(std::string_view symbol);
  Token expect_symbol(std::string_view symbol);
  Token expect_identifier();
  bool at_end() const { return peek().kind == TokenKind::End; }
  void expect_end();

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] static void fail_at(const Token& token, const std::string& message);

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& token);

}  // namespace lmu::syntax
