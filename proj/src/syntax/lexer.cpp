#include "lexer.hpp"

#include <array>
#include <cctype>

namespace lmu::syntax {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, Dialect dialect) {
  static constexpr std::array<std::string_view, 7> kLong = {"(+)", "(.)", "\\/", "/\\", "<>", ">=", "[]"};
  std::vector<Token> out;
  std::size_t line = 1, column = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{TokenKind::Symbol, "", line, column};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < text.size() && digit(text[j])) ++j;
      if (j + 1 < text.size() && (text[j] == '/' || text[j] == '.') && digit(text[j + 1])) {
        ++j;
        while (j < text.size() && digit(text[j])) ++j;
      }
      tok.kind = TokenKind::Number;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (auto symbol : kLong) {
      if (symbol == "[]" && dialect != Dialect::Lmu) continue;
      if (text.substr(i, symbol.size()) == symbol) {
        tok.text = std::string(symbol);
        advance(symbol.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      static constexpr std::string_view kShort = "().*~!|&[]>";
      if (kShort.find(c) == std::string_view::npos) {
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
      }
      tok.text = std::string(1, c);
      advance(1);
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{TokenKind::End, "", line, column});
  return out;
}

std::string describe(const Token& token) {
  if (token.kind == TokenKind::End) return "end of input";
  return "'" + token.text + "'";
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

Token TokenStream::take() {
  Token t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::at_symbol(std::string_view symbol) const {
  return peek().kind == TokenKind::Symbol && peek().text == symbol;
}

bool TokenStream::at_identifier(std::string_view word) const {
  return peek().kind == TokenKind::Identifier && peek().text == word;
}

bool TokenStream::accept_symbol(std::string_view symbol) {
  if (!at_symbol(symbol)) return false;
  take();
  return true;
}

Token TokenStream::expect_symbol(std::string_view symbol) {
  if (!at_symbol(symbol)) fail("expected '" + std::string(symbol) + "', found " + describe(peek()));
  return take();
}

Token TokenStream::expect_identifier() {
  if (peek().kind != TokenKind::Identifier) fail("expected identifier, found " + describe(peek()));
  return take();
}

void TokenStream::expect_end() {
  if (!at_end()) fail("unexpected " + describe(peek()));
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& token, const std::string& message) {
  throw ParseError(message, token.line, token.column);
}

}  // namespace lmu::syntax
