#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "otsv/errors.hpp"
#include "otsv/lang/ast.hpp"

namespace otsv::lang {

class ParseError : public Error {
 public:
  ParseError(std::string msg, SourceSpan span)
      : Error(std::move(msg) + " (line " + std::to_string(span.line) + ", column " +
              std::to_string(span.column) + ")"),
        span_(span) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

enum class TokType : std::uint8_t {
  Ident,
  Nat,
  String,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  ColonEq,  // :=
  Eq,       // =
  EqEq,     // ==
  End
};

struct Token {
  TokType type = TokType::End;
  std::string text;        // identifier or decoded string body
  std::uint64_t nat = 0;   // Nat
  SourceSpan span;
};

// Whole-input tokenizer. Identifiers are [A-Za-z_] followed by alphanumerics,
// '_' or interior '-'; "--" outside an identifier starts a line comment.
// Strings use double quotes with \" \\ \n \t escapes. CRLF accepted.
std::vector<Token> lex(std::string_view src);

const char* token_type_name(TokType t);

}  // namespace otsv::lang
