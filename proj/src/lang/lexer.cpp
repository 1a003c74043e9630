#include "otsv/lang/lexer.hpp"

#include <cctype>

namespace otsv::lang {

const char* token_type_name(TokType t) {
  switch (t) {
    case TokType::Ident:
      return "identifier";
    case TokType::Nat:
      return "number";
    case TokType::String:
      return "string";
    case TokType::LParen:
      return "'('";
    case TokType::RParen:
      return "')'";
    case TokType::LBracket:
      return "'['";
    case TokType::RBracket:
      return "']'";
    case TokType::Comma:
      return "','";
    case TokType::Colon:
      return "':'";
    case TokType::ColonEq:
      return "':='";
    case TokType::Eq:
      return "'='";
    case TokType::EqEq:
      return "'=='";
    case TokType::End:
      return "end of input";
  }
  return "?";
}

namespace {

struct Cursor {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= src.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  char take() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  SourceSpan here() const { return {line, col, pos, 0}; }
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_tail(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  Cursor cur{src};
  while (!cur.done()) {
    char c = cur.peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.take();
      continue;
    }
    if (c == '-' && cur.peek(1) == '-') {
      while (!cur.done() && cur.peek() != '\n') cur.take();
      continue;
    }
    SourceSpan span = cur.here();
    auto finish = [&](Token t) {
      t.span = span;
      t.span.length = cur.pos - span.offset;
      out.push_back(std::move(t));
    };
    if (ident_start(c)) {
      std::string text;
      text += cur.take();
      while (!cur.done()) {
        char n = cur.peek();
        if (ident_tail(n)) {
          text += cur.take();
        } else if (n == '-' && ident_tail(cur.peek(1))) {
          // interior hyphen (viewed-photo); "--" stays a comment opener
          text += cur.take();
          text += cur.take();
        } else {
          break;
        }
      }
      finish({TokType::Ident, std::move(text), 0, {}});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t n = 0;
      std::string digits;
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
        digits += cur.take();
      if (digits.size() > 19) throw ParseError("number literal too large", span);
      n = std::stoull(digits);
      finish({TokType::Nat, digits, n, {}});
      continue;
    }
    if (c == '"') {
      cur.take();
      std::string body;
      while (true) {
        if (cur.done()) throw ParseError("unterminated string literal", span);
        char d = cur.take();
        if (d == '"') break;
        if (d == '\n') throw ParseError("newline inside string literal", span);
        if (d == '\\') {
          if (cur.done()) throw ParseError("unterminated escape in string", span);
          char e = cur.take();
          switch (e) {
            case '"':
              body += '"';
              break;
            case '\\':
              body += '\\';
              break;
            case 'n':
              body += '\n';
              break;
            case 't':
              body += '\t';
              break;
            default:
              throw ParseError(std::string("unknown escape '\\") + e + "'", span);
          }
        } else {
          body += d;
        }
      }
      finish({TokType::String, std::move(body), 0, {}});
      continue;
    }
    switch (c) {
      case '(':
        cur.take();
        finish({TokType::LParen, "(", 0, {}});
        continue;
      case ')':
        cur.take();
        finish({TokType::RParen, ")", 0, {}});
        continue;
      case '[':
        cur.take();
        finish({TokType::LBracket, "[", 0, {}});
        continue;
      case ']':
        cur.take();
        finish({TokType::RBracket, "]", 0, {}});
        continue;
      case ',':
        cur.take();
        finish({TokType::Comma, ",", 0, {}});
        continue;
      case ':':
        cur.take();
        if (cur.peek() == '=') {
          cur.take();
          finish({TokType::ColonEq, ":=", 0, {}});
        } else {
          finish({TokType::Colon, ":", 0, {}});
        }
        continue;
      case '=':
        cur.take();
        if (cur.peek() == '=') {
          cur.take();
          finish({TokType::EqEq, "==", 0, {}});
        } else {
          finish({TokType::Eq, "=", 0, {}});
        }
        continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", span);
    }
  }
  Token end;
  end.span = cur.here();
  out.push_back(std::move(end));
  return out;
}

}  // namespace otsv::lang
