#include "fpria/sexpr.hpp"

#include <cctype>

namespace fpria {

std::string SExpr::to_string() const {
  switch (kind) {
    case Kind::List: {
      std::string s = "(";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ' ';
        s += items[i].to_string();
      }
      return s + ")";
    }
    case Kind::Binary: return "#b" + text;
    case Kind::Hex: return "#x" + text;
    case Kind::String: return "\"" + text + "\"";
    default: return text;
  }
}

namespace {

bool is_symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("~!@$%^&*_-+=<>.?/").find(c) != std::string_view::npos;
}

class Reader {
 public:
  Reader(std::string_view text, const std::string& file) : s_(text), file_(file) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < s_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(int line, int col, const std::string& msg) { throw ParseError(file_, line, col, msg); }

  char peek() const { return s_[pos_]; }
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < s_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = peek();
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      skip();
      while (true) {
        if (pos_ >= s_.size()) fail(e.line, e.col, "unbalanced parenthesis");
        if (peek() == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
        skip();
      }
      return e;
    }
    if (c == ')') fail(line_, col_, "unexpected ')'");
    if (c == '"') {
      advance();
      e.kind = SExpr::Kind::String;
      while (true) {
        if (pos_ >= s_.size()) fail(e.line, e.col, "unterminated string literal");
        if (peek() == '"') {
          advance();
          if (pos_ < s_.size() && peek() == '"') {
            e.text += '"';
            advance();
            continue;
          }
          break;
        }
        e.text += peek();
        advance();
      }
      return e;
    }
    if (c == '|') {
      advance();
      e.kind = SExpr::Kind::Symbol;
      while (true) {
        if (pos_ >= s_.size()) fail(e.line, e.col, "unterminated quoted symbol");
        if (peek() == '|') {
          advance();
          break;
        }
        e.text += peek();
        advance();
      }
      return e;
    }
    if (c == '#') {
      advance();
      if (pos_ >= s_.size()) fail(e.line, e.col, "malformed literal");
      char base = peek();
      advance();
      if (base == 'b') {
        e.kind = SExpr::Kind::Binary;
        while (pos_ < s_.size() && (peek() == '0' || peek() == '1')) {
          e.text += peek();
          advance();
        }
      } else if (base == 'x') {
        e.kind = SExpr::Kind::Hex;
        while (pos_ < s_.size() && std::isxdigit(static_cast<unsigned char>(peek()))) {
          e.text += peek();
          advance();
        }
      } else {
        fail(e.line, e.col, "malformed literal");
      }
      if (e.text.empty()) fail(e.line, e.col, "empty bit-vector literal");
      return e;
    }
    std::string tok;
    while (pos_ < s_.size() && (is_symbol_char(peek()) || peek() == ':')) {
      tok += peek();
      advance();
    }
    if (tok.empty()) fail(line_, col_, std::string("unexpected character '") + c + "'");
    e.text = tok;
    bool digits = std::isdigit(static_cast<unsigned char>(tok[0]));
    if (tok[0] == ':') {
      e.kind = SExpr::Kind::Keyword;
    } else if (digits) {
      std::size_t dot = tok.find('.');
      bool ok = true;
      for (std::size_t i = 0; i < tok.size(); ++i) {
        if (i != dot && !std::isdigit(static_cast<unsigned char>(tok[i]))) ok = false;
      }
      if (!ok || (dot != std::string::npos && (dot + 1 == tok.size() || tok.find('.', dot + 1) != std::string::npos))) {
        fail(e.line, e.col, "malformed numeral '" + tok + "'");
      }
      e.kind = dot == std::string::npos ? SExpr::Kind::Numeral : SExpr::Kind::Decimal;
    } else {
      e.kind = SExpr::Kind::Symbol;
    }
    return e;
  }

  std::string_view s_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text, const std::string& file) { return Reader(text, file).read_all(); }

}  // namespace fpria
