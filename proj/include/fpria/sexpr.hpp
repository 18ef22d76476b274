#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fpria {

/** Error carrying a "file:line:col: message" text. */
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, int line, int col, const std::string& msg)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

struct SExpr {
  enum class Kind : std::uint8_t { Symbol, Keyword, Numeral, Decimal, Binary, Hex, String, List };
  Kind kind = Kind::List;
  std::string text;  // atom spelling without |quotes| or the #b/#x prefix
  std::vector<SExpr> items;
  int line = 0, col = 0;

  bool is_list() const { return kind == Kind::List; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_atom() const { return kind != Kind::List; }
  std::string to_string() const;
};

std::vector<SExpr> read_sexprs(std::string_view text, const std::string& file);

}  // namespace fpria
