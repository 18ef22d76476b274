#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fpria/ast.hpp"
#include "fpria/sexpr.hpp"

namespace fpria::smt {

// Parses the supported QF_FP subset; throws ParseError ("file:line:col: msg").
Script parse_script(std::string_view text, const std::string& file = "<input>");
Script parse_file(const std::string& path);

/** Formats occurring in a script, sorted; index i+1 is the precision id. */
struct FormatTable {
  std::vector<FpFormat> formats;

  bool multi() const { return formats.size() > 1; }
  const FpFormat& ambient() const { return formats.front(); }
  // 1-based precision index; throws std::out_of_range when absent.
  int index_of(const FpFormat& fmt) const;
};

// Throws SortError when several formats occur and allow_multi is false,
// or when no floating-point sort occurs at all.
FormatTable check_sorts(const Script& script, bool allow_multi = false);
FormatTable check_sorts(const Formula& f, bool allow_multi = false);

FormulaPtr to_nnf(const FormulaPtr& f);
bool is_nnf(const Formula& f);

std::string sort_name(const FpFormat& fmt);
std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
// Unspecified rounding sites are printed as fresh RoundingMode constants.
std::string print_script(const Script& s);

}  // namespace fpria::smt
