#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpria/ast.hpp"
#include "fpria/fp_value.hpp"

namespace fpria {

using Assignment = std::map<std::string, FpValue>;

/** Modes for Unspecified sites (pre-order occurrence index) and named mode variables. */
struct ModeAssignment {
  std::vector<RoundingMode> sites;
  std::map<std::string, RoundingMode> vars;
};

// Concrete SMT-LIB semantics. Throws std::invalid_argument for a missing
// variable, mode variable or site.
FpValue fp_eval_term(const Term& t, const Assignment& env, const ModeAssignment& modes);
bool fp_eval_formula(const Formula& phi, const Assignment& env, const ModeAssignment& modes);

enum class OracleVerdict { Sat, Unsat };

struct BruteForceResult {
  OracleVerdict verdict = OracleVerdict::Unsat;
  Assignment witness;                         // set when Sat
  std::map<std::string, RoundingMode> mode_witness;
  unsigned long long assignments_checked = 0;
};

// Exhaustive decision over all variable values (NaN included), all named
// mode-variable choices and all modes at Unspecified sites. Throws
// std::length_error when |F*|^vars * 5^modevars exceeds 1e8, and
// std::invalid_argument when a term is not over fmt.
BruteForceResult brute_force_solve(const Formula& phi, const FpFormat& fmt);
OracleVerdict brute_force_check(const Formula& phi, const FpFormat& fmt);

std::string verdict_name(OracleVerdict v);

}  // namespace fpria
