#pragma once

#include <cstdint>
#include <string>

#include "fpria/compare.hpp"
#include "fpria/format.hpp"

namespace fpria::checks {

/** Outcome of an exhaustive or sampled property sweep. */
struct Report {
  std::string name;
  unsigned long long cases = 0;
  unsigned long long violations = 0;
  std::string first_violation;
  double seconds = 0;

  bool ok() const { return violations == 0; }
};

// fp_round under every mode lies in [round_down(x), round_up(x)], for every
// FP value and `samples` random rationals in [-range, range].
Report rounding_enclosure(const FpFormat& fmt, int samples, std::uint64_t seed, long range = 300);

// For all value pairs, binary ops and modes: v(op(m, a, b)) is in op_I([a], [b]);
// unary ops are checked per value.
Report operation_enclosure(const FpFormat& fmt);

// Comparison predicates over point and adjacent-value intervals (with and
// without NaN): weak literals hold whenever some member pair satisfies the
// FP relation (or its negation), strong literals only when every member pair
// does; strong implies weak; weak positive or weak negative always holds.
Report comparison_table(const FpFormat& fmt, const CmpOptions& opts = {});

}  // namespace fpria::checks
