#pragma once

#include "fpria/interval.hpp"
#include "fpria/ops.hpp"

namespace fpria {

/**
 * Interval comparison literal. Negative polarity of Ge/Gt stands for the
 * negated relation (f < g, f <= g).
 */
struct CmpSpec {
  Rel rel;
  Polarity polarity;
  Mode mode;
};

struct CmpOptions {
  // Both operands are the syntactically identical term.
  bool same_term = false;
  // Keep +0/-0 sound for ===: strong === needs a nonzero shared point
  // (unless same_term), weak !== also holds when both contain 0.
  bool zero_sign_guard = true;
};

bool eval_cmp(const CmpSpec& spec, const RInterval& f, const RInterval& g, const CmpOptions& opts = {});

}  // namespace fpria
