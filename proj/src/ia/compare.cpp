#include "fpria/compare.hpp"

namespace fpria {

namespace {

bool holds(Rel rel, const XRat& v) { return rel == Rel::Gt ? v.sign() > 0 : v.sign() >= 0; }

// f R g for R in {Ge, Gt} with the given polarity and mode.
bool order(Rel rel, Polarity pol, Mode mode, const RInterval& f, const RInterval& g) {
  RInterval d = iv_sub_exact(f, g);
  if (pol == Polarity::Positive) {
    if (mode == Mode::Weak) return holds(rel, d.hi());
    return !d.has_nan() && holds(rel, d.lo());
  }
  if (mode == Mode::Weak) return d.has_nan() || !holds(rel, d.lo());
  return !holds(rel, d.hi());
}

bool fp_eq(Mode mode, const RInterval& f, const RInterval& g) {
  if (mode == Mode::Weak) {
    return order(Rel::Ge, Polarity::Positive, mode, f, g) && order(Rel::Ge, Polarity::Positive, mode, g, f);
  }
  return !f.has_nan() && !g.has_nan() && f.is_point() && g.is_point() && f.lo() == g.lo();
}

bool fp_neq(Mode mode, const RInterval& f, const RInterval& g) {
  return order(Rel::Ge, Polarity::Negative, mode, f, g) || order(Rel::Ge, Polarity::Negative, mode, g, f);
}

}  // namespace

bool eval_cmp(const CmpSpec& spec, const RInterval& f, const RInterval& g, const CmpOptions& opts) {
  const bool pos = spec.polarity == Polarity::Positive;
  switch (spec.rel) {
    case Rel::Ge:
    case Rel::Gt:
      return order(spec.rel, spec.polarity, spec.mode, f, g);
    case Rel::FpEq:
      return pos ? fp_eq(spec.mode, f, g) : fp_neq(spec.mode, f, g);
    case Rel::SeqEq:
      if (spec.mode == Mode::Weak) {
        if (pos) return (f.has_nan() && g.has_nan()) || fp_eq(Mode::Weak, f, g);
        return fp_neq(Mode::Weak, f, g) ||
               (opts.zero_sign_guard && f.contains_zero() && g.contains_zero());
      }
      if (pos) {
        return fp_eq(Mode::Strong, f, g) && (!opts.zero_sign_guard || opts.same_term || !f.lo().is_zero());
      }
      return (!f.has_nan() || !g.has_nan()) && fp_neq(Mode::Strong, f, g);
  }
  return false;
}

}  // namespace fpria
