#pragma once

#include <string>

#include "fpria/format.hpp"
#include "fpria/ops.hpp"
#include "fpria/xrat.hpp"

namespace fpria {

/**
 * Closed interval over the extended reals, optionally joined with NaN.
 * The real part is never empty; a NaN-only set is represented by nan_surrogate().
 */
class RInterval {
 public:
  // Throws std::invalid_argument when lo > hi.
  RInterval(XRat lo, XRat hi, bool has_nan = false);

  static RInterval point(XRat v) { return RInterval(v, v); }
  static RInterval entire() { return RInterval(XRat::neg_inf(), XRat::pos_inf()); }
  // [-oo, +oo] u {NaN}
  static RInterval nan_surrogate() { return RInterval(XRat::neg_inf(), XRat::pos_inf(), true); }
  // Enclosure [round_down(c), round_up(c)] of a rounded constant.
  static RInterval of_real(const mpq_class& c, const FpFormat& fmt);
  // The interval standing for an FP value with valuation v (NaN -> surrogate).
  static RInterval of_value(const XVal& v);

  const XRat& lo() const { return lo_; }
  const XRat& hi() const { return hi_; }
  bool has_nan() const { return has_nan_; }

  bool is_point() const { return lo_ == hi_; }
  bool is_zero() const { return lo_.is_zero() && hi_.is_zero(); }
  bool contains(const XRat& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const XVal& v) const { return v.is_nan() ? has_nan_ : contains(v.rat()); }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool reaches_inf() const { return lo_.is_neg_inf() || hi_.is_pos_inf(); }
  bool has_finite_member() const { return !lo_.is_pos_inf() && !hi_.is_neg_inf(); }
  bool subset_of(const RInterval& o) const;

  // "[lo,hi]" with a "u NaN" suffix when the flag is set.
  std::string to_string() const;

  friend bool operator==(const RInterval& a, const RInterval& b) = default;

 private:
  XRat lo_;
  XRat hi_;
  bool has_nan_;
};

RInterval iv_add(const RInterval& x, const RInterval& y, const FpFormat& fmt);
RInterval iv_sub(const RInterval& x, const RInterval& y, const FpFormat& fmt);
RInterval iv_mul(const RInterval& x, const RInterval& y, const FpFormat& fmt);
RInterval iv_div(const RInterval& x, const RInterval& y, const FpFormat& fmt);
RInterval iv_neg(const RInterval& x);
RInterval iv_abs(const RInterval& x);
// Dispatch on op; unary ops ignore y and fmt.
RInterval iv_apply(FpaOp op, const RInterval& x, const RInterval& y, const FpFormat& fmt);

// Unrounded difference used by comparisons. Same-signed infinite
// differences count as 0; NaN only propagates from the operands.
RInterval iv_sub_exact(const RInterval& f, const RInterval& g);

// Sufficient test for the interval holding at least one FP value of fmt.
bool contains_fp(const RInterval& x, const FpFormat& fmt);

}  // namespace fpria
