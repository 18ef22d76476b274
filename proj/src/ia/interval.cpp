#include "fpria/interval.hpp"

#include <array>
#include <optional>
#include <stdexcept>

namespace fpria {

RInterval::RInterval(XRat lo, XRat hi, bool has_nan) : lo_(std::move(lo)), hi_(std::move(hi)), has_nan_(has_nan) {
  if (hi_ < lo_) throw std::invalid_argument("empty interval [" + lo_.to_string() + "," + hi_.to_string() + "]");
}

RInterval RInterval::of_real(const mpq_class& c, const FpFormat& fmt) {
  XRat x(c);
  return RInterval(round_down(x, fmt), round_up(x, fmt));
}

RInterval RInterval::of_value(const XVal& v) { return v.is_nan() ? nan_surrogate() : point(v.rat()); }

bool RInterval::subset_of(const RInterval& o) const {
  return o.lo_ <= lo_ && hi_ <= o.hi_ && (!has_nan_ || o.has_nan_);
}

std::string RInterval::to_string() const {
  std::string s = "[" + lo_.to_string() + "," + hi_.to_string() + "]";
  if (has_nan_) s += " u NaN";
  return s;
}

namespace {

using Corner = std::optional<XRat>;

// Hull of the defined corner results, rounded outward where finite.
// With no defined corner the value set is NaN-only.
RInterval rounded_hull(const std::array<Corner, 4>& corners, bool nan, const FpFormat& fmt) {
  std::optional<XRat> lo, hi;
  for (const Corner& c : corners) {
    if (!c) continue;
    if (!lo || *c < *lo) lo = *c;
    if (!hi || *hi < *c) hi = *c;
  }
  if (!lo) return RInterval::nan_surrogate();
  return RInterval(round_down(*lo, fmt), round_up(*hi, fmt), nan);
}

template <typename F>
std::array<Corner, 4> corners(const RInterval& x, const RInterval& y, F f) {
  return {f(x.lo(), y.lo()), f(x.lo(), y.hi()), f(x.hi(), y.lo()), f(x.hi(), y.hi())};
}

}  // namespace

RInterval iv_add(const RInterval& x, const RInterval& y, const FpFormat& fmt) {
  bool nan = x.has_nan() || y.has_nan() || (x.lo().is_neg_inf() && y.hi().is_pos_inf()) ||
             (x.hi().is_pos_inf() && y.lo().is_neg_inf());
  return rounded_hull(corners(x, y, ext_add), nan, fmt);
}

RInterval iv_sub(const RInterval& x, const RInterval& y, const FpFormat& fmt) {
  bool nan = x.has_nan() || y.has_nan() || (x.hi().is_pos_inf() && y.hi().is_pos_inf()) ||
             (x.lo().is_neg_inf() && y.lo().is_neg_inf());
  return rounded_hull(corners(x, y, ext_sub), nan, fmt);
}

RInterval iv_mul(const RInterval& x, const RInterval& y, const FpFormat& fmt) {
  bool nan = x.has_nan() || y.has_nan() || (x.contains_zero() && y.reaches_inf()) ||
             (y.contains_zero() && x.reaches_inf());
  if (x.is_zero() || y.is_zero()) {
    const RInterval& other = x.is_zero() ? y : x;
    if (other.has_finite_member()) return RInterval(XRat(0), XRat(0), nan);
    return RInterval::nan_surrogate();
  }
  return rounded_hull(corners(x, y, ext_mul), nan, fmt);
}

RInterval iv_div(const RInterval& x, const RInterval& y, const FpFormat& fmt) {
  bool nan = x.has_nan() || y.has_nan() || (x.contains_zero() && y.contains_zero()) ||
             (x.reaches_inf() && y.reaches_inf());
  if (y.contains_zero() && !x.is_zero()) return RInterval(XRat::neg_inf(), XRat::pos_inf(), nan);
  RInterval r = rounded_hull(corners(x, y, ext_div), nan, fmt);
  return r;
}

RInterval iv_neg(const RInterval& x) { return RInterval(-x.hi(), -x.lo(), x.has_nan()); }

RInterval iv_abs(const RInterval& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return iv_neg(x);
  const XRat m = -x.lo();
  return RInterval(XRat(0), m < x.hi() ? x.hi() : m, x.has_nan());
}

RInterval iv_apply(FpaOp op, const RInterval& x, const RInterval& y, const FpFormat& fmt) {
  switch (op) {
    case FpaOp::Neg: return iv_neg(x);
    case FpaOp::Abs: return iv_abs(x);
    case FpaOp::Add: return iv_add(x, y, fmt);
    case FpaOp::Sub: return iv_sub(x, y, fmt);
    case FpaOp::Mul: return iv_mul(x, y, fmt);
    case FpaOp::Div: return iv_div(x, y, fmt);
  }
  throw std::logic_error("unknown operator");
}

namespace {

XRat cmp_sub(const XRat& a, const XRat& b) {
  if (a.is_inf() && a.kind() == b.kind()) return XRat(0);
  return *ext_sub(a, b);
}

}  // namespace

RInterval iv_sub_exact(const RInterval& f, const RInterval& g) {
  return RInterval(cmp_sub(f.lo(), g.hi()), cmp_sub(f.hi(), g.lo()), f.has_nan() || g.has_nan());
}

bool contains_fp(const RInterval& x, const FpFormat& fmt) {
  return x.has_nan() || x.lo() <= round_down(x.hi(), fmt);
}

}  // namespace fpria
