#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fpria {

/** Rational number extended with -oo and +oo. */
class XRat {
 public:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

  XRat() = default;
  XRat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
  XRat(long v) : value_(v) {}
  XRat(int v) : value_(v) {}

  static XRat neg_inf() { return XRat(Kind::NegInf); }
  static XRat pos_inf() { return XRat(Kind::PosInf); }
  // Accepts "3", "-1/10", "0.25", "-1.5e-3", "+inf", "-inf".
  static XRat parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_inf() const { return kind_ != Kind::Finite; }
  bool is_zero() const { return is_finite() && sgn(value_) == 0; }
  int sign() const;

  // Precondition: is_finite().
  const mpq_class& value() const { return value_; }

  XRat operator-() const;

  std::string to_string() const;

  friend bool operator==(const XRat& a, const XRat& b);
  friend std::strong_ordering operator<=>(const XRat& a, const XRat& b);

 private:
  explicit XRat(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  mpq_class value_;
};

// Extended arithmetic; nullopt marks an undefined result (oo - oo, 0 * oo,
// oo / oo, x / 0).
std::optional<XRat> ext_add(const XRat& a, const XRat& b);
std::optional<XRat> ext_sub(const XRat& a, const XRat& b);
std::optional<XRat> ext_mul(const XRat& a, const XRat& b);
std::optional<XRat> ext_div(const XRat& a, const XRat& b);

/** Extended real or NaN. NaN compares false against everything. */
class XVal {
 public:
  XVal(XRat v) : rat_(std::move(v)) {}
  static XVal nan() { return XVal(); }

  bool is_nan() const { return !rat_.has_value(); }
  // Precondition: !is_nan().
  const XRat& rat() const { return *rat_; }

  std::string to_string() const;

  friend bool operator==(const XVal& a, const XVal& b);
  friend bool operator<(const XVal& a, const XVal& b);
  friend bool operator<=(const XVal& a, const XVal& b);
  friend bool operator>(const XVal& a, const XVal& b) { return b < a; }
  friend bool operator>=(const XVal& a, const XVal& b) { return b <= a; }

 private:
  XVal() = default;
  std::optional<XRat> rat_;
};

// Lowest-terms text: decimal when the expansion terminates, otherwise p/q.
std::string rational_to_string(const mpq_class& q);

// 2^k as an exact rational (k may be negative).
mpq_class pow2(long k);

}  // namespace fpria
