#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fpria/format.hpp"
#include "fpria/ops.hpp"
#include "fpria/xrat.hpp"

namespace fpria {

/** A floating-point datum in canonical (M, e) form; the format is external. */
class FpValue {
 public:
  enum class Kind : std::uint8_t { Finite, Zero, Inf, NaN };

  FpValue() = default;  // +0
  static FpValue nan() { return FpValue(Kind::NaN, false); }
  static FpValue zero(bool negative) { return FpValue(Kind::Zero, negative); }
  static FpValue inf(bool negative) { return FpValue(Kind::Inf, negative); }
  // Throws std::invalid_argument unless (M, e) is canonical for fmt.
  static FpValue finite(bool negative, mpz_class M, long e, const FpFormat& fmt);
  static FpValue max_finite(bool negative, const FpFormat& fmt);
  // Exact value of a rational that is representable in fmt; throws otherwise.
  static FpValue exact(const mpq_class& q, const FpFormat& fmt);

  Kind kind() const { return kind_; }
  bool negative() const { return negative_; }
  bool is_nan() const { return kind_ == Kind::NaN; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_inf() const { return kind_ == Kind::Inf; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const mpz_class& significand() const { return M_; }
  long exponent() const { return e_; }

  // v(p): exact rational (or infinity/NaN); zeros map to 0.
  XVal value(const FpFormat& fmt) const;
  XRat real(const FpFormat& fmt) const { return value(fmt).rat(); }

  // IEEE interchange encoding (sign | biased exponent | trailing significand).
  mpz_class to_bits(const FpFormat& fmt) const;
  static FpValue from_bits(const mpz_class& bits, const FpFormat& fmt);

  // Human-readable value, e.g. "13/128", "-0", "+inf", "NaN".
  std::string to_string(const FpFormat& fmt) const;

  FpValue negated() const;
  FpValue absolute() const;

  // Bitwise identity (SMT-LIB =): NaN equals NaN, +0 differs from -0.
  friend bool operator==(const FpValue& a, const FpValue& b);

 private:
  FpValue(Kind k, bool neg) : kind_(k), negative_(neg) {}

  Kind kind_ = Kind::Zero;
  bool negative_ = false;
  mpz_class M_;
  long e_ = 0;
};

// IEEE correct rounding of an exact rational; an exact zero yields +0.
FpValue fp_round(const mpq_class& x, RoundingMode mode, const FpFormat& fmt);

// IEEE operation semantics; unary ops ignore mode and b.
FpValue fp_eval_op(FpaOp op, RoundingMode mode, const FpValue& a, const FpValue& b, const FpFormat& fmt);

// SMT-LIB predicates.
bool fp_eq(const FpValue& a, const FpValue& b, const FpFormat& fmt);   // fp.eq
bool fp_gt(const FpValue& a, const FpValue& b, const FpFormat& fmt);   // fp.gt
bool fp_geq(const FpValue& a, const FpValue& b, const FpFormat& fmt);  // fp.geq
bool fp_rel(Rel rel, const FpValue& a, const FpValue& b, const FpFormat& fmt);

// All canonical values in ascending order (-oo .. -0, +0 .. +oo), then NaN.
// Throws std::length_error for formats with more than 2^20 values.
std::vector<FpValue> enumerate_fp(const FpFormat& fmt);
// Number of canonical values including NaN, or -1 when it exceeds 2^62.
long long fp_value_count(const FpFormat& fmt);

}  // namespace fpria
