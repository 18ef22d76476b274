#include "fpria/fp_value.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpria {

namespace {

// floor(log2(a)) for a > 0.
long floor_log2(const mpq_class& a) {
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 2));
  if (a < pow2(e)) --e;
  return e;
}

FpValue overflow(bool neg, RoundingMode mode, const FpFormat& fmt) {
  switch (mode) {
    case RoundingMode::RNE:
    case RoundingMode::RNA:
      return FpValue::inf(neg);
    case RoundingMode::RTZ:
      return FpValue::max_finite(neg, fmt);
    case RoundingMode::RTP:
      return neg ? FpValue::max_finite(true, fmt) : FpValue::inf(false);
    case RoundingMode::RTN:
      return neg ? FpValue::inf(true) : FpValue::max_finite(false, fmt);
  }
  throw std::logic_error("unknown rounding mode");
}

// Zero result of an exact cancellation or of two zero operands.
FpValue exact_zero(RoundingMode mode) { return FpValue::zero(mode == RoundingMode::RTN); }

}  // namespace

FpValue fp_round(const mpq_class& x, RoundingMode mode, const FpFormat& fmt) {
  if (sgn(x) == 0) return FpValue::zero(false);
  const bool neg = sgn(x) < 0;
  const mpq_class a = abs(x);
  const long e_min = 1 - fmt.e_max();
  long e = std::max(floor_log2(a), e_min);
  if (e > fmt.e_max()) return overflow(neg, mode, fmt);

  const mpq_class scaled = a / pow2(e - fmt.sb() + 1);
  mpz_class M = scaled.get_num() / scaled.get_den();
  const mpq_class rem = scaled - mpq_class(M);
  bool up = false;
  switch (mode) {
    case RoundingMode::RNE: up = rem > mpq_class(1, 2) || (rem == mpq_class(1, 2) && mpz_odd_p(M.get_mpz_t())); break;
    case RoundingMode::RNA: up = rem >= mpq_class(1, 2); break;
    case RoundingMode::RTZ: up = false; break;
    case RoundingMode::RTP: up = !neg && sgn(rem) > 0; break;
    case RoundingMode::RTN: up = neg && sgn(rem) > 0; break;
  }
  if (up) ++M;
  mpz_class top(1);
  mpz_mul_2exp(top.get_mpz_t(), top.get_mpz_t(), static_cast<mp_bitcnt_t>(fmt.sb()));
  if (M == top) {
    M /= 2;
    ++e;
    if (e > fmt.e_max()) return overflow(neg, mode, fmt);
  }
  if (M == 0) return FpValue::zero(neg);
  return FpValue::finite(neg, std::move(M), e, fmt);
}

FpValue fp_eval_op(FpaOp op, RoundingMode mode, const FpValue& a, const FpValue& b, const FpFormat& fmt) {
  switch (op) {
    case FpaOp::Neg: return a.negated();
    case FpaOp::Abs: return a.is_nan() ? a : a.absolute();
    default: break;
  }
  if (a.is_nan() || b.is_nan()) return FpValue::nan();
  const bool sign_xor = a.negative() != b.negative();
  switch (op) {
    case FpaOp::Sub:
      return fp_eval_op(FpaOp::Add, mode, a, b.negated(), fmt);
    case FpaOp::Add: {
      if (a.is_inf() && b.is_inf()) return a.negative() == b.negative() ? a : FpValue::nan();
      if (a.is_inf()) return a;
      if (b.is_inf()) return b;
      if (a.is_zero() && b.is_zero()) return a.negative() == b.negative() ? a : exact_zero(mode);
      const mpq_class s = a.real(fmt).value() + b.real(fmt).value();
      if (sgn(s) == 0) return exact_zero(mode);
      return fp_round(s, mode, fmt);
    }
    case FpaOp::Mul: {
      if ((a.is_inf() && b.is_zero()) || (a.is_zero() && b.is_inf())) return FpValue::nan();
      if (a.is_inf() || b.is_inf()) return FpValue::inf(sign_xor);
      if (a.is_zero() || b.is_zero()) return FpValue::zero(sign_xor);
      return fp_round(a.real(fmt).value() * b.real(fmt).value(), mode, fmt);
    }
    case FpaOp::Div: {
      if ((a.is_inf() && b.is_inf()) || (a.is_zero() && b.is_zero())) return FpValue::nan();
      if (a.is_inf() || b.is_zero()) return FpValue::inf(sign_xor);
      if (b.is_inf() || a.is_zero()) return FpValue::zero(sign_xor);
      return fp_round(a.real(fmt).value() / b.real(fmt).value(), mode, fmt);
    }
    default: break;
  }
  throw std::logic_error("unknown operator");
}

bool fp_eq(const FpValue& a, const FpValue& b, const FpFormat& fmt) { return a.value(fmt) == b.value(fmt); }
bool fp_gt(const FpValue& a, const FpValue& b, const FpFormat& fmt) { return a.value(fmt) > b.value(fmt); }
bool fp_geq(const FpValue& a, const FpValue& b, const FpFormat& fmt) { return a.value(fmt) >= b.value(fmt); }

bool fp_rel(Rel rel, const FpValue& a, const FpValue& b, const FpFormat& fmt) {
  switch (rel) {
    case Rel::SeqEq: return a == b;
    case Rel::FpEq: return fp_eq(a, b, fmt);
    case Rel::Ge: return fp_geq(a, b, fmt);
    case Rel::Gt: return fp_gt(a, b, fmt);
  }
  return false;
}

}  // namespace fpria
