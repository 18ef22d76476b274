#include "fpria/fp_value.hpp"

#include <stdexcept>

namespace fpria {

namespace {

mpz_class pow2z(unsigned long k) {
  mpz_class p(1);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), k);
  return p;
}

}  // namespace

FpValue FpValue::finite(bool negative, mpz_class M, long e, const FpFormat& fmt) {
  const mpz_class lead = pow2z(fmt.sb() - 1);
  const long e_min = 1 - fmt.e_max();
  if (M <= 0 || M >= 2 * lead || e < e_min || e > fmt.e_max() || (M < lead && e != e_min)) {
    throw std::invalid_argument("non-canonical FP value M=" + M.get_str() + " e=" + std::to_string(e) + " in " +
                                fmt.name());
  }
  FpValue v(Kind::Finite, negative);
  v.M_ = std::move(M);
  v.e_ = e;
  return v;
}

FpValue FpValue::max_finite(bool negative, const FpFormat& fmt) {
  return finite(negative, pow2z(fmt.sb()) - 1, fmt.e_max(), fmt);
}

FpValue FpValue::exact(const mpq_class& q, const FpFormat& fmt) {
  FpValue v = fp_round(q, RoundingMode::RTZ, fmt);
  if (v.is_inf() || v.real(fmt) != XRat(q)) {
    throw std::invalid_argument(rational_to_string(q) + " is not representable in " + fmt.name());
  }
  return v;
}

XVal FpValue::value(const FpFormat& fmt) const {
  switch (kind_) {
    case Kind::NaN: return XVal::nan();
    case Kind::Inf: return negative_ ? XRat::neg_inf() : XRat::pos_inf();
    case Kind::Zero: return XRat(0);
    case Kind::Finite: break;
  }
  mpq_class q = mpq_class(M_) * pow2(e_ - fmt.sb() + 1);
  if (negative_) q = -q;
  return XRat(std::move(q));
}

mpz_class FpValue::to_bits(const FpFormat& fmt) const {
  const unsigned long fbits = static_cast<unsigned long>(fmt.sb() - 1);
  const mpz_class all_ones = pow2z(static_cast<unsigned long>(fmt.eb())) - 1;
  mpz_class exp_field = 0, frac = 0;
  switch (kind_) {
    case Kind::NaN:
      exp_field = all_ones;
      frac = pow2z(fbits - 1);
      break;
    case Kind::Inf:
      exp_field = all_ones;
      break;
    case Kind::Zero:
      break;
    case Kind::Finite:
      if (M_ >= pow2z(fbits)) {
        exp_field = e_ + fmt.e_max();
        frac = M_ - pow2z(fbits);
      } else {
        frac = M_;
      }
      break;
  }
  mpz_class bits = (negative_ && kind_ != Kind::NaN) ? mpz_class(1) : mpz_class(0);
  bits = (bits << static_cast<mp_bitcnt_t>(fmt.eb())) + exp_field;
  bits = (bits << static_cast<mp_bitcnt_t>(fbits)) + frac;
  return bits;
}

FpValue FpValue::from_bits(const mpz_class& bits, const FpFormat& fmt) {
  const unsigned long fbits = static_cast<unsigned long>(fmt.sb() - 1);
  const unsigned long width = fbits + static_cast<unsigned long>(fmt.eb()) + 1;
  if (bits < 0 || bits >= pow2z(width)) throw std::invalid_argument("bit pattern out of range for " + fmt.name());
  const mpz_class frac = bits % pow2z(fbits);
  const mpz_class exp_field = (bits >> static_cast<mp_bitcnt_t>(fbits)) % pow2z(static_cast<unsigned long>(fmt.eb()));
  const bool neg = (bits >> static_cast<mp_bitcnt_t>(width - 1)) != 0;
  const mpz_class all_ones = pow2z(static_cast<unsigned long>(fmt.eb())) - 1;
  if (exp_field == all_ones) return frac == 0 ? inf(neg) : nan();
  if (exp_field == 0) {
    if (frac == 0) return zero(neg);
    return finite(neg, frac, 1 - fmt.e_max(), fmt);
  }
  return finite(neg, frac + pow2z(fbits), exp_field.get_si() - fmt.e_max(), fmt);
}

std::string FpValue::to_string(const FpFormat& fmt) const {
  switch (kind_) {
    case Kind::NaN: return "NaN";
    case Kind::Inf: return negative_ ? "-inf" : "+inf";
    case Kind::Zero: return negative_ ? "-0" : "+0";
    case Kind::Finite: break;
  }
  return real(fmt).to_string();
}

FpValue FpValue::negated() const {
  if (is_nan()) return *this;
  FpValue v = *this;
  v.negative_ = !negative_;
  return v;
}

FpValue FpValue::absolute() const {
  FpValue v = *this;
  v.negative_ = false;
  return v;
}

bool operator==(const FpValue& a, const FpValue& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == FpValue::Kind::NaN) return true;
  if (a.negative_ != b.negative_) return false;
  return a.kind_ != FpValue::Kind::Finite || (a.M_ == b.M_ && a.e_ == b.e_);
}

long long fp_value_count(const FpFormat& fmt) {
  // 2 * (normals + subnormals) + {+-0, +-inf, NaN}
  const long long sbits = fmt.sb() - 1;
  if (sbits > 40 || fmt.e_max() > (1LL << 20)) return -1;
  const long long lead = 1LL << sbits;
  return 2 * (lead * 2 * fmt.e_max() + lead - 1) + 5;
}

std::vector<FpValue> enumerate_fp(const FpFormat& fmt) {
  const long long n = fp_value_count(fmt);
  if (n < 0 || n > (1LL << 20)) throw std::length_error(fmt.name() + " has too many values to enumerate");
  const mpz_class lead = pow2z(fmt.sb() - 1);
  const long e_min = 1 - fmt.e_max();
  std::vector<FpValue> pos;
  for (mpz_class M = 1; M < lead; ++M) pos.push_back(FpValue::finite(false, M, e_min, fmt));
  for (long e = e_min; e <= fmt.e_max(); ++e) {
    for (mpz_class M = lead; M < 2 * lead; ++M) pos.push_back(FpValue::finite(false, M, e, fmt));
  }
  std::vector<FpValue> out;
  out.reserve(static_cast<std::size_t>(n));
  out.push_back(FpValue::inf(true));
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(it->negated());
  out.push_back(FpValue::zero(true));
  out.push_back(FpValue::zero(false));
  for (const FpValue& p : pos) out.push_back(p);
  out.push_back(FpValue::inf(false));
  out.push_back(FpValue::nan());
  return out;
}

}  // namespace fpria
