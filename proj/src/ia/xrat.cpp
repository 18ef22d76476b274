#include "fpria/xrat.hpp"

#include <algorithm>
#include <stdexcept>

namespace fpria {

int XRat::sign() const {
  switch (kind_) {
    case Kind::NegInf: return -1;
    case Kind::PosInf: return 1;
    case Kind::Finite: break;
  }
  return sgn(value_);
}

XRat XRat::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    case Kind::Finite: break;
  }
  return XRat(mpq_class(-value_));
}

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed rational: " + std::string(whole));
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rational: " + std::string(whole));
  }
  return mpz_class(std::string(digits), 10);
}

mpq_class parse_unsigned(std::string_view s, std::string_view whole) {
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class den = parse_integer(s.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(whole));
    mpq_class q(parse_integer(s.substr(0, slash), whole), den);
    q.canonicalize();
    return q;
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = s.substr(e + 1);
    bool neg = false;
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
      neg = ex[0] == '-';
      ex.remove_prefix(1);
    }
    exp10 = parse_integer(ex, whole).get_si();
    if (neg) exp10 = -exp10;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    digits = std::string(s.substr(0, dot)) + std::string(frac);
    exp10 -= static_cast<long>(frac.size());
    if (digits.empty()) throw std::invalid_argument("malformed rational: " + std::string(whole));
  } else {
    digits = std::string(s);
  }
  mpq_class q(parse_integer(digits, whole));
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0) {
    q *= p10;
  } else {
    q /= p10;
  }
  q.canonicalize();
  return q;
}

}  // namespace

XRat XRat::parse(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s == "inf" || s == "oo") return neg ? neg_inf() : pos_inf();
  mpq_class q = parse_unsigned(s, text);
  return XRat(neg ? mpq_class(-q) : q);
}

std::string XRat::to_string() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: break;
  }
  return rational_to_string(value_);
}

bool operator==(const XRat& a, const XRat& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const XRat& a, const XRat& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (!a.is_finite()) return std::strong_ordering::equal;
  int c = cmp(a.value_, b.value_);
  return c <=> 0;
}

std::optional<XRat> ext_add(const XRat& a, const XRat& b) {
  if (a.is_finite() && b.is_finite()) return XRat(mpq_class(a.value() + b.value()));
  if (a.is_inf() && b.is_inf() && a.kind() != b.kind()) return std::nullopt;
  return a.is_inf() ? a : b;
}

std::optional<XRat> ext_sub(const XRat& a, const XRat& b) { return ext_add(a, -b); }

std::optional<XRat> ext_mul(const XRat& a, const XRat& b) {
  if (a.is_finite() && b.is_finite()) return XRat(mpq_class(a.value() * b.value()));
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  return a.sign() * b.sign() > 0 ? XRat::pos_inf() : XRat::neg_inf();
}

std::optional<XRat> ext_div(const XRat& a, const XRat& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_inf() && b.is_inf()) return std::nullopt;
  if (b.is_inf()) return XRat(0);
  if (a.is_inf()) return a.sign() * b.sign() > 0 ? XRat::pos_inf() : XRat::neg_inf();
  return XRat(mpq_class(a.value() / b.value()));
}

std::string XVal::to_string() const { return is_nan() ? "NaN" : rat_->to_string(); }

bool operator==(const XVal& a, const XVal& b) {
  return !a.is_nan() && !b.is_nan() && a.rat() == b.rat();
}

bool operator<(const XVal& a, const XVal& b) {
  return !a.is_nan() && !b.is_nan() && a.rat() < b.rat();
}

bool operator<=(const XVal& a, const XVal& b) {
  return !a.is_nan() && !b.is_nan() && a.rat() <= b.rat();
}

std::string rational_to_string(const mpq_class& q) {
  const mpz_class& den = q.get_den();
  if (den == 1) return q.get_num().get_str();
  // A terminating decimal needs a denominator of the form 2^a 5^b.
  mpz_class d = den;
  unsigned long twos = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(d.get_mpz_t(), d.get_mpz_t(), mpz_class(5).get_mpz_t());
  unsigned long digits = std::max(twos, fives);
  if (d != 1 || digits > 40) return q.get_num().get_str() + "/" + den.get_str();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = q.get_num() * scale / den;
  bool neg = scaled < 0;
  std::string s = mpz_class(abs(scaled)).get_str();
  if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return neg ? "-" + s : s;
}

mpq_class pow2(long k) {
  mpz_class p(1);
  unsigned long m = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), m);
  if (k >= 0) return mpq_class(p);
  mpq_class q(mpz_class(1), p);
  return q;
}

}  // namespace fpria
