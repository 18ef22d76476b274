#include "fpria/format.hpp"

#include <stdexcept>

namespace fpria {

FpFormat make_format(int eb, int sb) {
  if (eb < 2 || sb < 2) {
    throw std::invalid_argument("degenerate format (" + std::to_string(eb) + "," + std::to_string(sb) + ")");
  }
  if (eb > 30 || sb > 4096) {
    throw std::invalid_argument("format too large (" + std::to_string(eb) + "," + std::to_string(sb) + ")");
  }
  long e_max = (1L << (eb - 1)) - 1;
  auto p = std::make_shared<FpFormat::Params>();
  p->ed = pow2(sb - 1);
  p->em = pow2(2 - e_max - sb);
  p->max_fp = mpq_class(pow2(sb) - 1) * pow2(e_max - sb + 1);
  return FpFormat(eb, sb, e_max, std::move(p));
}

std::string FpFormat::name() const {
  return "F(" + std::to_string(eb_) + "," + std::to_string(sb_) + ")";
}

XRat round_down(const XRat& x, const FpFormat& fmt) {
  if (!x.is_finite()) return x;
  const mpq_class& v = x.value();
  mpq_class w = v - abs(v) / fmt.ed() - fmt.em();
  if (w < -fmt.max_fp()) return XRat::neg_inf();
  if (w > fmt.max_fp()) return XRat(fmt.max_fp());
  return XRat(std::move(w));
}

XRat round_up(const XRat& x, const FpFormat& fmt) {
  if (!x.is_finite()) return x;
  const mpq_class& v = x.value();
  mpq_class w = v + abs(v) / fmt.ed() + fmt.em();
  if (w > fmt.max_fp()) return XRat::pos_inf();
  if (w < -fmt.max_fp()) return XRat(mpq_class(-fmt.max_fp()));
  return XRat(std::move(w));
}

}  // namespace fpria
