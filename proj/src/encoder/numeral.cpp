#include "fpria/encoder.hpp"

namespace fpria::enc {

std::string numeral(const mpq_class& q) {
  if (sgn(q) < 0) return "(- " + numeral(mpq_class(-q)) + ")";
  if (q.get_den() == 1) return q.get_num().get_str() + ".0";
  return "(/ " + q.get_num().get_str() + " " + q.get_den().get_str() + ")";
}

}  // namespace fpria::enc
