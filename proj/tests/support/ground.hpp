#pragma once

#include <string>
#include <vector>

#include "fpria/driver.hpp"
#include "fpria/encoder.hpp"

namespace fpria::support {

// Evaluates each ground term through the encoder and a backend's get-value,
// comparing the decoded bounds against interval_of.
struct GroundReport {
  std::size_t terms = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
  std::string error;  // backend or protocol failure
  double seconds = 0;
  bool ok() const { return error.empty() && mismatches == 0; }
};

GroundReport ground_differential(const std::vector<TermPtr>& terms, const enc::EncodeOptions& opts,
                                 const driver::BackendConfig& cfg);

// Exact value of a backend model value: 3, 3.0, (- x), (/ p q).
// Throws std::invalid_argument on anything else.
mpq_class model_rational(const SExpr& e);

}  // namespace fpria::support
