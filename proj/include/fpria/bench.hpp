#pragma once

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "fpria/format.hpp"

namespace fpria::bench {

enum class BmcKind { Integrator, Filter, Rotation };

std::string bmc_kind_name(BmcKind k);
// Throws std::invalid_argument for unknown names.
BmcKind parse_bmc_kind(const std::string& name);

struct BmcInstance {
  BmcKind system = BmcKind::Integrator;
  int k = 1;
  std::string th = "0";  // decimal or p/q spelling, kept for file naming
  FpFormat fmt = make_format(11, 53);
};

// Unrolled path of length k asserting y(k) >= th (first component for 2-D systems).
// Every operation carries its own free RoundingMode constant.
std::string gen_bmc(const BmcInstance& inst);
// "<system>_k<k>_th<th>.smt2"
std::string bmc_file_name(const BmcInstance& inst);

// Exact real-arithmetic maximum of y(k) (first component) over inputs in [-1,1].
mpq_class bmc_real_max(BmcKind system, int k);

class UnsupportedConstruct : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RaToFpaOptions {
  // Assert x fp.eq x for every declared variable.
  bool assert_not_nan = true;
};

// Real-arithmetic script to the floating-point subset: Real becomes fmt, each
// arithmetic operation gets a fresh RoundingMode constant, constants become
// exact literals or fp.const rounded constants.
std::string ra_to_fpa(const std::string& script, const FpFormat& fmt, const RaToFpaOptions& opts = {});

// Exact literal when representable in fmt, else ((_ fp.const eb sb) c RNE).
std::string fp_literal_text(const mpq_class& c, const FpFormat& fmt);

}  // namespace fpria::bench
