#pragma once

#include <string>
#include <vector>

#include "fpria/encoder.hpp"

namespace fpria::enc::detail {

struct PreambleSpec {
  Representation repr;
  Mode mode;
  bool multi;
  bool abstract;
  bool zero_sign_guard;
  std::vector<FpFormat> formats;
};

std::string build_preamble(const PreambleSpec& spec);

}  // namespace fpria::enc::detail
