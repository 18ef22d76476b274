#include "fpria/ops.hpp"

namespace fpria {

std::string_view op_name(FpaOp op) {
  switch (op) {
    case FpaOp::Neg: return "neg";
    case FpaOp::Abs: return "abs";
    case FpaOp::Add: return "add";
    case FpaOp::Sub: return "sub";
    case FpaOp::Mul: return "mul";
    case FpaOp::Div: return "div";
  }
  return "?";
}

std::string_view mode_name(RoundingMode m) {
  switch (m) {
    case RoundingMode::RNE: return "RNE";
    case RoundingMode::RNA: return "RNA";
    case RoundingMode::RTP: return "RTP";
    case RoundingMode::RTN: return "RTN";
    case RoundingMode::RTZ: return "RTZ";
  }
  return "?";
}

std::optional<RoundingMode> parse_mode(std::string_view s) {
  if (s == "RNE" || s == "roundNearestTiesToEven") return RoundingMode::RNE;
  if (s == "RNA" || s == "roundNearestTiesToAway") return RoundingMode::RNA;
  if (s == "RTP" || s == "roundTowardPositive") return RoundingMode::RTP;
  if (s == "RTN" || s == "roundTowardNegative") return RoundingMode::RTN;
  if (s == "RTZ" || s == "roundTowardZero") return RoundingMode::RTZ;
  return std::nullopt;
}

std::string_view rel_name(Rel r) {
  switch (r) {
    case Rel::SeqEq: return "seq";
    case Rel::FpEq: return "eq";
    case Rel::Ge: return "ge";
    case Rel::Gt: return "gt";
  }
  return "?";
}

std::string_view mode_name(Mode m) { return m == Mode::Weak ? "weak" : "strong"; }

}  // namespace fpria
