#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fpria {

enum class FpaOp : std::uint8_t { Neg, Abs, Add, Sub, Mul, Div };

enum class RoundingMode : std::uint8_t { RNE, RNA, RTP, RTN, RTZ };

inline constexpr std::array<RoundingMode, 5> kAllModes = {RoundingMode::RNE, RoundingMode::RNA, RoundingMode::RTP,
                                                         RoundingMode::RTN, RoundingMode::RTZ};
inline constexpr std::array<FpaOp, 4> kBinaryOps = {FpaOp::Add, FpaOp::Sub, FpaOp::Mul, FpaOp::Div};

inline bool is_unary(FpaOp op) { return op == FpaOp::Neg || op == FpaOp::Abs; }

std::string_view op_name(FpaOp op);    // "add", "neg", ...
std::string_view mode_name(RoundingMode m);  // "RNE", ...
// Accepts the short and long SMT-LIB spellings.
std::optional<RoundingMode> parse_mode(std::string_view s);

/** Comparison relation; lt/leq are expressed by swapping operands. */
enum class Rel : std::uint8_t { SeqEq, FpEq, Ge, Gt };
enum class Polarity : std::uint8_t { Positive, Negative };
enum class Mode : std::uint8_t { Weak, Strong };

std::string_view rel_name(Rel r);
std::string_view mode_name(Mode m);

}  // namespace fpria
