#pragma once

#include <memory>
#include <string>

#include <gmpxx.h>

#include "fpria/xrat.hpp"

namespace fpria {

/** Binary floating-point sort with eb exponent bits and sb significand bits. */
class FpFormat {
 public:
  int eb() const { return eb_; }
  int sb() const { return sb_; }
  long e_max() const { return e_max_; }
  const mpq_class& ed() const { return params_->ed; }
  const mpq_class& em() const { return params_->em; }
  const mpq_class& max_fp() const { return params_->max_fp; }

  // "F(eb,sb)"
  std::string name() const;

  friend bool operator==(const FpFormat& a, const FpFormat& b) { return a.eb_ == b.eb_ && a.sb_ == b.sb_; }
  friend auto operator<=>(const FpFormat& a, const FpFormat& b) {
    if (auto c = a.eb_ <=> b.eb_; c != 0) return c;
    return a.sb_ <=> b.sb_;
  }

 private:
  friend FpFormat make_format(int eb, int sb);
  struct Params {
    mpq_class ed, em, max_fp;
  };
  FpFormat(int eb, int sb, long e_max, std::shared_ptr<const Params> p)
      : eb_(eb), sb_(sb), e_max_(e_max), params_(std::move(p)) {}

  int eb_;
  int sb_;
  long e_max_;
  std::shared_ptr<const Params> params_;
};

// Throws std::invalid_argument for eb < 2 or sb < 2.
FpFormat make_format(int eb, int sb);

// Outward rounding enclosures; identity on infinities.
XRat round_down(const XRat& x, const FpFormat& fmt);
XRat round_up(const XRat& x, const FpFormat& fmt);

}  // namespace fpria
