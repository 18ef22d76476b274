#include <chrono>
#include <random>
#include <vector>

#include "fpria/checks.hpp"
#include "fpria/fp_value.hpp"
#include "fpria/interval.hpp"

namespace fpria::checks {

namespace {

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string str(std::string_view v) { return std::string(v); }

void violation(Report& r, const std::string& what) {
  if (r.violations++ == 0) r.first_violation = what;
}

}  // namespace

Report rounding_enclosure(const FpFormat& fmt, int samples, std::uint64_t seed, long range) {
  Report r{"rounding enclosure " + fmt.name(), 0, 0, {}, 0};
  Timer timer;
  std::vector<XRat> xs;
  for (const FpValue& v : enumerate_fp(fmt)) {
    if (!v.is_nan()) xs.push_back(v.real(fmt));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int i = 0; i < samples; ++i) {
    const long q = den(rng);
    std::uniform_int_distribution<long> num(-range * q, range * q);
    xs.emplace_back(mpq_class(num(rng), q));
  }
  for (const XRat& x : xs) {
    const XRat lo = round_down(x, fmt), hi = round_up(x, fmt);
    for (RoundingMode m : kAllModes) {
      ++r.cases;
      if (!x.is_finite()) continue;
      const FpValue v = fp_round(x.value(), m, fmt);
      const XRat got = v.real(fmt);
      if (!(lo <= got && got <= hi)) {
        violation(r, str(mode_name(m)) + " " + x.to_string() + " -> " + v.to_string(fmt) + " outside [" + lo.to_string() +
                         "," + hi.to_string() + "]");
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

Report operation_enclosure(const FpFormat& fmt) {
  Report r{"operation enclosure " + fmt.name(), 0, 0, {}, 0};
  Timer timer;
  const std::vector<FpValue> values = enumerate_fp(fmt);
  std::vector<RInterval> points;
  for (const auto& v : values) points.push_back(RInterval::of_value(v.value(fmt)));
  auto check = [&](const FpValue& res, const RInterval& iv, const std::string& what) {
    ++r.cases;
    if (!iv.contains(res.value(fmt))) violation(r, what + " = " + res.to_string(fmt) + " not in " + iv.to_string());
  };
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (FpaOp op : {FpaOp::Neg, FpaOp::Abs}) {
      check(fp_eval_op(op, RoundingMode::RNE, values[i], values[i], fmt), iv_apply(op, points[i], points[i], fmt),
            str(op_name(op)) + "(" + values[i].to_string(fmt) + ")");
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      for (FpaOp op : kBinaryOps) {
        const RInterval iv = iv_apply(op, points[i], points[j], fmt);
        for (RoundingMode m : kAllModes) {
          const FpValue res = fp_eval_op(op, m, values[i], values[j], fmt);
          ++r.cases;
          if (!iv.contains(res.value(fmt))) {
            violation(r, "op=" + str(op_name(op)) + " mode=" + str(mode_name(m)) + " a=" + values[i].to_string(fmt) +
                             " b=" + values[j].to_string(fmt) + " got=" + res.to_string(fmt) + " interval=" +
                             iv.lo().to_string() + "," + iv.hi().to_string() + "," + (iv.has_nan() ? "nan" : "nonan"));
          }
        }
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

Report comparison_table(const FpFormat& fmt, const CmpOptions& opts) {
  Report r{"comparison table " + fmt.name(), 0, 0, {}, 0};
  Timer timer;
  const std::vector<FpValue> values = enumerate_fp(fmt);
  const int n = static_cast<int>(values.size());
  std::vector<XRat> reals;  // distinct reals, ascending
  for (int i = 0; i < n; ++i) {
    if (values[i].is_nan()) continue;
    const XRat x = values[i].real(fmt);
    if (reals.empty() || !(reals.back() == x)) reals.push_back(x);
  }

  struct Case {
    RInterval iv;
    std::vector<int> members;
  };
  std::vector<Case> family;
  auto add = [&](const RInterval& iv) {
    Case c{iv, {}};
    for (int i = 0; i < n; ++i) {
      if (iv.contains(values[i].value(fmt))) c.members.push_back(i);
    }
    family.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < reals.size(); ++i) {
    for (bool nan : {false, true}) {
      add(RInterval(reals[i], reals[i], nan));
      if (i + 1 < reals.size()) add(RInterval(reals[i], reals[i + 1], nan));
    }
  }
  add(RInterval::nan_surrogate());

  const Rel rels[] = {Rel::SeqEq, Rel::FpEq, Rel::Ge, Rel::Gt};
  std::vector<std::vector<char>> truth(4, std::vector<char>(static_cast<std::size_t>(n) * n));
  for (int k = 0; k < 4; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) truth[k][a * n + b] = fp_rel(rels[k], values[a], values[b], fmt);
    }
  }

  for (const Case& f : family) {
    for (const Case& g : family) {
      for (int k = 0; k < 4; ++k) {
        bool some_true = false, some_false = false;
        for (int a : f.members) {
          for (int b : g.members) {
            (truth[k][a * n + b] ? some_true : some_false) = true;
          }
        }
        const bool wp = eval_cmp({rels[k], Polarity::Positive, Mode::Weak}, f.iv, g.iv, opts);
        const bool wn = eval_cmp({rels[k], Polarity::Negative, Mode::Weak}, f.iv, g.iv, opts);
        const bool sp = eval_cmp({rels[k], Polarity::Positive, Mode::Strong}, f.iv, g.iv, opts);
        const bool sn = eval_cmp({rels[k], Polarity::Negative, Mode::Strong}, f.iv, g.iv, opts);
        r.cases += 7;
        const std::string ctx = str(rel_name(rels[k])) + " " + f.iv.to_string() + " " + g.iv.to_string();
        if (some_true && !wp) violation(r, ctx + ": weak positive false with a satisfying member pair");
        if (some_false && !wn) violation(r, ctx + ": weak negative false with a falsifying member pair");
        if (sp && some_false) violation(r, ctx + ": strong positive true with a falsifying member pair");
        if (sn && some_true) violation(r, ctx + ": strong negative true with a satisfying member pair");
        if (sp && !wp) violation(r, ctx + ": strong positive without weak positive");
        if (sn && !wn) violation(r, ctx + ": strong negative without weak negative");
        if (!wp && !wn) violation(r, ctx + ": neither weak literal holds");
      }
    }
  }
  r.seconds = timer.seconds();
  return r;
}

}  // namespace fpria::checks
