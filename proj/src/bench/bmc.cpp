#include <sstream>
#include <vector>

#include "fpria/ast.hpp"
#include "fpria/bench.hpp"
#include "fpria/smt.hpp"

namespace fpria::bench {

std::string bmc_kind_name(BmcKind k) {
  switch (k) {
    case BmcKind::Integrator: return "integrator";
    case BmcKind::Filter: return "filter";
    case BmcKind::Rotation: return "rotation";
  }
  return "?";
}

BmcKind parse_bmc_kind(const std::string& name) {
  for (BmcKind k : {BmcKind::Integrator, BmcKind::Filter, BmcKind::Rotation}) {
    if (bmc_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown system '" + name + "' (integrator, filter, rotation)");
}

std::string fp_literal_text(const mpq_class& c, const FpFormat& fmt) {
  const FpValue r = fp_round(c, RoundingMode::RNE, fmt);
  if ((r.is_finite() || r.is_zero()) && r.real(fmt) == XRat(c)) return smt::print_term(*Term::literal(r, fmt));
  return smt::print_term(*Term::rounded_literal(c, RoundingMode::RNE, fmt));
}

namespace {

const char* const kC1 = "0.058167";
const char* const kC2 = "1.4891";
const char* const kC3 = "0.88367";
const char* const kC4 = "0.86602540303";
const char* const kC5 = "0.5";

mpq_class rat(const std::string& s) { return XRat::parse(s).value(); }

class Unroller {
 public:
  explicit Unroller(const FpFormat& fmt) : fmt_(fmt), sort_(smt::sort_name(fmt)) {}

  std::string constant(const char* c) { return fp_literal_text(rat(c), fmt_); }

  std::string op(const char* name, const std::string& a, const std::string& b) {
    const std::string rm = "rm!" + std::to_string(++modes_);
    out_ << "(declare-const " << rm << " RoundingMode)\n";
    return "(" + std::string(name) + " " + rm + " " + a + " " + b + ")";
  }

  void define(const std::string& name, const std::string& body) {
    out_ << "(define-fun " << name << " () " << sort_ << " " << body << ")\n";
  }

  std::ostringstream& out() { return out_; }
  const std::string& sort() const { return sort_; }

 private:
  FpFormat fmt_;
  std::string sort_;
  int modes_ = 0;
  std::ostringstream out_;
};

}  // namespace

std::string bmc_file_name(const BmcInstance& inst) {
  return bmc_kind_name(inst.system) + "_k" + std::to_string(inst.k) + "_th" + inst.th + ".smt2";
}

std::string gen_bmc(const BmcInstance& inst) {
  if (inst.k < 1) throw std::invalid_argument("unrolling depth must be at least 1");
  Unroller u(inst.fmt);
  auto& out = u.out();
  out << "(set-logic QF_FP)\n";
  out << "(set-info :status unknown)\n";
  const std::string one = fp_literal_text(1, inst.fmt);
  const std::string minus_one = fp_literal_text(-1, inst.fmt);
  const std::string zero = "(_ +zero " + std::to_string(inst.fmt.eb()) + " " + std::to_string(inst.fmt.sb()) + ")";
  std::string y1 = zero, y2 = zero;
  for (int i = 1; i <= inst.k; ++i) {
    const std::string is = std::to_string(i);
    std::string n1, n2;
    if (inst.system == BmcKind::Rotation) {
      n1 = u.op("fp.sub", u.op("fp.mul", u.constant(kC4), y1), u.op("fp.mul", u.constant(kC5), y2));
      n2 = u.op("fp.add", u.op("fp.mul", u.constant(kC5), y1), u.op("fp.mul", u.constant(kC4), y2));
    } else {
      const std::string x = "x_" + is;
      out << "(declare-const " << x << " " << u.sort() << ")\n";
      out << "(assert (fp.leq " << minus_one << " " << x << "))\n";
      out << "(assert (fp.leq " << x << " " << one << "))\n";
      if (inst.system == BmcKind::Integrator) {
        n1 = u.op("fp.add", x, u.op("fp.mul", u.constant("0.9"), y1));
      } else {
        n1 = u.op("fp.sub", u.op("fp.sub", u.op("fp.mul", u.constant(kC1), x), u.op("fp.mul", u.constant(kC2), y1)),
                  u.op("fp.mul", u.constant(kC3), y2));
        n2 = y1;
      }
    }
    if (inst.system == BmcKind::Integrator) {
      u.define("y_" + is, n1);
      y1 = "y_" + is;
    } else {
      u.define("y1_" + is, n1);
      u.define("y2_" + is, n2);
      y1 = "y1_" + is;
      y2 = "y2_" + is;
    }
  }
  out << "(assert (fp.geq " << y1 << " " << fp_literal_text(rat(inst.th), inst.fmt) << "))\n";
  out << "(check-sat)\n";
  return out.str();
}

mpq_class bmc_real_max(BmcKind system, int k) {
  if (system == BmcKind::Rotation) return 0;
  if (system == BmcKind::Integrator) {
    mpq_class y = 0;
    for (int i = 0; i < k; ++i) y = 1 + mpq_class(9, 10) * y;
    return y;
  }
  // y1(k) is linear in the inputs: sum of |impulse response| weights.
  std::vector<mpq_class> h;
  mpq_class a = 0, b = 0;
  const mpq_class c1 = rat(kC1), c2 = rat(kC2), c3 = rat(kC3);
  for (int i = 0; i < k; ++i) {
    mpq_class n1 = (i == 0 ? c1 : mpq_class(0)) - c2 * a - c3 * b;
    b = a;
    a = n1;
    h.push_back(a);
  }
  mpq_class s = 0;
  for (const auto& w : h) s += abs(w);
  return s;
}

}  // namespace fpria::bench
