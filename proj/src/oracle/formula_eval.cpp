#include <stdexcept>

#include "fpria/oracle.hpp"

namespace fpria {

namespace {

class Evaluator {
 public:
  Evaluator(const Assignment& env, const ModeAssignment& modes) : env_(env), modes_(modes) {}

  FpValue term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Literal: return t.value();
      case Term::Kind::Var: {
        auto it = env_.find(t.name());
        if (it == env_.end()) throw std::invalid_argument("no value for variable '" + t.name() + "'");
        return it->second;
      }
      case Term::Kind::Unary: return fp_eval_op(t.op(), RoundingMode::RNE, term(*t.lhs()), FpValue(), t.format());
      case Term::Kind::Binary: break;
    }
    RoundingMode m = RoundingMode::RNE;
    switch (t.rm().kind) {
      case RoundingSite::Kind::Concrete: m = t.rm().mode; break;
      case RoundingSite::Kind::Var: {
        auto it = modes_.vars.find(t.rm().name);
        if (it == modes_.vars.end()) throw std::invalid_argument("no mode for '" + t.rm().name + "'");
        m = it->second;
        break;
      }
      case RoundingSite::Kind::Unspecified:
        if (site_ >= modes_.sites.size()) throw std::invalid_argument("no mode for rounding site " + std::to_string(site_));
        m = modes_.sites[site_++];
        break;
    }
    FpValue a = term(*t.lhs());
    FpValue b = term(*t.rhs());
    return fp_eval_op(t.op(), m, a, b, t.format());
  }

  bool formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        FpValue a = term(*f.lhs());
        FpValue b = term(*f.rhs());
        return fp_rel(f.rel(), a, b, f.lhs()->format());
      }
      case Formula::Kind::Not: return !formula(*f.children()[0]);
      case Formula::Kind::And:
      case Formula::Kind::Or: break;
    }
    // Evaluate every child so that site numbering does not depend on short-circuiting.
    const bool conj = f.kind() == Formula::Kind::And;
    bool acc = conj;
    for (const auto& c : f.children()) {
      bool v = formula(*c);
      acc = conj ? (acc && v) : (acc || v);
    }
    return acc;
  }

 private:
  const Assignment& env_;
  const ModeAssignment& modes_;
  std::size_t site_ = 0;
};

}  // namespace

FpValue fp_eval_term(const Term& t, const Assignment& env, const ModeAssignment& modes) {
  return Evaluator(env, modes).term(t);
}

bool fp_eval_formula(const Formula& phi, const Assignment& env, const ModeAssignment& modes) {
  return Evaluator(env, modes).formula(phi);
}

std::string verdict_name(OracleVerdict v) { return v == OracleVerdict::Sat ? "sat" : "unsat"; }

}  // namespace fpria
