#include "fpria/fuzz.hpp"

namespace fpria::fuzz {

namespace {

const char* const kNames[] = {"x", "y", "z", "w", "v", "u"};

}  // namespace

FormulaGenerator::FormulaGenerator(FpFormat fmt, std::uint64_t seed, FuzzLimits limits)
    : fmt_(std::move(fmt)), rng_(seed), limits_(limits), values_(enumerate_fp(fmt_)) {}

TermPtr FormulaGenerator::leaf(int nvars) {
  std::uniform_real_distribution<double> coin(0, 1);
  if (nvars > 0 && coin(rng_) < limits_.var_leaf) {
    std::uniform_int_distribution<int> pick(0, nvars - 1);
    return Term::var(kNames[pick(rng_)], fmt_);
  }
  if (coin(rng_) < 0.2) {
    std::uniform_int_distribution<int> num(-40, 40), den(1, 10);
    return Term::rounded_literal(mpq_class(num(rng_), den(rng_)), RoundingMode::RNE, fmt_);
  }
  if (coin(rng_) < 0.5) {
    static const int small[] = {0, 1, 2, -1, 3};
    std::uniform_int_distribution<int> pick(0, 4);
    return Term::literal(FpValue::exact(small[pick(rng_)], fmt_), fmt_);
  }
  std::uniform_int_distribution<std::size_t> pick(0, values_.size() - 1);
  return Term::literal(values_[pick(rng_)], fmt_);
}

TermPtr FormulaGenerator::term(int ops, int nvars) {
  if (ops == 0) return leaf(nvars);
  std::uniform_int_distribution<int> kind(0, 5);
  const int k = kind(rng_);
  if (k == 5) {
    std::uniform_int_distribution<int> u(0, 1);
    return Term::unary(u(rng_) ? FpaOp::Neg : FpaOp::Abs, term(ops - 1, nvars));
  }
  const FpaOp op = kBinaryOps[static_cast<std::size_t>(k % 4)];
  std::uniform_int_distribution<int> split(0, ops - 1);
  const int left = split(rng_);
  return Term::binary(op, RoundingSite::unspecified(), term(left, nvars), term(ops - 1 - left, nvars));
}

FormulaPtr FormulaGenerator::atom(TermPtr a, TermPtr b) {
  std::uniform_int_distribution<int> rel(0, 5);
  switch (rel(rng_)) {
    case 0: return Formula::atom(Rel::SeqEq, a, b);
    case 1: return Formula::atom(Rel::FpEq, a, b);
    case 2: return Formula::atom(Rel::Ge, a, b);
    case 3: return Formula::atom(Rel::Gt, a, b);
    case 4: return Formula::atom(Rel::Ge, b, a);
    default: return Formula::atom(Rel::Gt, b, a);
  }
}

TermPtr FormulaGenerator::ground_term(int max_ops) {
  std::uniform_int_distribution<int> ops(0, max_ops);
  return term(ops(rng_), 0);
}

FormulaPtr FormulaGenerator::next() {
  std::uniform_int_distribution<int> vars(1, limits_.max_vars), atoms(1, limits_.max_atoms),
      ops(0, limits_.max_ops);
  const int nvars = vars(rng_);
  const int natoms = atoms(rng_);
  int budget = ops(rng_);
  std::vector<FormulaPtr> lits;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < natoms; ++i) {
    std::uniform_int_distribution<int> take(0, budget);
    const int mine = i + 1 == natoms ? budget : take(rng_);
    budget -= mine;
    std::uniform_int_distribution<int> split(0, mine);
    const int left = split(rng_);
    FormulaPtr a = atom(term(left, nvars), term(mine - left, nvars));
    lits.push_back(coin(rng_) ? Formula::negation(a) : a);
  }
  if (lits.size() == 1) return lits[0];
  if (lits.size() == 3 && coin(rng_)) {
    FormulaPtr inner = coin(rng_) ? Formula::disj({lits[1], lits[2]}) : Formula::conj({lits[1], lits[2]});
    return coin(rng_) ? Formula::conj({lits[0], inner}) : Formula::disj({lits[0], inner});
  }
  return coin(rng_) ? Formula::conj(lits) : Formula::disj(lits);
}

}  // namespace fpria::fuzz
