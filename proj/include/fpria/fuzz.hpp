#pragma once

#include <cstdint>
#include <random>

#include "fpria/ast.hpp"

namespace fpria::fuzz {

struct FuzzLimits {
  int max_vars = 3;
  int max_atoms = 3;
  int max_ops = 4;
  // Probability that a leaf is a variable rather than a literal.
  double var_leaf = 0.6;
};

/** Random FPA formulas with unspecified rounding sites over one format. */
class FormulaGenerator {
 public:
  FormulaGenerator(FpFormat fmt, std::uint64_t seed, FuzzLimits limits = {});

  FormulaPtr next();
  // Variable-free term with at most max_ops operations.
  TermPtr ground_term(int max_ops);

 private:
  TermPtr term(int ops, int nvars);
  TermPtr leaf(int nvars);
  FormulaPtr atom(TermPtr a, TermPtr b);

  FpFormat fmt_;
  std::mt19937_64 rng_;
  FuzzLimits limits_;
  std::vector<FpValue> values_;
};

}  // namespace fpria::fuzz
