#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fpria/format.hpp"
#include "fpria/fp_value.hpp"
#include "fpria/ops.hpp"

namespace fpria {

class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Rounding-mode argument of a binary operation. */
struct RoundingSite {
  enum class Kind : std::uint8_t { Concrete, Var, Unspecified };
  Kind kind = Kind::Unspecified;
  RoundingMode mode = RoundingMode::RNE;
  std::string name;

  static RoundingSite concrete(RoundingMode m) { return {Kind::Concrete, m, {}}; }
  static RoundingSite var(std::string n) { return {Kind::Var, RoundingMode::RNE, std::move(n)}; }
  static RoundingSite unspecified() { return {}; }

  friend bool operator==(const RoundingSite& a, const RoundingSite& b);
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

/** Immutable FPA term. */
class Term {
 public:
  enum class Kind : std::uint8_t { Literal, Var, Unary, Binary };

  static TermPtr literal(FpValue v, FpFormat fmt);
  // fp.const: the exactly rounded value of c, remembering the source rational.
  static TermPtr rounded_literal(const mpq_class& c, RoundingMode m, FpFormat fmt);
  static TermPtr var(std::string name, FpFormat fmt);
  static TermPtr unary(FpaOp op, TermPtr arg);
  // Throws SortError when the operand formats differ.
  static TermPtr binary(FpaOp op, RoundingSite rm, TermPtr lhs, TermPtr rhs);

  Kind kind() const { return kind_; }
  const FpFormat& format() const { return fmt_; }
  const FpValue& value() const { return value_; }
  const std::optional<mpq_class>& source() const { return source_; }
  RoundingMode source_mode() const { return source_mode_; }
  const std::string& name() const { return name_; }
  FpaOp op() const { return op_; }
  const RoundingSite& rm() const { return rm_; }
  const TermPtr& lhs() const { return lhs_; }
  const TermPtr& rhs() const { return rhs_; }

  bool has_unspecified_site() const { return has_unspecified_; }
  std::size_t hash() const { return hash_; }

  explicit Term(FpFormat fmt) : fmt_(std::move(fmt)) {}

 private:
  void finish();

  Kind kind_ = Kind::Literal;
  FpFormat fmt_;
  FpValue value_;
  std::optional<mpq_class> source_;
  RoundingMode source_mode_ = RoundingMode::RNE;
  std::string name_;
  FpaOp op_ = FpaOp::Neg;
  RoundingSite rm_;
  TermPtr lhs_, rhs_;
  bool has_unspecified_ = false;
  std::size_t hash_ = 0;
};

bool structurally_equal(const Term& a, const Term& b);

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/** Immutable FPA formula. And([]) is true, Or([]) is false. */
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Not, And, Or };

  // Throws SortError when the operand formats differ.
  static FormulaPtr atom(Rel rel, TermPtr lhs, TermPtr rhs);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(std::vector<FormulaPtr> fs);
  static FormulaPtr disj(std::vector<FormulaPtr> fs);

  Kind kind() const { return kind_; }
  Rel rel() const { return rel_; }
  const TermPtr& lhs() const { return lhs_; }
  const TermPtr& rhs() const { return rhs_; }
  const std::vector<FormulaPtr>& children() const { return children_; }

 private:
  Kind kind_ = Kind::And;
  Rel rel_ = Rel::Gt;
  TermPtr lhs_, rhs_;
  std::vector<FormulaPtr> children_;
};

bool structurally_equal(const Formula& a, const Formula& b);

struct Declarations {
  std::vector<std::pair<std::string, FpFormat>> fp_vars;
  std::vector<std::string> mode_vars;
};

struct Script {
  std::optional<std::string> logic;
  Declarations decls;
  std::vector<FormulaPtr> assertions;

  // Conjunction of all assertions.
  FormulaPtr formula() const { return Formula::conj(assertions); }
};

// Free variables in first-occurrence order.
std::vector<std::pair<std::string, FpFormat>> free_vars(const Formula& f);
std::vector<std::string> mode_vars(const Formula& f);
// Number of Unspecified rounding sites, counted per occurrence.
std::size_t count_unspecified_sites(const Formula& f);
std::size_t count_ops(const Formula& f);

}  // namespace fpria
