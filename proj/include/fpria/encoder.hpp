#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fpria/ast.hpp"
#include "fpria/interval.hpp"
#include "fpria/smt.hpp"

namespace fpria::enc {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Representation { Datatype, Flattened };
enum class Precision { Concrete, Abstract };
enum class LogicHint { Auto, Linear, Nonlinear };

struct EncodeOptions {
  Mode mode = Mode::Weak;
  Representation repr = Representation::Datatype;
  Precision precision = Precision::Concrete;
  // Precision table; derived from the formula when empty.
  std::vector<FpFormat> formats;
  // Permit several formats (one precision index per format).
  bool multi_precision = false;
  LogicHint logic = LogicHint::Auto;
  bool zero_sign_guard = true;
  bool check_sat = true;
};

// SMT-LIB Real numeral: "3.0", "(/ 1 8)", "(- 2.0)".
std::string numeral(const mpq_class& q);

/** Interval-valued SMT expression: one RInt term or three component terms. */
struct IvExpr {
  std::string dt;
  std::string l, u, n;
};

/**
 * Incremental script builder. Terms are shared structurally; repeated
 * subterms are named with 0-ary definitions.
 */
class Encoder {
 public:
  Encoder(EncodeOptions opts, smt::FormatTable table);

  // Encodes an NNF formula into a Boolean expression (declaring variables
  // and node definitions on the way).
  std::string formula(const FormulaPtr& nnf);
  // Encodes a term and returns its component accessors.
  IvExpr term(const TermPtr& t);
  std::string lower(const IvExpr& e) const;
  std::string upper(const IvExpr& e) const;
  std::string nan_flag(const IvExpr& e) const;

  // Adds an assertion to the body.
  void assert_expr(const std::string& e);
  std::string logic() const;
  bool nonlinear() const { return nonlinear_; }
  // Full script: header, logic, preamble, declarations, assertions.
  std::string script(bool check_sat) const;
  // Everything but the set-logic line and check-sat (for sessions).
  std::string definitions() const;

  const EncodeOptions& options() const { return opts_; }
  const smt::FormatTable& table() const { return table_; }

 private:
  std::string preamble() const;
  std::string prec_arg(const FpFormat& fmt) const;
  IvExpr emit(const TermPtr& t);
  IvExpr literal(const Term& t);
  IvExpr variable(const Term& t);
  IvExpr name_node(const std::string& call_dt, const std::string& call_l, const std::string& call_u,
                   const std::string& call_n, bool force);
  std::string comparison(const Formula& atom, bool negative);
  void count_uses(const Term& t);
  bool numeral_leaf(const Term& t) const;
  // Literal with positive finite NaN-free bounds, scaled via ri.mulc/ri.divc.
  bool scaling_constant(const Term& t) const;

  struct Entry {
    TermPtr term;
    IvExpr expr;
  };
  struct Count {
    TermPtr term;
    int uses;
  };

  EncodeOptions opts_;
  smt::FormatTable table_;
  bool multi_;
  bool nonlinear_ = false;
  int next_id_ = 1;
  std::unordered_map<std::size_t, std::vector<Entry>> memo_;
  std::unordered_map<std::size_t, std::vector<Count>> uses_;
  std::map<std::string, std::string> var_names_;
  std::vector<std::string> decls_;
  std::vector<std::string> asserts_;
};

// Whole-script encoding (NNF applied internally). Throws EncodeError or SortError.
std::string encode(const Formula& phi, EncodeOptions opts);
// As encode, with one precision index per format of the formula.
std::string encode_multi_precision(const Formula& phi, EncodeOptions opts);

/** Assumption guard that fixes the symbolic error parameters for one ladder step. */
struct PrecisionStep {
  int eb, sb;               // requested ladder step
  std::string guard;        // Boolean constant to assume
  std::string declarations; // declare-const + guarded assertion
  std::vector<FpFormat> effective;  // clamped format per precision index
};

PrecisionStep define_precision_assumptions(const FpFormat& bound, std::pair<int, int> step);
PrecisionStep define_precision_assumptions(const std::vector<FpFormat>& bounds, std::pair<int, int> step);

// Interval semantics of a term under the same literal rules as the encoder.
RInterval interval_of(const Term& t);

}  // namespace fpria::enc
