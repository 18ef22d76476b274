#include <gtest/gtest.h>

#include "fpria/checks.hpp"
#include "fpria/fuzz.hpp"
#include "fpria/oracle.hpp"
#include "fpria/smt.hpp"

using namespace fpria;

namespace {

const FpFormat F44 = make_format(4, 4);

FormulaPtr parse(const std::string& body, const std::string& sort = "(_ FloatingPoint 4 4)") {
  return smt::parse_script("(declare-const x " + sort + ")(declare-const y " + sort + ")" + body).formula();
}

const char* kPhi = "(assert (fp.gt x (_ +zero 4 4)))(assert (fp.gt (fp.neg x) (_ +zero 4 4)))";
const char* kPhiPrime = "(assert (not (fp.gt x (_ +zero 4 4))))(assert (not (fp.gt (fp.neg x) (_ +zero 4 4))))";

}  // namespace

TEST(Eval, WorkedFormulas) {
  const FormulaPtr phi = parse(kPhi), phi2 = parse(kPhiPrime);
  for (const FpValue& v : enumerate_fp(F44)) {
    EXPECT_FALSE(fp_eval_formula(*phi, {{"x", v}}, {}));
  }
  EXPECT_TRUE(fp_eval_formula(*phi2, {{"x", FpValue::zero(false)}}, {}));
  EXPECT_TRUE(fp_eval_formula(*phi2, {{"x", FpValue::nan()}}, {}));
  EXPECT_FALSE(fp_eval_formula(*phi2, {{"x", FpValue::exact(1, F44)}}, {}));
  EXPECT_TRUE(fp_eval_formula(*parse("(assert (= x x))"), {{"x", FpValue::nan()}}, {}));
  EXPECT_FALSE(fp_eval_formula(*parse("(assert (fp.eq x x))"), {{"x", FpValue::nan()}}, {}));
}

TEST(Eval, MissingBindingsAreErrors) {
  EXPECT_THROW(fp_eval_formula(*parse("(assert (fp.gt x y))"), {{"x", FpValue()}}, {}), std::invalid_argument);
  const FormulaPtr site = parse("(declare-const r RoundingMode)(assert (fp.gt (fp.add r x x) x))");
  EXPECT_THROW(fp_eval_formula(*site, {{"x", FpValue()}}, {}), std::invalid_argument);
  ModeAssignment m;
  m.vars["r"] = RoundingMode::RTP;
  EXPECT_FALSE(fp_eval_formula(*site, {{"x", FpValue()}}, m));
}

TEST(BruteForce, WorkedExamples) {
  EXPECT_EQ(brute_force_check(*parse(kPhi), F44), OracleVerdict::Unsat);
  const BruteForceResult r = brute_force_solve(*parse(kPhiPrime), F44);
  ASSERT_EQ(r.verdict, OracleVerdict::Sat);
  const FpValue& w = r.witness.at("x");
  EXPECT_TRUE(w.is_zero() || w.is_nan());
  EXPECT_EQ(brute_force_check(*parse("(assert (= x (_ NaN 4 4)))"), F44), OracleVerdict::Sat);
  const BruteForceResult gt = brute_force_solve(*parse("(assert (fp.gt x (fp #b0 #b0111 #b000)))"), F44);
  ASSERT_EQ(gt.verdict, OracleVerdict::Sat);
  EXPECT_TRUE(fp_gt(gt.witness.at("x"), FpValue::exact(1, F44), F44));
}

TEST(BruteForce, UnspecifiedSitesTakeEveryMode) {
  // x + y rounds to 1 + 1/8 or 1 + 2/8 depending on the mode (ulp at 1 is 1/8).
  const char* body =
      "(assert (= x (fp #b0 #b0111 #b000)))(assert (= y ((_ fp.const 4 4) (/ 1 16) RNE)))"
      "(assert (fp.gt (fp.add RTP x y) (fp #b0 #b0111 #b000)))";
  EXPECT_EQ(brute_force_check(*parse(body), F44), OracleVerdict::Sat);
  const char* rtz =
      "(assert (= x (fp #b0 #b0111 #b000)))(assert (fp.gt (fp.add RTZ x ((_ fp.const 4 4) (/ 1 16) RNE)) x))";
  EXPECT_EQ(brute_force_check(*parse(rtz), F44), OracleVerdict::Unsat);
}

TEST(BruteForce, ExhaustionGuard) {
  EXPECT_THROW(brute_force_check(*parse("(assert (fp.gt x y))", "Float32"), make_format(8, 24)), std::length_error);
}

TEST(BruteForce, NnfPreservesVerdicts) {
  fuzz::FormulaGenerator gen(F44, 21, {2, 3, 3, 0.6});
  for (int i = 0; i < 60; ++i) {
    const FormulaPtr f = Formula::negation(gen.next());
    EXPECT_EQ(brute_force_check(*f, F44), brute_force_check(*smt::to_nnf(f), F44)) << smt::print_formula(*f);
  }
}

TEST(Checks, RoundingEnclosureSmallFormats) {
  for (const FpFormat& f : {make_format(2, 2), make_format(3, 3), F44}) {
    const checks::Report r = checks::rounding_enclosure(f, 2000, 1);
    EXPECT_TRUE(r.ok()) << r.first_violation;
    EXPECT_GT(r.cases, 2000u);
  }
}

TEST(Checks, OperationEnclosureSmallFormats) {
  for (const FpFormat& f : {make_format(2, 2), make_format(3, 3), make_format(3, 4)}) {
    const checks::Report r = checks::operation_enclosure(f);
    EXPECT_TRUE(r.ok()) << f.name() << " " << r.first_violation;
  }
}

TEST(Checks, ComparisonTableSmallFormats) {
  for (const FpFormat& f : {make_format(2, 2), make_format(3, 3)}) {
    const checks::Report r = checks::comparison_table(f);
    EXPECT_TRUE(r.ok()) << f.name() << " " << r.first_violation;
  }
}

TEST(Checks, ComparisonTableDetectsUnguardedSignedZero) {
  const checks::Report r = checks::comparison_table(make_format(2, 2), {.zero_sign_guard = false});
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.first_violation.find("seq "), std::string::npos) << r.first_violation;
}

TEST(Fuzz, GeneratorRespectsLimits) {
  fuzz::FormulaGenerator gen(F44, 4);
  for (int i = 0; i < 500; ++i) {
    const FormulaPtr f = gen.next();
    EXPECT_LE(free_vars(*f).size(), 3u);
    EXPECT_LE(count_ops(*f), 4u);
  }
  fuzz::FormulaGenerator same(F44, 4), other(F44, 4);
  EXPECT_EQ(smt::print_formula(*same.next()), smt::print_formula(*other.next()));
  EXPECT_TRUE(free_vars(*Formula::atom(Rel::Gt, gen.ground_term(4), gen.ground_term(4))).empty());
}
