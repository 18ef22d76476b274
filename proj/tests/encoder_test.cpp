#include <gtest/gtest.h>

#include "fpria/encoder.hpp"
#include "fpria/fuzz.hpp"
#include "fpria/smt.hpp"

using namespace fpria;
using enc::EncodeOptions;
using enc::Precision;
using enc::Representation;

namespace {

const FpFormat F44 = make_format(4, 4);

FormulaPtr parse(const std::string& text) { return smt::parse_script(text).formula(); }

const char* kScaled =
    "(declare-const x (_ FloatingPoint 4 4))"
    "(assert (fp.gt (fp.mul RNE (fp.const 0.1 RNE) x) (fp #b0 #b0111 #b000)))";
const char* kProduct =
    "(declare-const x (_ FloatingPoint 4 4))(declare-const y (_ FloatingPoint 4 4))"
    "(assert (fp.gt (fp.mul RNE x y) (fp #b0 #b0111 #b000)))";
const char* kMixed =
    "(declare-const a Float32)(declare-const b Float64)"
    "(assert (and (fp.gt a (_ +zero 8 24)) (fp.gt (fp.add RNE b b) (_ +zero 11 53))))";

EncodeOptions opts(Mode m = Mode::Weak, Representation r = Representation::Datatype,
                   Precision p = Precision::Concrete) {
  EncodeOptions o;
  o.mode = m;
  o.repr = r;
  o.precision = p;
  return o;
}

bool has(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Numeral, Spellings) {
  EXPECT_EQ(enc::numeral(3), "3.0");
  EXPECT_EQ(enc::numeral(mpq_class(1, 8)), "(/ 1 8)");
  EXPECT_EQ(enc::numeral(-2), "(- 2.0)");
  EXPECT_EQ(enc::numeral(mpq_class(-1, 10)), "(- (/ 1 10))");
}

TEST(Encode, WeakDatatypeScaledComparison) {
  const std::string s = enc::encode(*parse(kScaled), opts());
  EXPECT_EQ(first_line(s), "(set-logic ALL)");
  EXPECT_TRUE(has(s, "(declare-datatype RInt ((tpl (ri.l Real) (ri.u Real) (p_nan Bool))))"));
  EXPECT_TRUE(has(s, "(declare-const x RInt)"));
  EXPECT_TRUE(has(s, "(assert (= (ri.l x) (ri.u x)))"));
  EXPECT_TRUE(has(s, "(assert (=> (p_nan x) (= x ri.nan)))"));
  EXPECT_TRUE(has(s, "(ri.gt (ri.mul (ri.of_real (/ 1 10)) x) (ri.exact 1.0))"));
  EXPECT_TRUE(has(s, "(assert (> ri.large_value (* 2.0 ri.max_value)))"));
  EXPECT_TRUE(has(s, "(define-fun ri.max_value () Real 240.0)"));
  EXPECT_EQ(s.substr(s.size() - 12), "(check-sat)\n");
}

TEST(Encode, StrongFlattenedDeclarations) {
  const std::string s = enc::encode(*parse(kScaled), opts(Mode::Strong, Representation::Flattened));
  EXPECT_EQ(first_line(s), "(set-logic QF_LRA)");
  EXPECT_TRUE(has(s, "(declare-const x.l Real)\n(declare-const x.u Real)\n(declare-const x.n Bool)"));
  EXPECT_TRUE(has(s, "(assert (<= x.l x.u))"));
  EXPECT_TRUE(has(s, "(assert (or x.n (ri.b_pinf x.u) (<= x.l (ri.r_dn x.u))))"));
  EXPECT_TRUE(has(s, "(assert (=> x.n (and (= x.l (- ri.large_value)) (= x.u ri.large_value))))"));
  EXPECT_TRUE(has(s, "(ri.mulc.l (/ 219 2560) (/ 293 2560) false x.l x.u x.n)"));
  EXPECT_FALSE(has(s, "declare-datatype"));
}

TEST(Encode, NegatedLiteralsUsePolarityOperators) {
  const std::string s = enc::encode(
      *parse("(declare-const x (_ FloatingPoint 4 4))"
             "(assert (not (fp.lt x (_ +zero 4 4))))(assert (not (fp.eq x x)))(assert (not (= x (_ -zero 4 4))))"),
      opts());
  EXPECT_TRUE(has(s, "(ri.leq ri.zero x)"));
  EXPECT_TRUE(has(s, "(ri.neq x x)"));
  EXPECT_TRUE(has(s, "(ri.nseq x ri.zero)"));
}

TEST(Encode, IdenticalSiteFreeOperandsUseSameTermEquality) {
  const std::string same = enc::encode(
      *parse("(declare-const x (_ FloatingPoint 4 4))(assert (= (fp.add RNE x x) (fp.add RNE x x)))"), opts());
  EXPECT_TRUE(has(same, "ri.seq_same"));
  const std::string unspecified = enc::encode(
      *parse("(declare-const x (_ FloatingPoint 4 4))(declare-const r RoundingMode)"
             "(assert (= (fp.add r x x) (fp.add r x x)))"),
      opts());
  EXPECT_TRUE(has(unspecified, "ri.seq_same"));
}

TEST(Encode, SharedSubtermsAreNamed) {
  const std::string s = enc::encode(
      *parse("(declare-const x (_ FloatingPoint 4 4))"
             "(assert (fp.gt (fp.mul RNE (fp.add RNE x x) (fp.add RNE x x)) x))"),
      opts());
  EXPECT_TRUE(has(s, "(define-fun ri.t1 () RInt (ri.add x x))"));
  EXPECT_TRUE(has(s, "(ri.mul ri.t1 ri.t1)"));
}

TEST(Encode, ReservedNamesAreEscaped) {
  const std::string s = enc::encode(*parse("(declare-const ri.l (_ FloatingPoint 4 4))(assert (fp.gt ri.l ri.l))"),
                                    opts());
  EXPECT_TRUE(has(s, "(declare-const v!ri.l RInt)"));
  const std::string q = enc::encode(*parse("(declare-const |a b| (_ FloatingPoint 4 4))(assert (fp.gt |a b| |a b|))"),
                                    opts(Mode::Weak, Representation::Flattened));
  EXPECT_TRUE(has(q, "(declare-const |a b.l| Real)"));
}

TEST(Encode, LogicSelection) {
  EXPECT_EQ(first_line(enc::encode(*parse(kProduct), opts(Mode::Weak, Representation::Flattened))),
            "(set-logic QF_NRA)");
  EXPECT_EQ(first_line(enc::encode(*parse(kProduct), opts())), "(set-logic ALL)");
  EXPECT_EQ(first_line(enc::encode(*parse(kScaled), opts(Mode::Weak, Representation::Flattened, Precision::Abstract))),
            "(set-logic QF_NRA)");
  EncodeOptions multi = opts(Mode::Weak, Representation::Flattened);
  EXPECT_EQ(first_line(enc::encode_multi_precision(*parse(kMixed), multi)), "(set-logic QF_LIRA)");
}

TEST(Encode, ModeCommentFollowsLogic) {
  const std::string s = enc::encode(*parse(kScaled), opts(Mode::Strong, Representation::Flattened, Precision::Abstract));
  EXPECT_EQ(s.substr(0, s.find('\n', s.find('\n') + 1)),
            "(set-logic QF_NRA)\n; mode=strong representation=flattened precision=abstract");
}

TEST(Encode, Errors) {
  EncodeOptions linear = opts(Mode::Weak, Representation::Flattened);
  linear.logic = enc::LogicHint::Linear;
  EXPECT_THROW(enc::encode(*parse(kProduct), linear), enc::EncodeError);
  EXPECT_NO_THROW(enc::encode(*parse(kScaled), linear));
  EXPECT_THROW(enc::encode(*parse(kMixed), opts()), SortError);
}

TEST(Encode, Deterministic) {
  fuzz::FormulaGenerator gen(F44, 17);
  for (int i = 0; i < 100; ++i) {
    const FormulaPtr f = gen.next();
    for (Representation r : {Representation::Datatype, Representation::Flattened}) {
      EXPECT_EQ(enc::encode(*f, opts(Mode::Strong, r)), enc::encode(*f, opts(Mode::Strong, r)));
    }
  }
}

TEST(Encode, MultiPrecisionWithOneFormatMatchesSingle) {
  const FormulaPtr f = parse(kScaled);
  EXPECT_EQ(enc::encode_multi_precision(*f, opts()), enc::encode(*f, opts()));
}

TEST(Encode, MultiPrecisionIndexesFormats) {
  const std::string s = enc::encode_multi_precision(*parse(kMixed), opts());
  EXPECT_TRUE(has(s, "(ri.add 2 b b)"));
  EXPECT_TRUE(has(s, "(define-fun ri.r_dn ((p Int) (v Real)) Real"));
}

TEST(PrecisionAssumptions, SmallStepUnderDoubleBound) {
  const enc::PrecisionStep st = enc::define_precision_assumptions(make_format(11, 53), {4, 4});
  EXPECT_EQ(st.guard, "ri.prec_4_4");
  EXPECT_EQ(st.declarations,
            "(declare-const ri.prec_4_4 Bool)\n"
            "(assert (=> ri.prec_4_4 (and (= ri.ed 8.0) (= ri.em (/ 1 512)))))\n");
  ASSERT_EQ(st.effective.size(), 1u);
  EXPECT_EQ(st.effective[0], F44);
}

TEST(PrecisionAssumptions, StepsClampToTheBound) {
  const enc::PrecisionStep st = enc::define_precision_assumptions(make_format(11, 53), {15, 113});
  EXPECT_EQ(st.effective[0], make_format(11, 53));
  const enc::PrecisionStep multi =
      enc::define_precision_assumptions(std::vector<FpFormat>{make_format(8, 24), make_format(11, 53)}, {11, 53});
  ASSERT_EQ(multi.effective.size(), 2u);
  EXPECT_EQ(multi.effective[0], make_format(8, 24));
  EXPECT_TRUE(has(multi.declarations, "ri.ed_1"));
  EXPECT_TRUE(has(multi.declarations, "ri.ed_2"));
}

TEST(IntervalOf, LiteralRules) {
  EXPECT_EQ(enc::interval_of(*Term::rounded_literal(mpq_class(1, 10), RoundingMode::RNE, F44)),
            RInterval::of_real(mpq_class(1, 10), F44));
  // A representable rounded constant is exact.
  EXPECT_EQ(enc::interval_of(*Term::rounded_literal(mpq_class(1, 2), RoundingMode::RNE, F44)),
            RInterval::point(XRat(mpq_class(1, 2))));
  EXPECT_EQ(enc::interval_of(*Term::literal(FpValue::nan(), F44)), RInterval::nan_surrogate());
  const TermPtr sum = Term::binary(FpaOp::Add, RoundingSite::unspecified(),
                                   Term::literal(FpValue::exact(1, F44), F44), Term::literal(FpValue::exact(2, F44), F44));
  EXPECT_EQ(enc::interval_of(*sum), iv_add(RInterval::point(XRat(1)), RInterval::point(XRat(2)), F44));
}
