#include <gtest/gtest.h>

#include "fpria/fuzz.hpp"
#include "fpria/smt.hpp"

using namespace fpria;
using smt::parse_script;

namespace {

const FpFormat F44 = make_format(4, 4);

FormulaPtr only(const Script& s) {
  EXPECT_EQ(s.assertions.size(), 1u);
  return s.assertions.at(0);
}

std::string parse_error(const std::string& text) {
  try {
    parse_script(text, "in.smt2");
  } catch (const ParseError& e) {
    return e.what();
  } catch (const SortError& e) {
    return std::string("sort: ") + e.what();
  }
  return "";
}

bool nnf_shape(const Formula& f, bool under_not = false) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Not:
      return !under_not && f.children()[0]->kind() == Formula::Kind::Atom;
    default:
      for (const auto& c : f.children()) {
        if (!nnf_shape(*c)) return false;
      }
      return true;
  }
}

}  // namespace

TEST(SExpr, ReadsAtomsAndPositions) {
  const auto es = read_sexprs("(a #b101 |q x| 1.5 ; note\n :kw \"s\")", "f");
  ASSERT_EQ(es.size(), 1u);
  const SExpr& l = es[0];
  ASSERT_EQ(l.items.size(), 6u);
  EXPECT_EQ(l.items[1].kind, SExpr::Kind::Binary);
  EXPECT_EQ(l.items[1].text, "101");
  EXPECT_EQ(l.items[2].text, "q x");
  EXPECT_EQ(l.items[3].kind, SExpr::Kind::Decimal);
  EXPECT_EQ(l.items[4].kind, SExpr::Kind::Keyword);
  EXPECT_EQ(l.items[4].line, 2);
  EXPECT_THROW(read_sexprs("(a (b)", "f"), ParseError);
}

TEST(Parser, LessThanSwapsOperands) {
  const Script s = parse_script(
      "(declare-const a Float32)(declare-const b Float32)(assert (fp.lt a b))");
  const FormulaPtr f = only(s);
  ASSERT_EQ(f->kind(), Formula::Kind::Atom);
  EXPECT_EQ(f->rel(), Rel::Gt);
  EXPECT_EQ(f->lhs()->name(), "b");
  EXPECT_EQ(f->rhs()->name(), "a");
}

TEST(Parser, RoundedConstantTimesVariable) {
  const Script s = parse_script(
      "(set-logic QF_FP)(declare-const x (_ FloatingPoint 4 4))"
      "(assert (fp.gt (fp.mul RNE (fp.const 0.1 RNE) x) (fp #b0 #b0111 #b000)))");
  const FormulaPtr f = only(s);
  EXPECT_EQ(f->rel(), Rel::Gt);
  const Term& mul = *f->lhs();
  ASSERT_EQ(mul.kind(), Term::Kind::Binary);
  EXPECT_EQ(mul.op(), FpaOp::Mul);
  EXPECT_EQ(mul.rm().kind, RoundingSite::Kind::Concrete);
  EXPECT_EQ(mul.lhs()->value().real(F44), XRat(mpq_class(13, 128)));
  EXPECT_EQ(*mul.lhs()->source(), mpq_class(1, 10));
  EXPECT_EQ(mul.rhs()->name(), "x");
  EXPECT_EQ(f->rhs()->value().real(F44), XRat(1));
}

TEST(Parser, SpecialLiteralsAndModes) {
  const Script s = parse_script(
      "(declare-const r RoundingMode)(declare-const x (_ FloatingPoint 4 4))"
      "(define-fun two () (_ FloatingPoint 4 4) (fp.add roundTowardZero x x))"
      "(assert (or (= two (_ NaN 4 4)) (fp.leq (_ -oo 4 4) (fp.div r x (_ -zero 4 4)))))"
      "(check-sat)(exit)");
  EXPECT_EQ(s.decls.mode_vars, std::vector<std::string>{"r"});
  const FormulaPtr f = only(s);
  ASSERT_EQ(f->kind(), Formula::Kind::Or);
  const Formula& eq = *f->children()[0];
  EXPECT_EQ(eq.rel(), Rel::SeqEq);
  EXPECT_EQ(eq.lhs()->rm().mode, RoundingMode::RTZ);
  EXPECT_TRUE(eq.rhs()->value().is_nan());
  const Formula& ge = *f->children()[1];
  EXPECT_EQ(ge.rel(), Rel::Ge);
  EXPECT_EQ(ge.lhs()->rm().kind, RoundingSite::Kind::Var);
}

TEST(Parser, RejectsUnsupportedConstructs) {
  EXPECT_NE(parse_error("(declare-const x Float64)(assert (fp.gt x ((_ to_fp 11 53) RNE 0.0)))").find("to_fp"),
            std::string::npos);
  EXPECT_NE(parse_error("(declare-const x Float64)(assert (fp.gt (fp.fma RNE x x x) x))").find("fp.fma"),
            std::string::npos);
  EXPECT_NE(parse_error("(declare-const x Float64)(assert (fp.gt (ite true x x) x))").find("ite"), std::string::npos);
}

TEST(Parser, ReportsPositions) {
  const std::string e = parse_error("(declare-const x Float64)\n(assert (fp.gt x y))");
  EXPECT_EQ(e.rfind("in.smt2:2:", 0), 0u) << e;
}

TEST(Parser, RejectsCrossFormatOperations) {
  const std::string e = parse_error("(declare-const a Float32)(declare-const b Float64)(assert (fp.gt (fp.add RNE a b) b))");
  EXPECT_FALSE(e.empty());
}

TEST(Sorts, TablesAndAmbientFormat) {
  const Script one = parse_script("(declare-const x Float64)(assert (fp.gt x x))");
  EXPECT_EQ(smt::check_sorts(one).ambient(), make_format(11, 53));
  const Script two = parse_script(
      "(declare-const a Float32)(declare-const b Float64)(assert (and (fp.gt a a) (fp.gt b b)))");
  EXPECT_THROW(smt::check_sorts(two), SortError);
  const smt::FormatTable t = smt::check_sorts(two, true);
  ASSERT_EQ(t.formats.size(), 2u);
  EXPECT_EQ(t.formats[0], make_format(8, 24));
  EXPECT_EQ(t.formats[1], make_format(11, 53));
  EXPECT_EQ(t.index_of(make_format(11, 53)), 2);
  EXPECT_THROW(t.index_of(F44), std::out_of_range);
}

TEST(Printer, RoundTripsRandomFormulas) {
  fuzz::FormulaGenerator gen(F44, 3);
  for (int i = 0; i < 300; ++i) {
    Script s;
    s.logic = "QF_FP";
    const FormulaPtr f = gen.next();
    for (const auto& v : free_vars(*f)) s.decls.fp_vars.push_back(v);
    s.assertions.push_back(f);
    const std::string text = smt::print_script(s);
    const Script back = parse_script(text);
    ASSERT_EQ(back.assertions.size(), 1u) << text;
    // Unspecified sites come back as named mode constants, so compare the printed forms.
    EXPECT_EQ(smt::print_script(back), text);
  }
}

TEST(Printer, LiteralSpellings) {
  EXPECT_EQ(smt::print_term(*Term::literal(FpValue::exact(1, F44), F44)), "(fp #b0 #b0111 #b000)");
  EXPECT_EQ(smt::print_term(*Term::literal(FpValue::inf(true), F44)), "(_ -oo 4 4)");
  EXPECT_EQ(smt::print_term(*Term::rounded_literal(mpq_class(1, 10), RoundingMode::RNE, F44)),
            "((_ fp.const 4 4) 0.1 RNE)");
  EXPECT_EQ(smt::print_term(*Term::rounded_literal(mpq_class(10, 30), RoundingMode::RTP, F44)),
            "((_ fp.const 4 4) (/ 1 3) RTP)");
  EXPECT_EQ(smt::sort_name(make_format(8, 24)), "Float32");
}

TEST(Nnf, DeMorganAndInvolution) {
  const TermPtr a = Term::var("a", F44), b = Term::var("b", F44), c = Term::var("c", F44), d = Term::var("d", F44);
  const FormulaPtr ab = Formula::atom(Rel::Gt, a, b), cd = Formula::atom(Rel::FpEq, c, d);

  const FormulaPtr r1 = smt::to_nnf(Formula::negation(Formula::disj({ab, cd})));
  EXPECT_TRUE(structurally_equal(*r1, *Formula::conj({Formula::negation(ab), Formula::negation(cd)})));

  const FormulaPtr r2 = smt::to_nnf(Formula::negation(Formula::negation(ab)));
  EXPECT_TRUE(structurally_equal(*r2, *ab));

  const FormulaPtr r3 = smt::to_nnf(Formula::negation(Formula::conj({ab, Formula::negation(cd)})));
  EXPECT_TRUE(structurally_equal(*r3, *Formula::disj({Formula::negation(ab), cd})));
}

TEST(Nnf, ShapeOnRandomFormulas) {
  fuzz::FormulaGenerator gen(F44, 9);
  for (int i = 0; i < 500; ++i) {
    const FormulaPtr f = Formula::negation(Formula::disj({gen.next(), Formula::negation(gen.next())}));
    const FormulaPtr n = smt::to_nnf(f);
    EXPECT_TRUE(smt::is_nnf(*n));
    EXPECT_TRUE(nnf_shape(*n));
    EXPECT_FALSE(smt::is_nnf(*f));
  }
}
