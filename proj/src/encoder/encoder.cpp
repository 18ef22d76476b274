#include <algorithm>
#include <set>
#include <sstream>

#include "fpria/encoder.hpp"
#include "preamble.hpp"

namespace fpria::enc {

namespace {

const std::set<std::string> kReserved = {"tpl", "is_pinf", "is_ninf", "RInt", "p_nan", "true", "false"};

bool plain_symbol(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && std::string_view("~!@$%^&*_-+=<>.?/").find(c) == std::string_view::npos) {
      return false;
    }
  }
  return true;
}

std::string quoted(const std::string& s) {
  if (plain_symbol(s)) return s;
  std::string t;
  for (char c : s) {
    if (c != '|' && c != '\\') t += c;
  }
  return "|" + t + "|";
}

bool needs_of_real(const Term& t) {
  return t.source() && !(t.value().kind() != FpValue::Kind::NaN && t.value().real(t.format()) == XRat(*t.source()));
}

}  // namespace

Encoder::Encoder(EncodeOptions opts, smt::FormatTable table)
    : opts_(std::move(opts)), table_(std::move(table)), multi_(table_.formats.size() > 1) {
  if (table_.formats.empty()) throw EncodeError("empty precision table");
  if (multi_ && !opts_.multi_precision) throw SortError("several formats require the multi-precision encoder");
}

std::string Encoder::lower(const IvExpr& e) const {
  return opts_.repr == Representation::Datatype ? "(ri.l " + e.dt + ")" : e.l;
}
std::string Encoder::upper(const IvExpr& e) const {
  return opts_.repr == Representation::Datatype ? "(ri.u " + e.dt + ")" : e.u;
}
std::string Encoder::nan_flag(const IvExpr& e) const {
  return opts_.repr == Representation::Datatype ? "(p_nan " + e.dt + ")" : e.n;
}

namespace {

std::string pass(const IvExpr& e, Representation r) {
  return r == Representation::Datatype ? e.dt : e.l + " " + e.u + " " + e.n;
}

}  // namespace

std::string Encoder::prec_arg(const FpFormat& fmt) const {
  return multi_ ? std::to_string(table_.index_of(fmt)) + " " : "";
}

bool Encoder::numeral_leaf(const Term& t) const {
  if (t.kind() != Term::Kind::Literal) return false;
  if (opts_.precision == Precision::Abstract && needs_of_real(t)) return false;
  RInterval iv = interval_of(t);
  return !iv.has_nan() && iv.lo().is_finite() && iv.hi().is_finite();
}

bool Encoder::scaling_constant(const Term& t) const {
  if (opts_.repr != Representation::Flattened || opts_.precision != Precision::Concrete) return false;
  if (t.kind() != Term::Kind::Literal) return false;
  RInterval iv = interval_of(t);
  return !iv.has_nan() && iv.lo().is_finite() && iv.hi().is_finite() && iv.lo().sign() > 0;
}

void Encoder::count_uses(const Term& t) {
  auto& bucket = uses_[t.hash()];
  for (auto& c : bucket) {
    if (structurally_equal(*c.term, t)) {
      ++c.uses;
      return;
    }
  }
  bucket.push_back({std::shared_ptr<const Term>(std::shared_ptr<const Term>{}, &t), 1});
  if (t.lhs()) count_uses(*t.lhs());
  if (t.rhs()) count_uses(*t.rhs());
}

IvExpr Encoder::name_node(const std::string& call_dt, const std::string& call_l, const std::string& call_u,
                          const std::string& call_n, bool force) {
  const bool dt = opts_.repr == Representation::Datatype;
  if (dt && !force) return {call_dt, {}, {}, {}};
  const std::string name = "ri.t" + std::to_string(next_id_++);
  if (dt) {
    decls_.push_back("(define-fun " + name + " () RInt " + call_dt + ")");
    return {name, {}, {}, {}};
  }
  decls_.push_back("(define-fun " + name + ".l () Real " + call_l + ")");
  decls_.push_back("(define-fun " + name + ".u () Real " + call_u + ")");
  decls_.push_back("(define-fun " + name + ".n () Bool " + call_n + ")");
  return {{}, name + ".l", name + ".u", name + ".n"};
}

IvExpr Encoder::literal(const Term& t) {
  const bool dt = opts_.repr == Representation::Datatype;
  const FpValue& v = t.value();
  const std::string L = "ri.large_value", NL = "(- ri.large_value)";
  if (needs_of_real(t)) {
    const std::string c = numeral(*t.source());
    const std::string p = prec_arg(t.format());
    if (dt) return {"(ri.of_real " + p + c + ")", {}, {}, {}};
    if (opts_.precision == Precision::Abstract) {
      return {{}, "(ri.r_dn " + p + c + ")", "(ri.r_up " + p + c + ")", "false"};
    }
    auto bound = [&](const XRat& b) { return b.is_pos_inf() ? L : b.is_neg_inf() ? NL : numeral(b.value()); };
    RInterval iv = RInterval::of_real(*t.source(), t.format());
    return {{}, bound(iv.lo()), bound(iv.hi()), "false"};
  }
  switch (v.kind()) {
    case FpValue::Kind::NaN:
      return dt ? IvExpr{"ri.nan_full", {}, {}, {}} : IvExpr{{}, NL, L, "true"};
    case FpValue::Kind::Inf: {
      const std::string b = v.negative() ? NL : L;
      return dt ? IvExpr{"(ri.exact " + b + ")", {}, {}, {}} : IvExpr{{}, b, b, "false"};
    }
    case FpValue::Kind::Zero:
      return dt ? IvExpr{"ri.zero", {}, {}, {}} : IvExpr{{}, "0.0", "0.0", "false"};
    case FpValue::Kind::Finite: break;
  }
  const std::string c = numeral(v.real(t.format()).value());
  return dt ? IvExpr{"(ri.exact " + c + ")", {}, {}, {}} : IvExpr{{}, c, c, "false"};
}

IvExpr Encoder::variable(const Term& t) {
  const bool dt = opts_.repr == Representation::Datatype;
  auto it = var_names_.find(t.name());
  std::string base;
  if (it != var_names_.end()) {
    base = it->second;
  } else {
    base = t.name();
    if (kReserved.count(base) || base.rfind("ri.", 0) == 0) base = "v!" + base;
    var_names_[t.name()] = base;
    const std::string L = "ri.large_value", NL = "(- ri.large_value)";
    std::string l, u, n;
    if (dt) {
      const std::string x = quoted(base);
      decls_.push_back("(declare-const " + x + " RInt)");
      l = "(ri.l " + x + ")";
      u = "(ri.u " + x + ")";
      n = "(p_nan " + x + ")";
    } else {
      l = quoted(base + ".l");
      u = quoted(base + ".u");
      n = quoted(base + ".n");
      decls_.push_back("(declare-const " + l + " Real)");
      decls_.push_back("(declare-const " + u + " Real)");
      decls_.push_back("(declare-const " + n + " Bool)");
    }
    if (opts_.mode == Mode::Weak) {
      decls_.push_back("(assert (= " + l + " " + u + "))");
      decls_.push_back(dt ? "(assert (=> " + n + " (= " + quoted(base) + " ri.nan)))"
                          : "(assert (=> " + n + " (and (= " + l + " " + NL + ") (= " + u + " " + NL + "))))");
    } else {
      decls_.push_back("(assert (<= " + l + " " + u + "))");
      decls_.push_back("(assert (or " + n + " (ri.b_pinf " + u + ") (<= " + l + " (ri.r_dn " + prec_arg(t.format()) + u +
                       "))))");
      decls_.push_back(dt ? "(assert (=> " + n + " (= " + quoted(base) + " ri.nan_full)))"
                          : "(assert (=> " + n + " (and (= " + l + " " + NL + ") (= " + u + " " + L + "))))");
    }
  }
  if (dt) return {quoted(base), {}, {}, {}};
  return {{}, quoted(base + ".l"), quoted(base + ".u"), quoted(base + ".n")};
}

IvExpr Encoder::emit(const TermPtr& tp) {
  const Term& t = *tp;
  auto& bucket = memo_[t.hash()];
  for (const auto& e : bucket) {
    if (structurally_equal(*e.term, t)) return e.expr;
  }
  IvExpr out;
  const Representation r = opts_.repr;
  switch (t.kind()) {
    case Term::Kind::Literal: out = literal(t); break;
    case Term::Kind::Var: out = variable(t); break;
    case Term::Kind::Unary:
    case Term::Kind::Binary: {
      std::string args;
      std::string f = "ri." + std::string(op_name(t.op()));
      if (t.kind() == Term::Kind::Unary) {
        args = pass(emit(t.lhs()), r);
      } else {
        const IvExpr a = emit(t.lhs()), b = emit(t.rhs());
        args = prec_arg(t.format()) + pass(a, r) + " " + pass(b, r);
        if (opts_.precision == Precision::Abstract) nonlinear_ = true;
        if (t.op() == FpaOp::Mul && !numeral_leaf(*t.lhs()) && !numeral_leaf(*t.rhs())) nonlinear_ = true;
        if (t.op() == FpaOp::Div && !numeral_leaf(*t.rhs())) nonlinear_ = true;
        if (t.op() == FpaOp::Mul && scaling_constant(*t.lhs())) {
          f = "ri.mulc";
        } else if (t.op() == FpaOp::Mul && scaling_constant(*t.rhs())) {
          f = "ri.mulc";
          args = prec_arg(t.format()) + pass(b, r) + " " + pass(a, r);
        } else if (t.op() == FpaOp::Div && scaling_constant(*t.rhs())) {
          f = "ri.divc";
          args = prec_arg(t.format()) + pass(b, r) + " " + pass(a, r);
        }
      }
      int uses = 0;
      for (const auto& c : uses_[t.hash()]) {
        if (structurally_equal(*c.term, t)) uses = c.uses;
      }
      out = name_node("(" + f + " " + args + ")", "(" + f + ".l " + args + ")", "(" + f + ".u " + args + ")",
                      "(" + f + ".n " + args + ")", uses != 1);
      break;
    }
  }
  memo_[t.hash()].push_back({tp, out});
  return out;
}

IvExpr Encoder::term(const TermPtr& t) {
  count_uses(*t);
  return emit(t);
}

std::string Encoder::comparison(const Formula& atom, bool negative) {
  const IvExpr a = emit(atom.lhs());
  const IvExpr b = emit(atom.rhs());
  std::string f;
  switch (atom.rel()) {
    case Rel::Gt: f = negative ? "ri.leq" : "ri.gt"; break;
    case Rel::Ge: f = negative ? "ri.lt" : "ri.geq"; break;
    case Rel::FpEq: f = negative ? "ri.neq" : "ri.eq"; break;
    case Rel::SeqEq: {
      const bool same = structurally_equal(*atom.lhs(), *atom.rhs()) && !atom.lhs()->has_unspecified_site();
      f = negative ? "ri.nseq" : (same ? "ri.seq_same" : "ri.seq");
      break;
    }
  }
  return "(" + f + " " + pass(a, opts_.repr) + " " + pass(b, opts_.repr) + ")";
}

std::string Encoder::formula(const FormulaPtr& nnf) {
  struct Rec {
    Encoder& e;
    void count(const Formula& f) {
      if (f.kind() == Formula::Kind::Atom) {
        e.count_uses(*f.lhs());
        e.count_uses(*f.rhs());
        return;
      }
      for (const auto& c : f.children()) count(*c);
    }
    std::string emit(const Formula& f) {
      switch (f.kind()) {
        case Formula::Kind::Atom: return e.comparison(f, false);
        case Formula::Kind::Not:
          if (f.children()[0]->kind() != Formula::Kind::Atom) throw EncodeError("formula is not in negation normal form");
          return e.comparison(*f.children()[0], true);
        case Formula::Kind::And:
        case Formula::Kind::Or: break;
      }
      const bool conj = f.kind() == Formula::Kind::And;
      if (f.children().empty()) return conj ? "true" : "false";
      if (f.children().size() == 1) return emit(*f.children()[0]);
      std::string s = conj ? "(and" : "(or";
      for (const auto& c : f.children()) s += " " + emit(*c);
      return s + ")";
    }
  } rec{*this};
  rec.count(*nnf);
  return rec.emit(*nnf);
}

void Encoder::assert_expr(const std::string& e) { asserts_.push_back("(assert " + e + ")"); }

std::string Encoder::logic() const {
  if (opts_.repr == Representation::Datatype) return "ALL";
  const bool nl = nonlinear_ || opts_.precision == Precision::Abstract || opts_.logic == LogicHint::Nonlinear;
  if (multi_) return nl ? "QF_NIRA" : "QF_LIRA";
  return nl ? "QF_NRA" : "QF_LRA";
}

std::string Encoder::preamble() const {
  detail::PreambleSpec spec{opts_.repr, opts_.mode, multi_, opts_.precision == Precision::Abstract,
                            opts_.zero_sign_guard, table_.formats};
  return detail::build_preamble(spec);
}

std::string Encoder::definitions() const {
  std::ostringstream out;
  out << preamble();
  for (const auto& d : decls_) out << d << "\n";
  for (const auto& a : asserts_) out << a << "\n";
  return out.str();
}

std::string Encoder::script(bool check_sat) const {
  std::ostringstream out;
  out << "(set-logic " << logic() << ")\n";
  out << "; mode=" << mode_name(opts_.mode)
      << " representation=" << (opts_.repr == Representation::Datatype ? "datatype" : "flattened")
      << " precision=" << (opts_.precision == Precision::Concrete ? "concrete" : "abstract") << "\n";
  out << definitions();
  if (check_sat) out << "(check-sat)\n";
  return out.str();
}

std::string encode(const Formula& phi, EncodeOptions opts) {
  auto root = std::make_shared<Formula>(phi);
  smt::FormatTable table;
  if (opts.formats.empty()) {
    table = smt::check_sorts(*root, opts.multi_precision);
  } else {
    std::set<FpFormat> s(opts.formats.begin(), opts.formats.end());
    table.formats.assign(s.begin(), s.end());
  }
  const bool check = opts.check_sat;
  const LogicHint hint = opts.logic;
  Encoder enc(std::move(opts), std::move(table));
  enc.assert_expr(enc.formula(smt::to_nnf(root)));
  if (hint == LogicHint::Linear && (enc.nonlinear() || enc.options().precision == Precision::Abstract)) {
    throw EncodeError("nonlinear content (variable products, variable divisors or symbolic precision) with a linear logic hint");
  }
  return enc.script(check);
}

std::string encode_multi_precision(const Formula& phi, EncodeOptions opts) {
  opts.multi_precision = true;
  return encode(phi, std::move(opts));
}

PrecisionStep define_precision_assumptions(const FpFormat& bound, std::pair<int, int> step) {
  return define_precision_assumptions(std::vector<FpFormat>{bound}, step);
}

PrecisionStep define_precision_assumptions(const std::vector<FpFormat>& bounds, std::pair<int, int> step) {
  PrecisionStep ps;
  ps.eb = step.first;
  ps.sb = step.second;
  ps.guard = "ri.prec_" + std::to_string(step.first) + "_" + std::to_string(step.second);
  std::set<FpFormat> sorted(bounds.begin(), bounds.end());
  const bool multi = sorted.size() > 1;
  std::string conj;
  int i = 1;
  for (const FpFormat& b : sorted) {
    FpFormat eff = make_format(std::min(b.eb(), step.first), std::min(b.sb(), step.second));
    ps.effective.push_back(eff);
    const std::string sfx = multi ? "_" + std::to_string(i) : "";
    conj += " (= ri.ed" + sfx + " " + numeral(eff.ed()) + ") (= ri.em" + sfx + " " + numeral(eff.em()) + ")";
    ++i;
  }
  ps.declarations = "(declare-const " + ps.guard + " Bool)\n(assert (=> " + ps.guard + " (and" + conj + ")))\n";
  return ps;
}

RInterval interval_of(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Literal:
      if (needs_of_real(t)) return RInterval::of_real(*t.source(), t.format());
      return RInterval::of_value(t.value().value(t.format()));
    case Term::Kind::Var:
      throw std::invalid_argument("interval_of: variable '" + t.name() + "' in a ground term");
    case Term::Kind::Unary:
      return iv_apply(t.op(), interval_of(*t.lhs()), RInterval::point(XRat(0)), t.format());
    case Term::Kind::Binary:
      return iv_apply(t.op(), interval_of(*t.lhs()), interval_of(*t.rhs()), t.format());
  }
  throw std::logic_error("unknown term kind");
}

}  // namespace fpria::enc
