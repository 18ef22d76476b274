#include "preamble.hpp"

#include <algorithm>
#include <sstream>

namespace fpria::enc::detail {

namespace {

const std::string kL = "ri.large_value";
const std::string kNL = "(- ri.large_value)";

class Gen {
 public:
  explicit Gen(const PreambleSpec& s) : s_(s) {}

  std::string run() {
    constants();
    rounding();
    bounds();
    if (dt()) constructors();
    arithmetic();
    comparisons();
    return out_.str();
  }

 private:
  bool dt() const { return s_.repr == Representation::Datatype; }
  std::string p_arg() const { return s_.multi ? "p " : ""; }
  std::string p_decl() const { return s_.multi ? "(p Int) " : ""; }

  std::string decl(const std::string& x) const {
    return dt() ? "(" + x + " RInt)" : "(" + x + ".l Real) (" + x + ".u Real) (" + x + ".n Bool)";
  }
  std::string pass(const std::string& x) const { return dt() ? x : x + ".l " + x + ".u " + x + ".n"; }
  std::string lo(const std::string& x) const { return dt() ? "(ri.l " + x + ")" : x + ".l"; }
  std::string hi(const std::string& x) const { return dt() ? "(ri.u " + x + ")" : x + ".u"; }
  std::string nan(const std::string& x) const { return dt() ? "(p_nan " + x + ")" : x + ".n"; }

  // Interval-valued call; yields an expression usable with the accessors below.
  IvExpr call(const std::string& f, const std::string& args) const {
    if (dt()) return {"(" + f + " " + args + ")", {}, {}, {}};
    return {{}, "(" + f + ".l " + args + ")", "(" + f + ".u " + args + ")", "(" + f + ".n " + args + ")"};
  }
  std::string lo(const IvExpr& e) const { return dt() ? "(ri.l " + e.dt + ")" : e.l; }
  std::string hi(const IvExpr& e) const { return dt() ? "(ri.u " + e.dt + ")" : e.u; }
  std::string nan(const IvExpr& e) const { return dt() ? "(p_nan " + e.dt + ")" : e.n; }
  std::string pass(const IvExpr& e) const { return dt() ? e.dt : e.l + " " + e.u + " " + e.n; }

  static std::string wrap(const std::vector<std::string>& lets, const std::string& body) {
    std::string s = body;
    for (auto it = lets.rbegin(); it != lets.rend(); ++it) s = "(let (" + *it + ") " + s + ")";
    return s;
  }

  void iv_fun(const std::string& name, const std::string& params, const std::vector<std::string>& lets,
              const std::string& l, const std::string& u, const std::string& n) {
    if (dt()) {
      out_ << "(define-fun " << name << " (" << params << ") RInt\n  " << wrap(lets, "(tpl " + l + " " + u + " " + n + ")")
           << ")\n";
      return;
    }
    out_ << "(define-fun " << name << ".l (" << params << ") Real\n  " << wrap(lets, l) << ")\n";
    out_ << "(define-fun " << name << ".u (" << params << ") Real\n  " << wrap(lets, u) << ")\n";
    out_ << "(define-fun " << name << ".n (" << params << ") Bool\n  " << wrap(lets, n) << ")\n";
  }

  void fun(const std::string& name, const std::string& params, const std::string& sort, const std::string& body) {
    out_ << "(define-fun " << name << " (" << params << ") " << sort << "\n  " << body << ")\n";
  }

  void constants() {
    if (dt()) out_ << "(declare-datatype RInt ((tpl (ri.l Real) (ri.u Real) (p_nan Bool))))\n";
    mpq_class maxv = 0;
    for (const auto& f : s_.formats) maxv = std::max(maxv, f.max_fp());
    out_ << "(define-fun ri.max_value () Real " << numeral(maxv) << ")\n";
    out_ << "(declare-const ri.large_value Real)\n";
    out_ << "(assert (> ri.large_value (* 2.0 ri.max_value)))\n";
  }

  void rounding_pair(const std::string& sfx, const FpFormat& fmt) {
    if (!sfx.empty()) out_ << "(define-fun ri.max_value" << sfx << " () Real " << numeral(fmt.max_fp()) << ")\n";
    if (s_.abstract) {
      out_ << "(declare-const ri.ed" << sfx << " Real)\n(declare-const ri.em" << sfx << " Real)\n";
    } else {
      out_ << "(define-fun ri.ed" << sfx << " () Real " << numeral(fmt.ed()) << ")\n";
      out_ << "(define-fun ri.em" << sfx << " () Real " << numeral(fmt.em()) << ")\n";
    }
    const std::string mx = "ri.max_value" + sfx;
    const std::string err = "(/ (ite (>= v 0.0) v (- v)) ri.ed" + sfx + ") ri.em" + sfx;
    fun("ri.r_dn" + sfx, "(v Real)", "Real",
        "(let ((w (- v " + err + ")))\n    (ite (>= w (- " + mx + ")) (ite (<= w " + mx + ") w " + mx + ") " + kNL + "))");
    fun("ri.r_up" + sfx, "(v Real)", "Real",
        "(let ((w (+ v " + err + ")))\n    (ite (<= w " + mx + ") (ite (>= w (- " + mx + ")) w (- " + mx + ")) " + kL + "))");
  }

  void rounding() {
    if (!s_.multi) {
      rounding_pair("", s_.formats.front());
      return;
    }
    const std::size_t n = s_.formats.size();
    for (std::size_t i = 0; i < n; ++i) rounding_pair("_" + std::to_string(i + 1), s_.formats[i]);
    for (const char* dir : {"ri.r_dn", "ri.r_up"}) {
      std::string body = std::string("(") + dir + "_" + std::to_string(n) + " v)";
      for (std::size_t i = n - 1; i-- > 0;) {
        body = "(ite (= p " + std::to_string(i + 1) + ") (" + dir + "_" + std::to_string(i + 1) + " v) " + body + ")";
      }
      fun(dir, "(p Int) (v Real)", "Real", body);
    }
  }

  void bounds() {
    fun("ri.b_pinf", "(v Real)", "Bool", "(>= v " + kL + ")");
    fun("ri.b_ninf", "(v Real)", "Bool", "(<= v " + kNL + ")");
    fun("ri.b_inf", "(v Real)", "Bool", "(or (ri.b_pinf v) (ri.b_ninf v))");
    // Extended-real difference used by comparisons; same-signed infinities give 0.
    fun("ri.xsub", "(a Real) (b Real)", "Real",
        "(ite (ri.b_pinf a) (ite (ri.b_pinf b) 0.0 " + kL + ")\n   (ite (ri.b_ninf a) (ite (ri.b_ninf b) 0.0 " + kNL +
            ")\n    (ite (ri.b_pinf b) " + kNL + " (ite (ri.b_ninf b) " + kL + " (- a b)))))");
    // Corner results: defined (ok), +oo (pi), -oo (ni), finite value (v).
    const std::string ab = "(a Real) (b Real)";
    fun("ri.add_ok", ab, "Bool", "(not (or (and (ri.b_ninf a) (ri.b_pinf b)) (and (ri.b_pinf a) (ri.b_ninf b))))");
    fun("ri.add_pi", ab, "Bool", "(or (ri.b_pinf a) (ri.b_pinf b))");
    fun("ri.add_ni", ab, "Bool", "(or (ri.b_ninf a) (ri.b_ninf b))");
    fun("ri.add_v", ab, "Real", "(+ a b)");
    fun("ri.sub_ok", ab, "Bool", "(not (or (and (ri.b_pinf a) (ri.b_pinf b)) (and (ri.b_ninf a) (ri.b_ninf b))))");
    fun("ri.sub_pi", ab, "Bool", "(or (ri.b_pinf a) (ri.b_ninf b))");
    fun("ri.sub_ni", ab, "Bool", "(or (ri.b_ninf a) (ri.b_pinf b))");
    fun("ri.sub_v", ab, "Real", "(- a b)");
    fun("ri.mul_ok", ab, "Bool", "(not (or (and (= a 0.0) (ri.b_inf b)) (and (ri.b_inf a) (= b 0.0))))");
    fun("ri.mul_pi", ab, "Bool", "(and (or (ri.b_inf a) (ri.b_inf b)) (= (> a 0.0) (> b 0.0)))");
    fun("ri.mul_ni", ab, "Bool", "(and (or (ri.b_inf a) (ri.b_inf b)) (not (= (> a 0.0) (> b 0.0))))");
    fun("ri.mul_v", ab, "Real", "(* a b)");
    fun("ri.div_ok", ab, "Bool", "(and (not (= b 0.0)) (not (and (ri.b_inf a) (ri.b_inf b))))");
    fun("ri.div_pi", ab, "Bool", "(and (ri.b_inf a) (= (> a 0.0) (> b 0.0)))");
    fun("ri.div_ni", ab, "Bool", "(and (ri.b_inf a) (not (= (> a 0.0) (> b 0.0))))");
    fun("ri.div_v", ab, "Real", "(ite (ri.b_inf b) 0.0 (/ a b))");
    // Extremes over the finite corners (at least one flag is set by the caller).
    const std::string fv = "(f1 Bool) (v1 Real) (f2 Bool) (v2 Real) (f3 Bool) (v3 Real) (f4 Bool) (v4 Real)";
    for (const auto& [name, cmp] : {std::pair<std::string, std::string>{"ri.min4", "<"}, {"ri.max4", ">"}}) {
      fun(name, fv, "Real",
          "(let ((m2 (ite f1 (ite (and f2 (" + cmp + " v2 v1)) v2 v1) v2)) (h2 (or f1 f2)))\n"
          "    (let ((m3 (ite h2 (ite (and f3 (" + cmp + " v3 m2)) v3 m2) v3)) (h3 (or h2 f3)))\n"
          "      (ite h3 (ite (and f4 (" + cmp + " v4 m3)) v4 m3) v4)))");
    }
  }

  void constructors() {
    fun("ri.exact", "(v Real)", "RInt", "(tpl v v false)");
    fun("ri.of_real", p_decl() + "(v Real)", "RInt",
        "(tpl (ri.r_dn " + p_arg() + "v) (ri.r_up " + p_arg() + "v) false)");
    fun("ri.zero", "", "RInt", "(tpl 0.0 0.0 false)");
    fun("ri.zero_nan", "", "RInt", "(tpl 0.0 0.0 true)");
    fun("ri.nan", "", "RInt", "(tpl " + kNL + " " + kNL + " true)");
    fun("ri.nan_full", "", "RInt", "(tpl " + kNL + " " + kL + " true)");
    fun("is_pinf", "(x RInt)", "Bool", "(ri.b_pinf (ri.u x))");
    fun("is_ninf", "(x RInt)", "Bool", "(ri.b_ninf (ri.l x))");
  }

  void binary(const std::string& op) {
    const std::string xl = lo("x"), xu = hi("x"), xn = nan("x");
    const std::string yl = lo("y"), yu = hi("y"), yn = nan("y");
    const std::string params = p_decl() + decl("x") + " " + decl("y");
    const std::pair<std::string, std::string> cs[4] = {{xl, yl}, {xl, yu}, {xu, yl}, {xu, yu}};
    const std::string c0x = "(and (<= " + xl + " 0.0) (>= " + xu + " 0.0))";
    const std::string c0y = "(and (<= " + yl + " 0.0) (>= " + yu + " 0.0))";
    const std::string rix = "(or (ri.b_ninf " + xl + ") (ri.b_pinf " + xu + "))";
    const std::string riy = "(or (ri.b_ninf " + yl + ") (ri.b_pinf " + yu + "))";
    std::string rule;
    if (op == "add") {
      rule = "(or " + xn + " " + yn + " (and (ri.b_ninf " + xl + ") (ri.b_pinf " + yu + ")) (and (ri.b_pinf " + xu +
             ") (ri.b_ninf " + yl + ")))";
    } else if (op == "sub") {
      rule = "(or " + xn + " " + yn + " (and (ri.b_pinf " + xu + ") (ri.b_pinf " + yu + ")) (and (ri.b_ninf " + xl +
             ") (ri.b_ninf " + yl + ")))";
    } else if (op == "mul") {
      rule = "(or " + xn + " " + yn + " (and " + c0x + " " + riy + ") (and " + c0y + " " + rix + "))";
    } else {
      rule = "(or " + xn + " " + yn + " (and " + c0x + " " + c0y + ") (and " + rix + " " + riy + "))";
    }

    if (op == "add" || op == "sub") {
      // Monotone, so the lowest and highest corners decide. If one of them is
      // undefined, every defined corner is +oo (for the low end) or -oo.
      const auto& [al, ar] = cs[op == "add" ? 0 : 1];
      const auto& [bl, br] = cs[op == "add" ? 3 : 2];
      const std::string f = "(ri." + op + "_", ka = " " + al + " " + ar + ")", kb = " " + bl + " " + br + ")";
      const std::string l = "(ite (not aok) (ite bok " + kL + " " + kNL + ") (ite " + f + "ni" + ka + " " + kNL +
                            " (ite " + f + "pi" + ka + " " + kL + " (ri.r_dn " + p_arg() + f + "v" + ka + "))))";
      const std::string u = "(ite (not bok) (ite aok " + kNL + " " + kL + ") (ite " + f + "pi" + kb + " " + kL +
                            " (ite " + f + "ni" + kb + " " + kNL + " (ri.r_up " + p_arg() + f + "v" + kb + "))))";
      iv_fun("ri." + op, params, {"(aok " + f + "ok" + ka + ") (bok " + f + "ok" + kb + ")"}, l, u,
             "(or " + rule + " (and (not aok) (not bok)))");
      return;
    }

    std::string corners;
    std::string any_n = "(or", any_p = "(or", all_p = "(and", all_n = "(and", some = "(or";
    std::string fin_lo, fin_hi;
    for (int i = 0; i < 4; ++i) {
      const std::string c = "c" + std::to_string(i + 1);
      const std::string args = cs[i].first + " " + cs[i].second;
      for (const char* k : {"ok", "pi", "ni", "v"}) {
        corners += "(" + c + k + " (ri." + op + "_" + k + " " + args + ")) ";
      }
      any_n += " (and " + c + "ok " + c + "ni)";
      any_p += " (and " + c + "ok " + c + "pi)";
      all_p += " (=> " + c + "ok " + c + "pi)";
      all_n += " (=> " + c + "ok " + c + "ni)";
      some += " " + c + "ok";
      fin_lo += " (and " + c + "ok (not " + c + "pi)) " + c + "v";
      fin_hi += " (and " + c + "ok (not " + c + "ni)) " + c + "v";
    }
    any_n += ")";
    any_p += ")";
    all_p += ")";
    all_n += ")";
    some += ")";
    corners.pop_back();
    const std::string lo_g = "(ite " + any_n + " " + kNL + " (ite " + all_p + " " + kL + " (ri.r_dn " + p_arg() +
                             "(ri.min4" + fin_lo + "))))";
    const std::string hi_g = "(ite " + any_p + " " + kL + " (ite " + all_n + " " + kNL + " (ri.r_up " + p_arg() +
                             "(ri.max4" + fin_hi + "))))";
    std::vector<std::string> lets = {corners, "(none (not " + some + "))"};
    const std::string zx = "(and (= " + xl + " 0.0) (= " + xu + " 0.0))";
    std::string l, u, n;
    if (op == "mul") {
      const std::string zy = "(and (= " + yl + " 0.0) (= " + yu + " 0.0))";
      const std::string fx = "(and (not (ri.b_pinf " + xl + ")) (not (ri.b_ninf " + xu + ")))";
      const std::string fy = "(and (not (ri.b_pinf " + yl + ")) (not (ri.b_ninf " + yu + ")))";
      lets.push_back("(zz (or " + zx + " " + zy + ")) (ez (or (and " + zx + " " + fy + ") (and " + zy + " " + fx + ")))");
      l = "(ite ez 0.0 (ite (or zz none) " + kNL + " " + lo_g + "))";
      u = "(ite ez 0.0 (ite (or zz none) " + kL + " " + hi_g + "))";
      n = "(or " + rule + " (and (not ez) (or zz none)))";
    } else {
      lets.push_back("(ov (and " + c0y + " (not " + zx + ")))");
      l = "(ite (or ov none) " + kNL + " " + lo_g + ")";
      u = "(ite (or ov none) " + kL + " " + hi_g + ")";
      n = "(or " + rule + " (and (not ov) none))";
    }
    iv_fun("ri." + op, params, lets, l, u, n);
  }

  void arithmetic() {
    for (const char* op : {"add", "sub", "mul", "div"}) binary(op);
    const std::string xl = lo("x"), xu = hi("x"), xn = nan("x");
    iv_fun("ri.neg", decl("x"), {}, "(- " + xu + ")", "(- " + xl + ")", xn);
    iv_fun("ri.abs", decl("x"), {},
           "(ite (>= " + xl + " 0.0) " + xl + " (ite (<= " + xu + " 0.0) (- " + xu + ") 0.0))",
           "(ite (>= " + xl + " 0.0) " + xu + " (ite (<= " + xu + " 0.0) (- " + xl + ") (ite (> (- " + xl + ") " + xu +
               ") (- " + xl + ") " + xu + ")))",
           xn);
    iv_fun("ri.sub_exact", decl("f") + " " + decl("g"), {}, "(ri.xsub " + lo("f") + " " + hi("g") + ")",
           "(ri.xsub " + hi("f") + " " + lo("g") + ")", "(or " + nan("f") + " " + nan("g") + ")");
    if (!dt() && !s_.abstract) constant_scaling();
  }

  // ri.mul and ri.div restricted to a NaN-free constant c with 0 < c.l <= c.u
  // finite: every corner is defined, so each bound needs only two products.
  void constant_scaling() {
    const std::string xl = lo("x"), xu = hi("x"), xn = nan("x"), cl = lo("c"), cu = hi("c");
    const std::string params = p_decl() + decl("c") + " " + decl("x");
    const auto bound = [&](const std::string& v, bool low, const std::string& at_pos, const std::string& at_neg) {
      const std::string inf = low ? "(ite (ri.b_ninf " + v + ") " + kNL + " (ite (ri.b_pinf " + v + ") " + kL
                                  : "(ite (ri.b_pinf " + v + ") " + kL + " (ite (ri.b_ninf " + v + ") " + kNL;
      return inf + " (" + (low ? "ri.r_dn " : "ri.r_up ") + p_arg() + "(ite (>= " + v + " 0.0) " + at_pos + " " +
             at_neg + "))))";
    };
    const std::string zx = "(and (= " + xl + " 0.0) (= " + xu + " 0.0))";
    iv_fun("ri.mulc", params, {},
           "(ite " + zx + " 0.0 " + bound(xl, true, "(* " + cl + " " + xl + ")", "(* " + cu + " " + xl + ")") + ")",
           "(ite " + zx + " 0.0 " + bound(xu, false, "(* " + cu + " " + xu + ")", "(* " + cl + " " + xu + ")") + ")",
           xn);
    iv_fun("ri.divc", params, {}, bound(xl, true, "(/ " + xl + " " + cu + ")", "(/ " + xl + " " + cl + ")"),
           bound(xu, false, "(/ " + xu + " " + cl + ")", "(/ " + xu + " " + cu + ")"), xn);
  }

  void comparisons() {
    const bool weak = s_.mode == Mode::Weak;
    const std::string d = decl("d");
    const std::string dl = lo("d"), du = hi("d"), dn = nan("d");
    if (weak) {
      fun("ri.gt0", d, "Bool", "(> " + du + " 0.0)");
      fun("ri.ge0", d, "Bool", "(>= " + du + " 0.0)");
      fun("ri.le0", d, "Bool", "(or " + dn + " (<= " + dl + " 0.0))");
      fun("ri.lt0", d, "Bool", "(or " + dn + " (< " + dl + " 0.0))");
    } else {
      fun("ri.gt0", d, "Bool", "(and (not " + dn + ") (> " + dl + " 0.0))");
      fun("ri.ge0", d, "Bool", "(and (not " + dn + ") (>= " + dl + " 0.0))");
      fun("ri.le0", d, "Bool", "(<= " + du + " 0.0)");
      fun("ri.lt0", d, "Bool", "(< " + du + " 0.0)");
    }
    const std::string fg = decl("f") + " " + decl("g");
    const std::string d_fg = pass(call("ri.sub_exact", pass("f") + " " + pass("g")));
    const std::string d_gf = pass(call("ri.sub_exact", pass("g") + " " + pass("f")));
    fun("ri.gt", fg, "Bool", "(ri.gt0 " + d_fg + ")");
    fun("ri.geq", fg, "Bool", "(ri.ge0 " + d_fg + ")");
    fun("ri.leq", fg, "Bool", "(ri.le0 " + d_fg + ")");
    fun("ri.lt", fg, "Bool", "(ri.lt0 " + d_fg + ")");
    fun("ri.eq", fg, "Bool", "(and (ri.ge0 " + d_fg + ") (ri.ge0 " + d_gf + "))");
    fun("ri.neq", fg, "Bool", "(or (ri.lt0 " + d_fg + ") (ri.lt0 " + d_gf + "))");
    const std::string args = pass("f") + " " + pass("g");
    const std::string c0f = "(and (<= " + lo("f") + " 0.0) (>= " + hi("f") + " 0.0))";
    const std::string c0g = "(and (<= " + lo("g") + " 0.0) (>= " + hi("g") + " 0.0))";
    if (weak) {
      fun("ri.seq", fg, "Bool", "(or (and " + nan("f") + " " + nan("g") + ") (ri.eq " + args + "))");
      fun("ri.seq_same", fg, "Bool", "(ri.seq " + args + ")");
      fun("ri.nseq", fg, "Bool",
          s_.zero_sign_guard ? "(or (ri.neq " + args + ") (and " + c0f + " " + c0g + "))" : "(ri.neq " + args + ")");
    } else {
      fun("ri.seq", fg, "Bool",
          s_.zero_sign_guard ? "(and (ri.eq " + args + ") (not (= " + lo("f") + " 0.0)))" : "(ri.eq " + args + ")");
      fun("ri.seq_same", fg, "Bool", "(ri.eq " + args + ")");
      fun("ri.nseq", fg, "Bool", "(and (or (not " + nan("f") + ") (not " + nan("g") + ")) (ri.neq " + args + "))");
    }
  }

  const PreambleSpec& s_;
  std::ostringstream out_;
};

}  // namespace

std::string build_preamble(const PreambleSpec& spec) { return Gen(spec).run(); }

}  // namespace fpria::enc::detail
