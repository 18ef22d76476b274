#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "fpria/smt.hpp"

namespace fpria::smt {

namespace {

struct Value {
  enum class Kind { Term, Formula, Mode };
  Kind kind;
  TermPtr term;
  FormulaPtr formula;
  RoundingSite rm;

  static Value of(TermPtr t) { return {Kind::Term, std::move(t), nullptr, {}}; }
  static Value of(FormulaPtr f) { return {Kind::Formula, nullptr, std::move(f), {}}; }
  static Value of(RoundingSite r) { return {Kind::Mode, nullptr, nullptr, std::move(r)}; }
};

struct SortInfo {
  enum class Kind { Fp, Mode, Bool };
  Kind kind;
  std::optional<FpFormat> fmt;
};

struct Macro {
  std::vector<std::pair<std::string, SortInfo>> params;
  SortInfo result;
  SExpr body;
};

using Scope = std::map<std::string, Value>;

const std::set<std::string> kUnsupported = {
    "fp.fma", "fp.sqrt", "fp.rem", "fp.roundToIntegral", "fp.min", "fp.max", "fp.isNormal", "fp.isSubnormal",
    "fp.isZero", "fp.isInfinite", "fp.isNaN", "fp.isNegative", "fp.isPositive", "to_fp", "to_fp_unsigned",
    "fp.to_ubv", "fp.to_sbv", "fp.to_real", "ite", "xor", "forall", "exists", "!", "push", "pop",
    "check-sat-assuming", "declare-sort", "define-sort", "define-fun-rec", "define-funs-rec", "declare-datatype",
    "declare-datatypes"};

class Parser {
 public:
  explicit Parser(const std::string& file) : file_(file) {}

  Script run(std::string_view text) {
    for (const SExpr& cmd : read_sexprs(text, file_)) command(cmd);
    return std::move(script_);
  }

 private:
  [[noreturn]] void fail(const SExpr& at, const std::string& msg) { throw ParseError(file_, at.line, at.col, msg); }

  template <typename F>
  auto guard(const SExpr& at, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const SortError& e) {
      fail(at, e.what());
    } catch (const std::invalid_argument& e) {
      fail(at, e.what());
    }
  }

  const std::string& symbol(const SExpr& e, const char* what) {
    if (e.kind != SExpr::Kind::Symbol) fail(e, std::string("expected ") + what);
    return e.text;
  }

  int numeral(const SExpr& e) {
    if (e.kind != SExpr::Kind::Numeral) fail(e, "expected a numeral");
    if (e.text.size() > 6) fail(e, "numeral too large: " + e.text);
    return std::stoi(e.text);
  }

  void check_unsupported(const SExpr& head) {
    if (head.kind == SExpr::Kind::Symbol && kUnsupported.count(head.text)) {
      fail(head, "unsupported construct '" + head.text + "'");
    }
    if (head.is_list() && head.items.size() >= 2 && head.items[0].is_symbol("_")) {
      check_unsupported(head.items[1]);
    }
  }

  SortInfo sort(const SExpr& e) {
    if (e.kind == SExpr::Kind::Symbol) {
      if (e.text == "Float16") return {SortInfo::Kind::Fp, make_format(5, 11)};
      if (e.text == "Float32") return {SortInfo::Kind::Fp, make_format(8, 24)};
      if (e.text == "Float64") return {SortInfo::Kind::Fp, make_format(11, 53)};
      if (e.text == "Float128") return {SortInfo::Kind::Fp, make_format(15, 113)};
      if (e.text == "RoundingMode" || e.text == "RM") return {SortInfo::Kind::Mode, std::nullopt};
      if (e.text == "Bool") return {SortInfo::Kind::Bool, std::nullopt};
    } else if (e.is_list() && e.items.size() == 4 && e.items[0].is_symbol("_") &&
               e.items[1].is_symbol("FloatingPoint")) {
      int eb = numeral(e.items[2]), sb = numeral(e.items[3]);
      return {SortInfo::Kind::Fp, guard(e, [&] { return make_format(eb, sb); })};
    }
    fail(e, "unsupported sort " + e.to_string());
  }

  void declare(const SExpr& at, const std::string& name, const SortInfo& s) {
    if (globals_.count(name) || macros_.count(name)) fail(at, "symbol '" + name + "' already declared");
    switch (s.kind) {
      case SortInfo::Kind::Fp:
        globals_.emplace(name, Value::of(Term::var(name, *s.fmt)));
        script_.decls.fp_vars.emplace_back(name, *s.fmt);
        declared_formats_.insert(*s.fmt);
        break;
      case SortInfo::Kind::Mode:
        globals_.emplace(name, Value::of(RoundingSite::var(name)));
        script_.decls.mode_vars.push_back(name);
        break;
      case SortInfo::Kind::Bool:
        fail(at, "Boolean constants are not supported");
    }
  }

  void command(const SExpr& cmd) {
    if (!cmd.is_list() || cmd.items.empty()) fail(cmd, "expected a command");
    const SExpr& head = cmd.items[0];
    check_unsupported(head);
    const std::string& name = symbol(head, "a command name");
    const auto& it = cmd.items;
    if (name == "set-logic") {
      if (it.size() != 2) fail(cmd, "set-logic expects one argument");
      script_.logic = symbol(it[1], "a logic name");
    } else if (name == "set-info" || name == "set-option" || name == "get-model" || name == "get-info" ||
               name == "get-value" || name == "exit" || name == "check-sat") {
      // Accepted without effect.
    } else if (name == "declare-const") {
      if (it.size() != 3) fail(cmd, "declare-const expects a name and a sort");
      declare(cmd, symbol(it[1], "a symbol"), sort(it[2]));
    } else if (name == "declare-fun") {
      if (it.size() != 4) fail(cmd, "declare-fun expects a name, parameter sorts and a sort");
      if (!it[2].is_list() || !it[2].items.empty()) fail(it[2], "only 0-ary declare-fun is supported");
      declare(cmd, symbol(it[1], "a symbol"), sort(it[3]));
    } else if (name == "define-fun") {
      if (it.size() != 5 || !it[2].is_list()) fail(cmd, "malformed define-fun");
      const std::string& fname = symbol(it[1], "a symbol");
      if (globals_.count(fname) || macros_.count(fname)) fail(it[1], "symbol '" + fname + "' already declared");
      Macro m;
      for (const SExpr& p : it[2].items) {
        if (!p.is_list() || p.items.size() != 2) fail(p, "malformed parameter");
        m.params.emplace_back(symbol(p.items[0], "a parameter name"), sort(p.items[1]));
      }
      m.result = sort(it[3]);
      m.body = it[4];
      if (m.params.empty()) {
        Value v = expr(m.body, {});
        expect_sort(m.body, v, m.result);
        globals_.emplace(fname, std::move(v));
      } else {
        macros_.emplace(fname, std::move(m));
      }
    } else if (name == "assert") {
      if (it.size() != 2) fail(cmd, "assert expects one term");
      script_.assertions.push_back(formula(it[1], {}));
    } else {
      fail(head, "unsupported command '" + name + "'");
    }
  }

  void expect_sort(const SExpr& at, const Value& v, const SortInfo& s) {
    bool ok = false;
    switch (s.kind) {
      case SortInfo::Kind::Fp: ok = v.kind == Value::Kind::Term && v.term->format() == *s.fmt; break;
      case SortInfo::Kind::Mode: ok = v.kind == Value::Kind::Mode; break;
      case SortInfo::Kind::Bool: ok = v.kind == Value::Kind::Formula; break;
    }
    if (!ok) fail(at, "sort mismatch");
  }

  FormulaPtr formula(const SExpr& e, const Scope& scope) {
    Value v = expr(e, scope);
    if (v.kind != Value::Kind::Formula) fail(e, "expected a Boolean term");
    return v.formula;
  }

  TermPtr term(const SExpr& e, const Scope& scope) {
    Value v = expr(e, scope);
    if (v.kind != Value::Kind::Term) fail(e, "expected a floating-point term");
    return v.term;
  }

  RoundingSite mode(const SExpr& e, const Scope& scope) {
    Value v = expr(e, scope);
    if (v.kind != Value::Kind::Mode) fail(e, "expected a rounding mode");
    return v.rm;
  }

  const Value* lookup(const std::string& name, const Scope& scope) {
    if (auto it = scope.find(name); it != scope.end()) return &it->second;
    if (auto it = globals_.find(name); it != globals_.end()) return &it->second;
    return nullptr;
  }

  mpq_class constant(const SExpr& e) {
    if (e.kind == SExpr::Kind::Numeral || e.kind == SExpr::Kind::Decimal) return XRat::parse(e.text).value();
    if (e.is_list() && e.items.size() == 2 && e.items[0].is_symbol("-")) return -constant(e.items[1]);
    if (e.is_list() && e.items.size() == 3 && e.items[0].is_symbol("/")) {
      mpq_class d = constant(e.items[2]);
      if (d == 0) fail(e, "division by zero in constant");
      return constant(e.items[1]) / d;
    }
    fail(e, "expected a rational constant");
  }

  FpFormat ambient(const SExpr& at) {
    if (declared_formats_.size() != 1) {
      fail(at, "fp.const needs an indexed format ((_ fp.const eb sb) ...) when the script does not declare exactly one floating-point sort");
    }
    return *declared_formats_.begin();
  }

  static mpz_class bits_of(const SExpr& e, int& width) {
    if (e.kind == SExpr::Kind::Binary) {
      width = static_cast<int>(e.text.size());
      return mpz_class(e.text, 2);
    }
    width = static_cast<int>(e.text.size()) * 4;
    return mpz_class(e.text, 16);
  }

  Value indexed(const SExpr& e) {
    // (_ <name> eb sb)
    if (e.items.size() != 4) fail(e, "unsupported indexed identifier " + e.to_string());
    const std::string& n = symbol(e.items[1], "an identifier");
    FpFormat fmt = guard(e, [&] { return make_format(numeral(e.items[2]), numeral(e.items[3])); });
    if (n == "+zero") return Value::of(Term::literal(FpValue::zero(false), fmt));
    if (n == "-zero") return Value::of(Term::literal(FpValue::zero(true), fmt));
    if (n == "+oo") return Value::of(Term::literal(FpValue::inf(false), fmt));
    if (n == "-oo") return Value::of(Term::literal(FpValue::inf(true), fmt));
    if (n == "NaN") return Value::of(Term::literal(FpValue::nan(), fmt));
    fail(e, "unsupported indexed identifier '" + n + "'");
  }

  Value atom_chain(const SExpr& e, const Scope& scope, Rel rel, bool swap) {
    if (e.items.size() < 3) fail(e, "comparison expects at least two arguments");
    std::vector<TermPtr> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i], scope));
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      const TermPtr& a = swap ? args[i + 1] : args[i];
      const TermPtr& b = swap ? args[i] : args[i + 1];
      parts.push_back(guard(e, [&] { return Formula::atom(rel, a, b); }));
    }
    return Value::of(parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts)));
  }

  Value expr(const SExpr& e, const Scope& scope) {
    if (e.kind == SExpr::Kind::Symbol) {
      if (e.text == "true") return Value::of(Formula::conj({}));
      if (e.text == "false") return Value::of(Formula::disj({}));
      if (auto m = parse_mode(e.text)) return Value::of(RoundingSite::concrete(*m));
      if (const Value* v = lookup(e.text, scope)) return *v;
      if (macros_.count(e.text)) fail(e, "function '" + e.text + "' applied to no arguments");
      fail(e, "unknown symbol '" + e.text + "'");
    }
    if (e.kind == SExpr::Kind::Numeral || e.kind == SExpr::Kind::Decimal) {
      fail(e, "real constant '" + e.text + "' outside fp.const");
    }
    if (!e.is_list()) fail(e, "unsupported term " + e.to_string());
    if (e.items.empty()) fail(e, "empty application");
    const SExpr& head = e.items[0];
    check_unsupported(head);
    if (head.is_symbol("_")) return indexed(e);
    if (head.is_list()) {
      if (head.items.size() == 4 && head.items[0].is_symbol("_") && head.items[1].is_symbol("fp.const")) {
        if (e.items.size() != 3) fail(e, "fp.const expects a constant and a rounding mode");
        FpFormat fmt = guard(head, [&] { return make_format(numeral(head.items[2]), numeral(head.items[3])); });
        return rounded(e, fmt, scope);
      }
      fail(head, "unsupported construct " + head.to_string());
    }
    const std::string& f = symbol(head, "a function symbol");
    const auto& it = e.items;
    const std::size_t argc = it.size() - 1;

    if (f == "let") return let(e, scope);
    if (f == "fp") {
      if (argc != 3) fail(e, "fp expects three bit-vector arguments");
      for (std::size_t i = 1; i <= 3; ++i) {
        if (it[i].kind != SExpr::Kind::Binary && it[i].kind != SExpr::Kind::Hex) fail(it[i], "expected a bit-vector literal");
      }
      int ws = 0, we = 0, wm = 0;
      mpz_class s = bits_of(it[1], ws), ex = bits_of(it[2], we), m = bits_of(it[3], wm);
      if (ws != 1) fail(it[1], "sign field must have width 1");
      FpFormat fmt = guard(e, [&] { return make_format(we, wm + 1); });
      mpz_class bits = ((s << static_cast<mp_bitcnt_t>(we)) + ex) << static_cast<mp_bitcnt_t>(wm);
      bits += m;
      return Value::of(Term::literal(FpValue::from_bits(bits, fmt), fmt));
    }
    if (f == "fp.const") {
      if (argc != 2) fail(e, "fp.const expects a constant and a rounding mode");
      return rounded(e, ambient(e), scope);
    }
    static const std::map<std::string, FpaOp> kBinary = {
        {"fp.add", FpaOp::Add}, {"fp.sub", FpaOp::Sub}, {"fp.mul", FpaOp::Mul}, {"fp.div", FpaOp::Div}};
    if (auto b = kBinary.find(f); b != kBinary.end()) {
      if (argc != 3) fail(e, f + " expects a rounding mode and two arguments");
      RoundingSite rm = mode(it[1], scope);
      TermPtr x = term(it[2], scope), y = term(it[3], scope);
      return Value::of(guard(e, [&] { return Term::binary(b->second, rm, x, y); }));
    }
    if (f == "fp.neg" || f == "fp.abs") {
      if (argc != 1) fail(e, f + " expects one argument");
      return Value::of(Term::unary(f == "fp.neg" ? FpaOp::Neg : FpaOp::Abs, term(it[1], scope)));
    }
    if (f == "fp.gt") return atom_chain(e, scope, Rel::Gt, false);
    if (f == "fp.geq") return atom_chain(e, scope, Rel::Ge, false);
    if (f == "fp.lt") return atom_chain(e, scope, Rel::Gt, true);
    if (f == "fp.leq") return atom_chain(e, scope, Rel::Ge, true);
    if (f == "fp.eq") return atom_chain(e, scope, Rel::FpEq, false);
    if (f == "=" || f == "distinct") {
      if (argc < 2) fail(e, f + " expects at least two arguments");
      Value first = expr(it[1], scope);
      if (first.kind == Value::Kind::Formula) {
        if (f == "=" && argc == 2) {
          // Boolean equivalence (a <=> b).
          FormulaPtr a = first.formula, b = formula(it[2], scope);
          return Value::of(Formula::disj({Formula::conj({a, b}), Formula::conj({Formula::negation(a), Formula::negation(b)})}));
        }
        fail(e, "'" + f + "' over Booleans supports exactly two arguments");
      }
      if (first.kind != Value::Kind::Term) fail(e, "'" + f + "' over rounding modes is not supported");
      std::vector<TermPtr> args{first.term};
      for (std::size_t i = 2; i <= argc; ++i) args.push_back(term(it[i], scope));
      std::vector<FormulaPtr> parts;
      if (f == "=") {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
          parts.push_back(guard(e, [&] { return Formula::atom(Rel::SeqEq, args[i], args[i + 1]); }));
        }
      } else {
        for (std::size_t i = 0; i < args.size(); ++i) {
          for (std::size_t j = i + 1; j < args.size(); ++j) {
            parts.push_back(Formula::negation(guard(e, [&] { return Formula::atom(Rel::SeqEq, args[i], args[j]); })));
          }
        }
      }
      return Value::of(parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts)));
    }
    if (f == "not") {
      if (argc != 1) fail(e, "not expects one argument");
      return Value::of(Formula::negation(formula(it[1], scope)));
    }
    if (f == "and" || f == "or") {
      std::vector<FormulaPtr> parts;
      for (std::size_t i = 1; i <= argc; ++i) parts.push_back(formula(it[i], scope));
      return Value::of(f == "and" ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts)));
    }
    if (f == "=>") {
      if (argc < 2) fail(e, "=> expects at least two arguments");
      // Right associative: a => (b => c) == not a or not b or c.
      std::vector<FormulaPtr> parts;
      for (std::size_t i = 1; i < argc; ++i) parts.push_back(Formula::negation(formula(it[i], scope)));
      parts.push_back(formula(it[argc], scope));
      return Value::of(Formula::disj(std::move(parts)));
    }
    if (auto m = macros_.find(f); m != macros_.end()) {
      const Macro& mac = m->second;
      if (argc != mac.params.size()) fail(e, "'" + f + "' expects " + std::to_string(mac.params.size()) + " arguments");
      Scope inner;
      for (std::size_t i = 0; i < argc; ++i) {
        Value v = expr(it[i + 1], scope);
        expect_sort(it[i + 1], v, mac.params[i].second);
        inner[mac.params[i].first] = std::move(v);
      }
      if (++depth_ > 256) fail(e, "macro expansion too deep");
      Value r = expr(mac.body, inner);
      --depth_;
      expect_sort(e, r, mac.result);
      return r;
    }
    if (f.rfind("fp.", 0) == 0) fail(head, "unsupported construct '" + f + "'");
    fail(head, "unknown function symbol '" + f + "'");
  }

  Value rounded(const SExpr& e, const FpFormat& fmt, const Scope& scope) {
    mpq_class c = constant(e.items[1]);
    RoundingSite rm = mode(e.items[2], scope);
    if (rm.kind != RoundingSite::Kind::Concrete) fail(e.items[2], "fp.const needs a concrete rounding mode");
    return Value::of(Term::rounded_literal(c, rm.mode, fmt));
  }

  Value let(const SExpr& e, const Scope& scope) {
    if (e.items.size() != 3 || !e.items[1].is_list()) fail(e, "malformed let");
    Scope inner = scope;
    for (const SExpr& b : e.items[1].items) {
      if (!b.is_list() || b.items.size() != 2) fail(b, "malformed let binding");
      inner[symbol(b.items[0], "a variable name")] = expr(b.items[1], scope);
    }
    return expr(e.items[2], inner);
  }

  const std::string& file_;
  Script script_;
  Scope globals_;
  std::map<std::string, Macro> macros_;
  std::set<FpFormat> declared_formats_;
  int depth_ = 0;
};

}  // namespace

Script parse_script(std::string_view text, const std::string& file) { return Parser(file).run(text); }

Script parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_script(ss.str(), path);
}

int FormatTable::index_of(const FpFormat& fmt) const {
  for (std::size_t i = 0; i < formats.size(); ++i) {
    if (formats[i] == fmt) return static_cast<int>(i) + 1;
  }
  throw std::out_of_range(fmt.name() + " is not in the precision table");
}

namespace {

void collect_formats(const Term& t, std::set<FpFormat>& out) {
  out.insert(t.format());
  if (t.lhs()) collect_formats(*t.lhs(), out);
  if (t.rhs()) collect_formats(*t.rhs(), out);
}

void collect_formats(const Formula& f, std::set<FpFormat>& out) {
  if (f.kind() == Formula::Kind::Atom) {
    collect_formats(*f.lhs(), out);
    collect_formats(*f.rhs(), out);
    return;
  }
  for (const auto& c : f.children()) collect_formats(*c, out);
}

FormatTable make_table(const std::set<FpFormat>& fmts, bool allow_multi) {
  if (fmts.empty()) throw SortError("no floating-point sort occurs in the input");
  if (fmts.size() > 1 && !allow_multi) {
    std::string names;
    for (const auto& f : fmts) names += (names.empty() ? "" : ", ") + f.name();
    throw SortError("several formats (" + names + ") require the multi-precision encoder");
  }
  return FormatTable{std::vector<FpFormat>(fmts.begin(), fmts.end())};
}

}  // namespace

FormatTable check_sorts(const Script& script, bool allow_multi) {
  std::set<FpFormat> fmts;
  for (const auto& [name, fmt] : script.decls.fp_vars) fmts.insert(fmt);
  for (const auto& a : script.assertions) collect_formats(*a, fmts);
  return make_table(fmts, allow_multi);
}

FormatTable check_sorts(const Formula& f, bool allow_multi) {
  std::set<FpFormat> fmts;
  collect_formats(f, fmts);
  return make_table(fmts, allow_multi);
}

}  // namespace fpria::smt
