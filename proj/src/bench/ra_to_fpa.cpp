#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fpria/bench.hpp"
#include "fpria/sexpr.hpp"
#include "fpria/smt.hpp"

namespace fpria::bench {

namespace {

const std::set<std::string> kBoolOps = {"and", "or", "not", "=>", "xor"};
const std::set<std::string> kCompare = {"<", "<=", ">", ">=", "=", "distinct"};
const std::set<std::string> kArith = {"+", "-", "*", "/"};

class Translator {
 public:
  Translator(const FpFormat& fmt, const RaToFpaOptions& opts, std::string file)
      : fmt_(fmt), opts_(opts), file_(std::move(file)), sort_(smt::sort_name(fmt)) {}

  std::string run(const std::string& text) {
    for (const SExpr& cmd : read_sexprs(text, file_)) command(cmd);
    return out_.str();
  }

 private:
  [[noreturn]] void fail(const SExpr& at, const std::string& msg) const {
    throw UnsupportedConstruct(file_ + ":" + std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + msg);
  }
  [[noreturn]] void unsupported(const SExpr& at, const std::string& what) const {
    fail(at, "unsupported construct '" + what + "'");
  }

  void check_real(const SExpr& sort) const {
    if (!sort.is_symbol("Real")) unsupported(sort, sort.to_string());
  }

  void command(const SExpr& cmd) {
    if (!cmd.is_list() || cmd.items.empty() || cmd.items[0].kind != SExpr::Kind::Symbol) fail(cmd, "expected a command");
    const std::string& head = cmd.items[0].text;
    if (head == "set-logic") {
      out_ << "(set-logic QF_FP)\n";
    } else if (head == "set-info" || head == "set-option") {
      out_ << cmd.to_string() << "\n";
    } else if (head == "declare-fun" || head == "declare-const") {
      const bool fun = head == "declare-fun";
      if (cmd.items.size() != (fun ? 4u : 3u)) fail(cmd, "malformed " + head);
      if (fun && !cmd.items[2].items.empty()) unsupported(cmd.items[2], "uninterpreted function");
      check_real(cmd.items.back());
      const std::string name = cmd.items[1].to_string();
      out_ << "(declare-const " << name << " " << sort_ << ")\n";
      if (opts_.assert_not_nan) out_ << "(assert (fp.eq " << name << " " << name << "))\n";
    } else if (head == "define-fun") {
      if (cmd.items.size() != 5) fail(cmd, "malformed define-fun");
      if (!cmd.items[2].items.empty()) unsupported(cmd.items[2], "parameterized define-fun");
      std::string body;
      if (cmd.items[3].is_symbol("Bool")) {
        body = formula(cmd.items[4]);
        flush();
        out_ << "(define-fun " << cmd.items[1].to_string() << " () Bool " << body << ")\n";
        bools_.insert(cmd.items[1].text);
      } else {
        check_real(cmd.items[3]);
        body = term(cmd.items[4]);
        flush();
        out_ << "(define-fun " << cmd.items[1].to_string() << " () " << sort_ << " " << body << ")\n";
      }
    } else if (head == "assert") {
      if (cmd.items.size() != 2) fail(cmd, "malformed assert");
      const std::string f = formula(cmd.items[1]);
      flush();
      out_ << "(assert " << f << ")\n";
    } else if (head == "check-sat" || head == "exit" || head == "get-model" || head == "get-info") {
      out_ << cmd.to_string() << "\n";
    } else {
      unsupported(cmd, head);
    }
  }

  void flush() {
    for (const auto& d : pending_) out_ << d << "\n";
    pending_.clear();
  }

  std::string fresh_mode() {
    const std::string rm = "rm!" + std::to_string(++modes_);
    pending_.push_back("(declare-const " + rm + " RoundingMode)");
    return rm;
  }

  // Constant subexpression value, if the expression is one.
  std::optional<mpq_class> constant(const SExpr& e) const {
    if (e.kind == SExpr::Kind::Numeral || e.kind == SExpr::Kind::Decimal) return XRat::parse(e.text).value();
    if (!e.is_list() || e.items.empty()) return std::nullopt;
    const SExpr& h = e.items[0];
    if (h.is_symbol("-") && e.items.size() == 2) {
      if (auto v = constant(e.items[1])) return mpq_class(-*v);
    }
    if (h.is_symbol("/") && e.items.size() == 3) {
      auto a = constant(e.items[1]), b = constant(e.items[2]);
      if (a && b && sgn(*b) != 0) return mpq_class(*a / *b);
    }
    return std::nullopt;
  }

  std::string term(const SExpr& e) {
    if (auto c = constant(e)) return fp_literal_text(*c, fmt_);
    if (e.kind == SExpr::Kind::Symbol) {
      if (bools_.count(e.text)) fail(e, "Boolean '" + e.text + "' used as a term");
      return e.to_string();
    }
    if (!e.is_list() || e.items.empty()) unsupported(e, e.to_string());
    const SExpr& h = e.items[0];
    if (h.kind != SExpr::Kind::Symbol) unsupported(h, h.to_string());
    if (h.text == "let") return let(e, false);
    if (!kArith.count(h.text)) unsupported(h, h.text);
    if (e.items.size() < 2) fail(e, "missing operands");
    if (h.text == "-" && e.items.size() == 2) return "(fp.neg " + term(e.items[1]) + ")";
    if (e.items.size() < 3) fail(e, "missing operands");
    const std::string op = h.text == "+" ? "fp.add" : h.text == "-" ? "fp.sub" : h.text == "*" ? "fp.mul" : "fp.div";
    std::string acc = term(e.items[1]);
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      const std::string rhs = term(e.items[i]);
      acc = "(" + op + " " + fresh_mode() + " " + acc + " " + rhs + ")";
    }
    return acc;
  }

  std::string let(const SExpr& e, bool as_formula) {
    if (e.items.size() != 3 || !e.items[1].is_list()) fail(e, "malformed let");
    std::string s = "(let (";
    std::vector<std::string> bound;
    for (const SExpr& b : e.items[1].items) {
      if (!b.is_list() || b.items.size() != 2) fail(b, "malformed let binding");
      const bool boolean = is_formula(b.items[1]);
      s += "(" + b.items[0].to_string() + " " + (boolean ? formula(b.items[1]) : term(b.items[1])) + ")";
      if (boolean) bound.push_back(b.items[0].text);
    }
    for (const auto& n : bound) bools_.insert(n);
    s += ") " + (as_formula ? formula(e.items[2]) : term(e.items[2])) + ")";
    for (const auto& n : bound) bools_.erase(n);
    return s;
  }

  bool is_formula(const SExpr& e) const {
    if (e.is_symbol("true") || e.is_symbol("false")) return true;
    if (e.kind == SExpr::Kind::Symbol) return bools_.count(e.text) > 0;
    if (!e.is_list() || e.items.empty() || e.items[0].kind != SExpr::Kind::Symbol) return false;
    const std::string& h = e.items[0].text;
    if (h == "let") return e.items.size() == 3 && is_formula(e.items[2]);
    return kBoolOps.count(h) || kCompare.count(h);
  }

  std::string formula(const SExpr& e) {
    if (e.kind == SExpr::Kind::Symbol) {
      if (e.text == "true" || e.text == "false" || bools_.count(e.text)) return e.to_string();
      fail(e, "expected a Boolean, found '" + e.text + "'");
    }
    if (!e.is_list() || e.items.empty() || e.items[0].kind != SExpr::Kind::Symbol) unsupported(e, e.to_string());
    const std::string& h = e.items[0].text;
    if (h == "let") return let(e, true);
    if (h == "ite" || h == "forall" || h == "exists" || h == "!") unsupported(e.items[0], h);
    if (kBoolOps.count(h)) {
      std::string s = "(" + h;
      for (std::size_t i = 1; i < e.items.size(); ++i) s += " " + formula(e.items[i]);
      return s + ")";
    }
    if (!kCompare.count(h)) unsupported(e.items[0], h);
    if (e.items.size() < 3) fail(e, "comparison needs two operands");
    if (h == "=" && is_formula(e.items[1])) {
      std::string s = "(=";
      for (std::size_t i = 1; i < e.items.size(); ++i) s += " " + formula(e.items[i]);
      return s + ")";
    }
    std::vector<std::string> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i]));
    if (h == "distinct") {
      std::vector<std::string> parts;
      for (std::size_t i = 0; i < args.size(); ++i) {
        for (std::size_t j = i + 1; j < args.size(); ++j) parts.push_back("(not (fp.eq " + args[i] + " " + args[j] + "))");
      }
      if (parts.size() == 1) return parts[0];
      std::string s = "(and";
      for (const auto& p : parts) s += " " + p;
      return s + ")";
    }
    const std::string op = h == "<" ? "fp.lt" : h == "<=" ? "fp.leq" : h == ">" ? "fp.gt" : h == ">=" ? "fp.geq" : "fp.eq";
    std::string s = "(" + op;
    for (const auto& a : args) s += " " + a;
    return s + ")";
  }

  FpFormat fmt_;
  RaToFpaOptions opts_;
  std::string file_;
  std::string sort_;
  std::ostringstream out_;
  std::vector<std::string> pending_;
  std::set<std::string> bools_;
  int modes_ = 0;
};

}  // namespace

std::string ra_to_fpa(const std::string& script, const FpFormat& fmt, const RaToFpaOptions& opts) {
  return Translator(fmt, opts, "<input>").run(script);
}

}  // namespace fpria::bench
