#include <map>
#include <set>
#include <sstream>

#include "fpria/smt.hpp"

namespace fpria::smt {

std::string sort_name(const FpFormat& fmt) {
  if (fmt.eb() == 8 && fmt.sb() == 24) return "Float32";
  if (fmt.eb() == 11 && fmt.sb() == 53) return "Float64";
  return "(_ FloatingPoint " + std::to_string(fmt.eb()) + " " + std::to_string(fmt.sb()) + ")";
}

namespace {

std::string smt_rational(const mpq_class& q) {
  if (sgn(q) < 0) return "(- " + smt_rational(mpq_class(-q)) + ")";
  if (q.get_den() == 1) return q.get_num().get_str();
  std::string s = rational_to_string(q);
  if (s.find('/') == std::string::npos) return s;
  return "(/ " + q.get_num().get_str() + " " + q.get_den().get_str() + ")";
}

std::string bits_string(const mpz_class& v, int width) {
  std::string s = v.get_str(2);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return "#b" + s;
}

std::string literal(const Term& t) {
  const FpFormat& fmt = t.format();
  const std::string ix = " " + std::to_string(fmt.eb()) + " " + std::to_string(fmt.sb()) + ")";
  if (t.source()) {
    return "((_ fp.const" + ix + " " + smt_rational(*t.source()) + " " + std::string(mode_name(t.source_mode())) + ")";
  }
  const FpValue& v = t.value();
  switch (v.kind()) {
    case FpValue::Kind::NaN: return "(_ NaN" + ix;
    case FpValue::Kind::Inf: return std::string(v.negative() ? "(_ -oo" : "(_ +oo") + ix;
    case FpValue::Kind::Zero: return std::string(v.negative() ? "(_ -zero" : "(_ +zero") + ix;
    case FpValue::Kind::Finite: break;
  }
  mpz_class bits = v.to_bits(fmt);
  const int fb = fmt.sb() - 1;
  mpz_class frac = bits % (mpz_class(1) << static_cast<mp_bitcnt_t>(fb));
  mpz_class rest = bits >> static_cast<mp_bitcnt_t>(fb);
  mpz_class ex = rest % (mpz_class(1) << static_cast<mp_bitcnt_t>(fmt.eb()));
  mpz_class sign = rest >> static_cast<mp_bitcnt_t>(fmt.eb());
  return "(fp " + bits_string(sign, 1) + " " + bits_string(ex, fmt.eb()) + " " + bits_string(frac, fb) + ")";
}

class Printer {
 public:
  std::string term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Literal: return literal(t);
      case Term::Kind::Var: return quote(t.name());
      case Term::Kind::Unary: return "(fp." + std::string(op_name(t.op())) + " " + term(*t.lhs()) + ")";
      case Term::Kind::Binary: break;
    }
    std::string rm;
    switch (t.rm().kind) {
      case RoundingSite::Kind::Concrete: rm = mode_name(t.rm().mode); break;
      case RoundingSite::Kind::Var: rm = quote(t.rm().name); break;
      case RoundingSite::Kind::Unspecified:
        rm = "rm!" + std::to_string(fresh_.size());
        fresh_.push_back(rm);
        break;
    }
    return "(fp." + std::string(op_name(t.op())) + " " + rm + " " + term(*t.lhs()) + " " + term(*t.rhs()) + ")";
  }

  std::string formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        static const std::map<Rel, std::string> names = {
            {Rel::SeqEq, "="}, {Rel::FpEq, "fp.eq"}, {Rel::Ge, "fp.geq"}, {Rel::Gt, "fp.gt"}};
        return "(" + names.at(f.rel()) + " " + term(*f.lhs()) + " " + term(*f.rhs()) + ")";
      }
      case Formula::Kind::Not: return "(not " + formula(*f.children()[0]) + ")";
      case Formula::Kind::And:
      case Formula::Kind::Or: break;
    }
    const bool conj = f.kind() == Formula::Kind::And;
    if (f.children().empty()) return conj ? "true" : "false";
    std::string s = conj ? "(and" : "(or";
    for (const auto& c : f.children()) s += " " + formula(*c);
    return s + ")";
  }

  const std::vector<std::string>& fresh() const { return fresh_; }

  static std::string quote(const std::string& s) {
    bool simple = !s.empty() && !std::isdigit(static_cast<unsigned char>(s[0]));
    for (char c : s) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && std::string_view("~!@$%^&*_-+=<>.?/").find(c) == std::string_view::npos) {
        simple = false;
      }
    }
    return simple ? s : "|" + s + "|";
  }

 private:
  std::vector<std::string> fresh_;
};

}  // namespace

std::string print_term(const Term& t) { return Printer().term(t); }
std::string print_formula(const Formula& f) { return Printer().formula(f); }

std::string print_script(const Script& s) {
  Printer p;
  std::vector<std::string> asserts;
  for (const auto& a : s.assertions) asserts.push_back(p.formula(*a));
  std::ostringstream out;
  out << "(set-logic " << s.logic.value_or("QF_FP") << ")\n";
  for (const auto& [name, fmt] : s.decls.fp_vars) out << "(declare-const " << Printer::quote(name) << " " << sort_name(fmt) << ")\n";
  for (const auto& name : s.decls.mode_vars) out << "(declare-const " << Printer::quote(name) << " RoundingMode)\n";
  for (const auto& name : p.fresh()) out << "(declare-const " << name << " RoundingMode)\n";
  for (const auto& a : asserts) out << "(assert " << a << ")\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace fpria::smt
