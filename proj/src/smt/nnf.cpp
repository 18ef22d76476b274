#include "fpria/smt.hpp"

namespace fpria::smt {

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool negate) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      return negate ? Formula::negation(f) : f;
    case Formula::Kind::Not:
      return nnf(f->children()[0], !negate);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->children().size());
      for (const auto& c : f->children()) parts.push_back(nnf(c, negate));
      bool conj = (f->kind() == Formula::Kind::And) != negate;
      return conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
  }
  return f;
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, false); }

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Not: return f.children()[0]->kind() == Formula::Kind::Atom;
    default: break;
  }
  for (const auto& c : f.children()) {
    if (!is_nnf(*c)) return false;
  }
  return true;
}

}  // namespace fpria::smt
