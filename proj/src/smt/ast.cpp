#include "fpria/ast.hpp"

#include <functional>

namespace fpria {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

bool operator==(const RoundingSite& a, const RoundingSite& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == RoundingSite::Kind::Concrete) return a.mode == b.mode;
  if (a.kind == RoundingSite::Kind::Var) return a.name == b.name;
  return true;
}

void Term::finish() {
  std::size_t h = mix(static_cast<std::size_t>(kind_), static_cast<std::size_t>(fmt_.eb() * 131 + fmt_.sb()));
  switch (kind_) {
    case Kind::Literal:
      h = mix(h, std::hash<std::string>{}(value_.to_bits(fmt_).get_str(16)));
      break;
    case Kind::Var:
      h = mix(h, std::hash<std::string>{}(name_));
      break;
    case Kind::Unary:
      h = mix(mix(h, static_cast<std::size_t>(op_)), lhs_->hash());
      has_unspecified_ = lhs_->has_unspecified_;
      break;
    case Kind::Binary:
      h = mix(mix(h, static_cast<std::size_t>(op_)), static_cast<std::size_t>(rm_.kind));
      h = mix(mix(h, lhs_->hash()), rhs_->hash());
      has_unspecified_ = rm_.kind == RoundingSite::Kind::Unspecified || lhs_->has_unspecified_ ||
                         rhs_->has_unspecified_;
      break;
  }
  hash_ = h;
}

TermPtr Term::literal(FpValue v, FpFormat fmt) {
  auto t = std::make_shared<Term>(std::move(fmt));
  t->kind_ = Kind::Literal;
  t->value_ = std::move(v);
  t->finish();
  return t;
}

TermPtr Term::rounded_literal(const mpq_class& c, RoundingMode m, FpFormat fmt) {
  auto t = std::make_shared<Term>(fmt);
  t->kind_ = Kind::Literal;
  t->source_ = c;
  t->source_->canonicalize();
  t->value_ = fp_round(*t->source_, m, fmt);
  t->source_mode_ = m;
  t->finish();
  return t;
}

TermPtr Term::var(std::string name, FpFormat fmt) {
  auto t = std::make_shared<Term>(std::move(fmt));
  t->kind_ = Kind::Var;
  t->name_ = std::move(name);
  t->finish();
  return t;
}

TermPtr Term::unary(FpaOp op, TermPtr arg) {
  if (!is_unary(op)) throw SortError(std::string(op_name(op)) + " is not a unary operator");
  auto t = std::make_shared<Term>(arg->format());
  t->kind_ = Kind::Unary;
  t->op_ = op;
  t->lhs_ = std::move(arg);
  t->finish();
  return t;
}

TermPtr Term::binary(FpaOp op, RoundingSite rm, TermPtr lhs, TermPtr rhs) {
  if (is_unary(op)) throw SortError(std::string(op_name(op)) + " is not a binary operator");
  if (!(lhs->format() == rhs->format())) {
    throw SortError("fp." + std::string(op_name(op)) + " applied to " + lhs->format().name() + " and " +
                    rhs->format().name());
  }
  auto t = std::make_shared<Term>(lhs->format());
  t->kind_ = Kind::Binary;
  t->op_ = op;
  t->rm_ = std::move(rm);
  t->lhs_ = std::move(lhs);
  t->rhs_ = std::move(rhs);
  t->finish();
  return t;
}

bool structurally_equal(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || !(a.format() == b.format())) return false;
  switch (a.kind()) {
    case Term::Kind::Literal:
      return a.value() == b.value() && a.source() == b.source() &&
             (!a.source() || a.source_mode() == b.source_mode());
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::Unary:
      return a.op() == b.op() && structurally_equal(*a.lhs(), *b.lhs());
    case Term::Kind::Binary:
      return a.op() == b.op() && a.rm() == b.rm() && structurally_equal(*a.lhs(), *b.lhs()) &&
             structurally_equal(*a.rhs(), *b.rhs());
  }
  return false;
}

FormulaPtr Formula::atom(Rel rel, TermPtr lhs, TermPtr rhs) {
  if (!(lhs->format() == rhs->format())) {
    throw SortError("comparison between " + lhs->format().name() + " and " + rhs->format().name());
  }
  auto f = std::make_shared<Formula>();
  f->kind_ = Kind::Atom;
  f->rel_ = rel;
  f->lhs_ = std::move(lhs);
  f->rhs_ = std::move(rhs);
  return f;
}

FormulaPtr Formula::negation(FormulaPtr g) {
  auto f = std::make_shared<Formula>();
  f->kind_ = Kind::Not;
  f->children_.push_back(std::move(g));
  return f;
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> fs) {
  auto f = std::make_shared<Formula>();
  f->kind_ = Kind::And;
  f->children_ = std::move(fs);
  return f;
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> fs) {
  auto f = std::make_shared<Formula>();
  f->kind_ = Kind::Or;
  f->children_ = std::move(fs);
  return f;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Formula::Kind::Atom) {
    return a.rel() == b.rel() && structurally_equal(*a.lhs(), *b.lhs()) && structurally_equal(*a.rhs(), *b.rhs());
  }
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!structurally_equal(*a.children()[i], *b.children()[i])) return false;
  }
  return true;
}

namespace {

template <typename TermFn>
void walk_terms(const Formula& f, TermFn&& fn) {
  if (f.kind() == Formula::Kind::Atom) {
    fn(*f.lhs());
    fn(*f.rhs());
    return;
  }
  for (const auto& c : f.children()) walk_terms(*c, fn);
}

template <typename NodeFn>
void walk_nodes(const Term& t, NodeFn&& fn) {
  fn(t);
  if (t.lhs()) walk_nodes(*t.lhs(), fn);
  if (t.rhs()) walk_nodes(*t.rhs(), fn);
}

}  // namespace

std::vector<std::pair<std::string, FpFormat>> free_vars(const Formula& f) {
  std::vector<std::pair<std::string, FpFormat>> out;
  std::set<std::string> seen;
  walk_terms(f, [&](const Term& t) {
    walk_nodes(t, [&](const Term& n) {
      if (n.kind() == Term::Kind::Var && seen.insert(n.name()).second) out.emplace_back(n.name(), n.format());
    });
  });
  return out;
}

std::vector<std::string> mode_vars(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  walk_terms(f, [&](const Term& t) {
    walk_nodes(t, [&](const Term& n) {
      if (n.kind() == Term::Kind::Binary && n.rm().kind == RoundingSite::Kind::Var && seen.insert(n.rm().name).second) {
        out.push_back(n.rm().name);
      }
    });
  });
  return out;
}

std::size_t count_unspecified_sites(const Formula& f) {
  std::size_t n = 0;
  walk_terms(f, [&](const Term& t) {
    walk_nodes(t, [&](const Term& node) {
      if (node.kind() == Term::Kind::Binary && node.rm().kind == RoundingSite::Kind::Unspecified) ++n;
    });
  });
  return n;
}

std::size_t count_ops(const Formula& f) {
  std::size_t n = 0;
  walk_terms(f, [&](const Term& t) {
    walk_nodes(t, [&](const Term& node) {
      if (node.kind() == Term::Kind::Unary || node.kind() == Term::Kind::Binary) ++n;
    });
  });
  return n;
}

}  // namespace fpria
