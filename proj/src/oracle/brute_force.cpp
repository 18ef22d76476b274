#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "fpria/oracle.hpp"
#include "fpria/smt.hpp"

namespace fpria {

namespace {

using Id = std::uint32_t;
using ValueSet = std::vector<Id>;

// Enumerated values of a format with cached operation results.
class Domain {
 public:
  explicit Domain(const FpFormat& fmt) : fmt_(fmt), values_(enumerate_fp(fmt)) {
    const std::size_t n = values_.size();
    key_.resize(n);
    long k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      // Ascending enumeration; -0 and +0 share a key.
      if (i > 0 && !(values_[i].is_zero() && values_[i - 1].is_zero())) ++k;
      key_[i] = k;
      ids_.emplace(values_[i].to_bits(fmt).get_str(16), static_cast<Id>(i));
    }
    nan_id_ = static_cast<Id>(n - 1);
    dense_ = n <= 1024;
    if (dense_) {
      for (auto& t : table_) t.assign(n * n * kAllModes.size(), kUnset);
    }
  }

  std::size_t size() const { return values_.size(); }
  const FpValue& value(Id i) const { return values_[i]; }
  Id id_of(const FpValue& v) const { return ids_.at(v.to_bits(fmt_).get_str(16)); }

  Id apply(FpaOp op, RoundingMode m, Id a, Id b) {
    if (op == FpaOp::Neg || op == FpaOp::Abs) return id_of(fp_eval_op(op, m, values_[a], values_[b], fmt_));
    const std::size_t oi = static_cast<std::size_t>(op) - 2;
    const std::size_t key = (static_cast<std::size_t>(a) * values_.size() + b) * kAllModes.size() + static_cast<std::size_t>(m);
    std::lock_guard<std::mutex> lock(mu_);
    if (dense_) {
      Id& slot = table_[oi][key];
      if (slot == kUnset) slot = id_of(fp_eval_op(op, m, values_[a], values_[b], fmt_));
      return slot;
    }
    auto [it, fresh] = sparse_[oi].try_emplace(key, kUnset);
    if (fresh) it->second = id_of(fp_eval_op(op, m, values_[a], values_[b], fmt_));
    return it->second;
  }

  bool rel(Rel r, Id a, Id b) const {
    if (r == Rel::SeqEq) return a == b;
    if (a == nan_id_ || b == nan_id_) return false;
    switch (r) {
      case Rel::FpEq: return key_[a] == key_[b];
      case Rel::Ge: return key_[a] >= key_[b];
      case Rel::Gt: return key_[a] > key_[b];
      default: return false;
    }
  }

  static std::shared_ptr<Domain> get(const FpFormat& fmt) {
    static std::mutex mu;
    static std::map<FpFormat, std::shared_ptr<Domain>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& d = cache[fmt];
    if (!d) d = std::make_shared<Domain>(fmt);
    return d;
  }

 private:
  static constexpr Id kUnset = 0xffffffffu;
  FpFormat fmt_;
  std::vector<FpValue> values_;
  std::vector<long> key_;
  std::unordered_map<std::string, Id> ids_;
  Id nan_id_ = 0;
  bool dense_ = false;
  std::mutex mu_;
  std::vector<Id> table_[4];
  std::unordered_map<std::size_t, Id> sparse_[4];
};

struct Node {
  Term::Kind kind;
  FpaOp op = FpaOp::Neg;
  RoundingSite rm;
  int lhs = -1, rhs = -1;
  int var = -1;
  Id literal = 0;
  int depth = -1;
};

struct AtomRec {
  Rel rel;
  bool negative;
  int lhs, rhs;
  int depth;
};

struct FNode {
  enum class Kind { Atom, And, Or } kind;
  int atom = -1;
  std::vector<int> children;
};

enum class Tri : std::uint8_t { False, True, Unknown };

class Search {
 public:
  Search(const Formula& nnf, const FpFormat& fmt) : fmt_(fmt), dom_(Domain::get(fmt)) {
    vars_ = free_vars(nnf);
    for (const auto& [name, f] : vars_) {
      if (!(f == fmt)) throw std::invalid_argument("variable '" + name + "' is not over " + fmt.name());
    }
    mvars_ = mode_vars(nnf);
    root_ = build(nnf);
    levels_.resize(vars_.size() + 1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) levels_[nodes_[i].depth + 1].push_back(static_cast<int>(i));
    atom_levels_.resize(vars_.size() + 1);
    for (std::size_t i = 0; i < atoms_.size(); ++i) atom_levels_[atoms_[i].depth + 1].push_back(static_cast<int>(i));
  }

  BruteForceResult run() {
    const double combos = std::pow(static_cast<double>(dom_->size()), static_cast<double>(vars_.size())) *
                          std::pow(5.0, static_cast<double>(mvars_.size()));
    if (combos > 1e8) {
      throw std::length_error("brute force over " + fmt_.name() + " needs " + std::to_string(combos) +
                              " assignments (limit 1e8)");
    }
    BruteForceResult res;
    sets_.assign(nodes_.size(), {});
    atom_val_.assign(atoms_.size(), Tri::Unknown);
    assign_.assign(vars_.size(), 0);
    std::vector<std::size_t> mv(mvars_.size(), 0);
    while (true) {
      mode_of_.clear();
      for (std::size_t i = 0; i < mvars_.size(); ++i) mode_of_[mvars_[i]] = kAllModes[mv[i]];
      if (level(0, res)) {
        res.verdict = OracleVerdict::Sat;
        for (std::size_t i = 0; i < vars_.size(); ++i) res.witness[vars_[i].first] = dom_->value(assign_[i]);
        res.mode_witness = mode_of_;
        return res;
      }
      std::size_t i = 0;
      while (i < mv.size() && ++mv[i] == kAllModes.size()) mv[i++] = 0;
      if (i == mv.size()) break;
    }
    res.verdict = OracleVerdict::Unsat;
    return res;
  }

 private:
  int build_term(const Term& t) {
    Node n;
    n.kind = t.kind();
    if (!(t.format() == fmt_)) throw std::invalid_argument("term is not over " + fmt_.name());
    switch (t.kind()) {
      case Term::Kind::Literal:
        n.literal = dom_->id_of(t.value());
        break;
      case Term::Kind::Var:
        for (std::size_t i = 0; i < vars_.size(); ++i) {
          if (vars_[i].first == t.name()) n.var = static_cast<int>(i);
        }
        n.depth = n.var;
        break;
      case Term::Kind::Unary:
        n.op = t.op();
        n.lhs = build_term(*t.lhs());
        n.depth = nodes_[n.lhs].depth;
        break;
      case Term::Kind::Binary:
        n.op = t.op();
        n.rm = t.rm();
        n.lhs = build_term(*t.lhs());
        n.rhs = build_term(*t.rhs());
        n.depth = std::max(nodes_[n.lhs].depth, nodes_[n.rhs].depth);
        break;
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int build(const Formula& f) {
    FNode fn;
    switch (f.kind()) {
      case Formula::Kind::Atom:
      case Formula::Kind::Not: {
        const Formula& a = f.kind() == Formula::Kind::Not ? *f.children()[0] : f;
        if (a.kind() != Formula::Kind::Atom) throw std::logic_error("formula is not in negation normal form");
        AtomRec r{a.rel(), f.kind() == Formula::Kind::Not, build_term(*a.lhs()), build_term(*a.rhs()), -1};
        r.depth = std::max(nodes_[r.lhs].depth, nodes_[r.rhs].depth);
        atoms_.push_back(r);
        fn.kind = FNode::Kind::Atom;
        fn.atom = static_cast<int>(atoms_.size()) - 1;
        break;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or:
        fn.kind = f.kind() == Formula::Kind::And ? FNode::Kind::And : FNode::Kind::Or;
        for (const auto& c : f.children()) fn.children.push_back(build(*c));
        break;
    }
    fnodes_.push_back(std::move(fn));
    return static_cast<int>(fnodes_.size()) - 1;
  }

  void eval_node(int i) {
    const Node& n = nodes_[i];
    ValueSet& out = sets_[i];
    out.clear();
    switch (n.kind) {
      case Term::Kind::Literal: out.push_back(n.literal); return;
      case Term::Kind::Var: out.push_back(assign_[n.var]); return;
      case Term::Kind::Unary:
        for (Id a : sets_[n.lhs]) out.push_back(dom_->apply(n.op, RoundingMode::RNE, a, a));
        break;
      case Term::Kind::Binary: {
        RoundingMode single = n.rm.kind == RoundingSite::Kind::Var ? mode_of_.at(n.rm.name) : n.rm.mode;
        for (Id a : sets_[n.lhs]) {
          for (Id b : sets_[n.rhs]) {
            if (n.rm.kind == RoundingSite::Kind::Unspecified) {
              for (RoundingMode m : kAllModes) out.push_back(dom_->apply(n.op, m, a, b));
            } else {
              out.push_back(dom_->apply(n.op, single, a, b));
            }
          }
        }
        break;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  bool eval_atom(const AtomRec& a) const {
    for (Id x : sets_[a.lhs]) {
      for (Id y : sets_[a.rhs]) {
        if (dom_->rel(a.rel, x, y) != a.negative) return true;
      }
    }
    return false;
  }

  Tri eval3(int fi) const {
    const FNode& f = fnodes_[fi];
    if (f.kind == FNode::Kind::Atom) return atom_val_[f.atom];
    const bool conj = f.kind == FNode::Kind::And;
    bool unknown = false;
    for (int c : f.children) {
      Tri v = eval3(c);
      if (v == Tri::Unknown) {
        unknown = true;
      } else if ((v == Tri::True) != conj) {
        return v;
      }
    }
    if (unknown) return Tri::Unknown;
    return conj ? Tri::True : Tri::False;
  }

  void settle(std::size_t slot) {
    for (int i : levels_[slot]) eval_node(i);
    for (int i : atom_levels_[slot]) atom_val_[i] = eval_atom(atoms_[i]) ? Tri::True : Tri::False;
  }

  // Assigns variables from index l onward; ground parts are settled at l = 0.
  bool level(std::size_t l, BruteForceResult& res) {
    if (l == 0) {
      for (auto& v : atom_val_) v = Tri::Unknown;
      settle(0);
      Tri t = eval3(root_);
      if (t != Tri::Unknown) {
        ++res.assignments_checked;
        return t == Tri::True;
      }
    }
    if (l == vars_.size()) {
      ++res.assignments_checked;
      return eval3(root_) == Tri::True;
    }
    for (Id v = 0; v < dom_->size(); ++v) {
      assign_[l] = v;
      for (std::size_t d = l + 1; d < atom_levels_.size(); ++d) {
        for (int i : atom_levels_[d]) atom_val_[i] = Tri::Unknown;
      }
      settle(l + 1);
      Tri t = eval3(root_);
      if (t == Tri::False) {
        ++res.assignments_checked;
        continue;
      }
      if (t == Tri::True) {
        // Fix the remaining variables to an arbitrary value for the witness.
        for (std::size_t r = l + 1; r < vars_.size(); ++r) assign_[r] = 0;
        ++res.assignments_checked;
        return true;
      }
      if (level(l + 1, res)) return true;
    }
    return false;
  }

  FpFormat fmt_;
  std::shared_ptr<Domain> dom_;
  std::vector<std::pair<std::string, FpFormat>> vars_;
  std::vector<std::string> mvars_;
  std::vector<Node> nodes_;
  std::vector<AtomRec> atoms_;
  std::vector<FNode> fnodes_;
  int root_ = -1;
  std::vector<std::vector<int>> levels_, atom_levels_;
  std::vector<ValueSet> sets_;
  std::vector<Tri> atom_val_;
  std::vector<Id> assign_;
  std::map<std::string, RoundingMode> mode_of_;
};

}  // namespace

BruteForceResult brute_force_solve(const Formula& phi, const FpFormat& fmt) {
  FormulaPtr nnf = smt::to_nnf(std::make_shared<Formula>(phi));
  return Search(*nnf, fmt).run();
}

OracleVerdict brute_force_check(const Formula& phi, const FpFormat& fmt) { return brute_force_solve(phi, fmt).verdict; }

}  // namespace fpria
