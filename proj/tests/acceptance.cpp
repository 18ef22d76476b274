// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "fpria/bench.hpp"
#include "fpria/checks.hpp"
#include "fpria/driver.hpp"
#include "fpria/fuzz.hpp"
#include "fpria/oracle.hpp"
#include "fpria/smt.hpp"
#include "ground.hpp"

using namespace fpria;
using driver::Verdict;

namespace {

const FpFormat kF44 = make_format(4, 4);

struct Outcome {
  bool pass = false;
  std::string detail;
};

driver::BackendConfig z3(double limit) {
  driver::BackendConfig c;
  c.command = {FPRIA_Z3, "-in"};
  c.time_limit = limit;
  return c;
}

bool have_z3() { return *FPRIA_Z3 != 0; }

FormulaPtr load(const std::string& name) {
  return smt::parse_file(std::string(FPRIA_TEST_DATA) + "/" + name).formula();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

Outcome from_report(const checks::Report& r) {
  std::ostringstream d;
  d << r.cases << " cases, " << r.violations << " violations, " << fmt_seconds(r.seconds);
  if (!r.ok()) d << "; first: " << r.first_violation;
  return {r.ok(), d.str()};
}

Outcome rounding_values() {
  const XRat x = XRat::parse("0.1");
  const XRat dn = round_down(x, kF44), up = round_up(x, kF44);
  const bool ok = dn == XRat::parse("0.085546875") && up == XRat::parse("0.114453125");
  return {ok, "round_down(0.1) = " + dn.to_string() + ", round_up(0.1) = " + up.to_string()};
}

// Monolithic verdicts shared with the incremental agreement criterion.
struct Instance {
  std::string name;
  FormulaPtr phi;
  Verdict verdict = Verdict::Unknown;
};
std::vector<Instance> g_instances;

Outcome worked_examples() {
  if (!have_z3()) return {false, "z3 not found"};
  const std::vector<std::tuple<std::string, Verdict>> cases = {
      {"phi.smt2", Verdict::Unsat}, {"phi_prime.smt2", Verdict::Unknown}, {"gt_one.smt2", Verdict::Sat}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& [file, want] : cases) {
    const FormulaPtr phi = load(file);
    for (auto repr : {enc::Representation::Datatype, enc::Representation::Flattened}) {
      driver::SolveOptions o;
      o.repr = repr;
      const Verdict got = driver::solve(*phi, z3(60), o).verdict;
      ok = ok && got == want;
      if (repr == enc::Representation::Datatype) {
        d << file << " " << driver::verdict_name(got) << "; ";
        g_instances.push_back({file, phi, got});
      } else if (got != want) {
        d << file << " flattened " << driver::verdict_name(got) << "; ";
      }
    }
  }
  return {ok, d.str() + "both representations"};
}

Outcome fuzzing() {
  if (!have_z3()) return {false, "z3 not found"};
  constexpr int kFormulas = 500;
  fuzz::FormulaGenerator gen(kF44, 20240601);
  int violations = 0, unknown = 0, failures = 0;
  std::string first;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < kFormulas; ++i) {
    const FormulaPtr phi = gen.next();
    const OracleVerdict truth = brute_force_check(*phi, kF44);
    driver::SolveOptions o;
    o.repr = i % 2 ? enc::Representation::Flattened : enc::Representation::Datatype;
    // Both modes run to completion so each one is checked on its own.
    o.cancel_sibling = false;
    std::string problem;
    Verdict verdict = Verdict::Unknown;
    try {
      const driver::SolveResult r = driver::solve(*phi, z3(20), o);
      verdict = r.verdict;
      if (r.weak->answer == driver::Answer::Unsat && truth == OracleVerdict::Sat) problem = "weak unsat on a sat formula";
      if (r.strong->answer == driver::Answer::Sat && truth == OracleVerdict::Unsat) problem = "strong sat on an unsat formula";
      if (r.backend_failure) {
        ++failures;
        if (first.empty()) first = "backend failure: " + r.weak->detail + " " + r.strong->detail;
      }
    } catch (const driver::SoundnessViolation& e) {
      problem = e.what();
    }
    if (!problem.empty()) {
      ++violations;
      if (first.empty()) first = problem + ": " + smt::print_formula(*phi);
    }
    if (verdict == Verdict::Unknown) ++unknown;
    g_instances.push_back({"fuzz#" + std::to_string(i), phi, verdict});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream d;
  d << kFormulas << " formulas, " << violations << " soundness violations, " << failures << " backend failures, "
    << "unknown rate " << (100.0 * unknown / kFormulas) << "%, " << fmt_seconds(secs);
  if (!first.empty()) d << "; first: " << first;
  return {violations == 0 && failures == 0, d.str()};
}

Outcome ground_differential() {
  if (!have_z3()) return {false, "z3 not found"};
  constexpr int kTerms = 1000;
  fuzz::FormulaGenerator gen(kF44, 77);
  std::vector<TermPtr> terms;
  for (int i = 0; i < kTerms; ++i) terms.push_back(gen.ground_term(4));
  bool ok = true;
  std::size_t mismatches = 0;
  double secs = 0;
  std::string first;
  for (auto repr : {enc::Representation::Datatype, enc::Representation::Flattened}) {
    for (Mode m : {Mode::Weak, Mode::Strong}) {
      enc::EncodeOptions o;
      o.mode = m;
      o.repr = repr;
      const support::GroundReport r = support::ground_differential(terms, o, z3(600));
      ok = ok && r.ok() && r.terms == terms.size();
      mismatches += r.mismatches;
      secs += r.seconds;
      if (first.empty() && !r.ok()) first = r.error.empty() ? r.first_mismatch : r.error;
    }
  }
  std::ostringstream d;
  d << kTerms << " terms x 2 representations x 2 modes, " << mismatches << " mismatches, " << fmt_seconds(secs);
  if (!first.empty()) d << "; first: " << first;
  return {ok, d.str()};
}

std::string verdict_letter(Verdict v) { return v == Verdict::Sat ? "S" : v == Verdict::Unsat ? "U" : "?"; }

Outcome bmc_sweep() {
  if (!have_z3()) return {false, "z3 not found"};
  const std::vector<std::string> ths = {"3", "2.71", "2", "1", "0"};
  bool ok = true;
  double slowest = 0;
  std::ostringstream d;
  for (int k = 1; k <= 3; ++k) {
    const mpq_class max = bench::bmc_real_max(bench::BmcKind::Integrator, k);
    std::string seq;
    int phase = 0;  // 0 Unsat*, 1 Unknown*, 2 Sat*
    bool bracket = true;
    for (const auto& th : ths) {
      bench::BmcInstance inst{bench::BmcKind::Integrator, k, th};
      const FormulaPtr phi = smt::parse_script(bench::gen_bmc(inst), bench::bmc_file_name(inst)).formula();
      driver::SolveOptions o;
      o.repr = enc::Representation::Flattened;
      const driver::SolveResult r = driver::solve(*phi, z3(60), o);
      slowest = std::max(slowest, r.seconds);
      ok = ok && r.seconds < 60 && !r.backend_failure;
      seq += verdict_letter(r.verdict);
      const int p = r.verdict == Verdict::Unsat ? 0 : r.verdict == Verdict::Unknown ? 1 : 2;
      if (p < phase) ok = false;
      phase = std::max(phase, p);
      const mpq_class t = XRat::parse(th).value();
      if (r.verdict == Verdict::Unsat && t < max) bracket = false;
      if (r.verdict == Verdict::Sat && t > max) bracket = false;
      g_instances.push_back({bench::bmc_file_name(inst), phi, r.verdict});
    }
    // The sweep must show both sides of the maximum.
    if (seq.find('U') == std::string::npos || seq.find('S') == std::string::npos) bracket = false;
    ok = ok && bracket;
    d << "k=" << k << " max " << XRat(max).to_string() << " " << seq << "; ";
  }
  d << "slowest solve " << fmt_seconds(slowest);
  return {ok, d.str()};
}

Outcome incremental_agreement() {
  if (!have_z3()) return {false, "z3 not found"};
  if (g_instances.empty()) return {false, "no monolithic verdicts recorded"};
  int disagree = 0, conclusive = 0, gained = 0;
  std::string first;
  for (const auto& inst : g_instances) {
    driver::SolveOptions o;
    o.incremental = true;
    o.repr = enc::Representation::Flattened;
    const Verdict v = driver::solve(*inst.phi, z3(60), o).verdict;
    if (v == Verdict::Unknown) continue;
    ++conclusive;
    if (inst.verdict == Verdict::Unknown) {
      ++gained;
    } else if (v != inst.verdict) {
      ++disagree;
      if (first.empty()) first = inst.name;
    }
  }
  // Early exit: a double-precision formula decided at the smallest step.
  driver::SolveOptions o;
  o.incremental = true;
  const driver::SolveResult r = driver::solve(*load("phi_f64.smt2"), z3(60), o);
  const bool early = r.verdict == Verdict::Unsat && r.weak && r.weak->step == std::pair<int, int>{4, 4};
  std::ostringstream d;
  d << g_instances.size() << " instances, " << conclusive << " conclusive incrementally, " << disagree
    << " disagreements, " << gained << " decided only incrementally; Float64 phi "
    << driver::verdict_name(r.verdict);
  if (r.weak && r.weak->step) d << " at step " << r.weak->step->first << ":" << r.weak->step->second;
  if (!first.empty()) d << "; first disagreement: " << first;
  return {disagree == 0 && early, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"rounding values", rounding_values},
      {"rounding enclosure", [] { return from_report(checks::rounding_enclosure(kF44, 10000, 1)); }},
      {"operation enclosure", [] { return from_report(checks::operation_enclosure(kF44)); }},
      {"comparison table", [] { return from_report(checks::comparison_table(kF44)); }},
      {"worked examples", worked_examples},
      {"fuzzing against brute force", fuzzing},
      {"ground differential", ground_differential},
      {"bmc integrator sweep", bmc_sweep},
      {"incremental agreement", incremental_agreement},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << (i + 1) << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
