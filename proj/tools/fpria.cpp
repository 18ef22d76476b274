// fpria command-line front end: translate, solve, bench, oracle.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "fpria/bench.hpp"
#include "fpria/checks.hpp"
#include "fpria/driver.hpp"
#include "fpria/oracle.hpp"
#include "fpria/smt.hpp"

namespace {

using namespace fpria;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::pair<int, int> parse_pair(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("expected eb:sb, got '" + s + "'");
  try {
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("expected eb:sb, got '" + s + "'");
  }
}

FpFormat parse_format(const std::string& s) {
  auto [eb, sb] = parse_pair(s);
  return make_format(eb, sb);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Script load_script(const std::string& path) {
  return smt::parse_script(read_input(path), path == "-" ? "<stdin>" : path);
}

struct TranslateArgs {
  std::string input, output, mode = "weak", logic = "auto";
  bool flatten = false, abstract = false, no_guard = false;
};

int run_translate(const TranslateArgs& a) {
  Script s = load_script(a.input);
  enc::EncodeOptions o;
  o.mode = a.mode == "strong" ? Mode::Strong : Mode::Weak;
  o.repr = a.flatten ? enc::Representation::Flattened : enc::Representation::Datatype;
  o.precision = a.abstract ? enc::Precision::Abstract : enc::Precision::Concrete;
  o.multi_precision = true;
  o.zero_sign_guard = !a.no_guard;
  o.logic = a.logic == "linear" ? enc::LogicHint::Linear
            : a.logic == "nonlinear" ? enc::LogicHint::Nonlinear
                                     : enc::LogicHint::Auto;
  write_output(a.output, enc::encode(*s.formula(), o));
  return 0;
}

struct SolveArgs {
  std::string input, mode = "both", backend, precision_list;
  double timeout = 60;
  bool incremental = false, flatten = false, no_guard = false, verbose = false;
};

void print_run(const char* label, const std::optional<driver::ModeRun>& r) {
  if (!r) return;
  std::cout << label << ": " << driver::answer_name(r->answer) << " in " << r->seconds << "s";
  if (r->step) std::cout << ", last ladder step " << r->step->first << ":" << r->step->second;
  if (r->checks > 1) std::cout << ", " << r->checks << " checks";
  if (r->push_pop) std::cout << ", push/pop fallback";
  std::cout << "\n";
}

int run_solve(const SolveArgs& a) {
  Script s = load_script(a.input);
  driver::BackendConfig cfg = driver::default_backend();
  if (!a.backend.empty()) cfg.command = driver::split_command(a.backend);
  if (cfg.command.empty()) throw UsageError("empty backend command");
  cfg.time_limit = a.timeout;
  cfg.verbose = a.verbose;
  driver::SolveOptions o;
  o.repr = a.flatten ? enc::Representation::Flattened : enc::Representation::Datatype;
  o.zero_sign_guard = !a.no_guard;
  o.incremental = a.incremental;
  o.run_weak = a.mode != "strong";
  o.run_strong = a.mode != "weak";
  for (const auto& p : split_list(a.precision_list)) o.ladder.push_back(parse_pair(p));

  driver::SolveResult r;
  try {
    r = driver::solve(*s.formula(), cfg, o);
  } catch (const driver::SoundnessViolation& e) {
    std::cout << "unknown\n";
    std::cerr << "fpria: internal soundness violation: " << e.what() << "\n";
    return 2;
  }
  std::cout << driver::verdict_name(r.verdict) << "\n";
  if (a.verbose) {
    if (r.decided_by) std::cout << "decided by: " << mode_name(*r.decided_by) << "\n";
    print_run("weak", r.weak);
    print_run("strong", r.strong);
    std::cout << "wall time: " << r.seconds << "s\n";
  }
  if (r.backend_failure) {
    for (const auto* m : {&r.weak, &r.strong}) {
      if (*m && driver::is_failure((*m)->answer)) {
        std::cerr << "fpria: backend " << driver::answer_name((*m)->answer) << ": " << (*m)->detail << "\n";
      }
    }
    return 2;
  }
  return 0;
}

struct BmcArgs {
  std::string system = "integrator", ks = "1", ths = "0", format = "11:53", outdir;
};

int run_bmc(const BmcArgs& a) {
  bench::BmcInstance inst;
  inst.system = bench::parse_bmc_kind(a.system);
  inst.fmt = parse_format(a.format);
  const auto ks = split_list(a.ks);
  const auto ths = split_list(a.ths);
  if (ks.empty() || ths.empty()) throw UsageError("--k and --th need at least one value");
  for (const auto& k : ks) {
    for (const auto& th : ths) {
      try {
        inst.k = std::stoi(k);
      } catch (const std::exception&) {
        throw UsageError("bad depth '" + k + "'");
      }
      XRat::parse(th);
      inst.th = th;
      const std::string text = bench::gen_bmc(inst);
      if (a.outdir.empty()) {
        std::cout << text;
      } else {
        std::filesystem::create_directories(a.outdir);
        const auto path = std::filesystem::path(a.outdir) / bench::bmc_file_name(inst);
        write_output(path.string(), text);
        std::cerr << path.string() << "\n";
      }
    }
  }
  return 0;
}

struct Ra2FpaArgs {
  std::string input, output, format = "11:53";
  bool no_nan_guard = false;
};

int run_ra2fpa(const Ra2FpaArgs& a) {
  bench::RaToFpaOptions o;
  o.assert_not_nan = !a.no_nan_guard;
  write_output(a.output, bench::ra_to_fpa(read_input(a.input), parse_format(a.format), o));
  return 0;
}

int run_oracle_check(const std::string& input) {
  Script s = load_script(input);
  const FpFormat fmt = smt::check_sorts(s).ambient();
  BruteForceResult r = brute_force_solve(*s.formula(), fmt);
  std::cout << verdict_name(r.verdict) << "\n";
  for (const auto& [name, v] : r.witness) std::cout << name << " = " << v.to_string(fmt) << "\n";
  for (const auto& [name, m] : r.mode_witness) std::cout << name << " = " << mode_name(m) << "\n";
  return 0;
}

int run_oracle_suite(const std::string& format, int samples, std::uint64_t seed) {
  const FpFormat fmt = parse_format(format);
  bool ok = true;
  for (const auto& r : {checks::rounding_enclosure(fmt, samples, seed), checks::operation_enclosure(fmt),
                        checks::comparison_table(fmt)}) {
    ok = ok && r.ok();
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.violations
              << " violations (" << r.seconds << "s)";
    std::cout << "\n";
    if (!r.ok()) std::cout << "FAIL " << r.first_violation << "\n";
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval-based solving of floating-point constraints via real arithmetic"};
  app.require_subcommand(1);

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "Write the interval encoding of an FPA script");
  translate->add_option("input", ta.input, "FPA SMT-LIB file ('-' for stdin)")->required();
  translate->add_option("--mode", ta.mode, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
  translate->add_flag("--flatten", ta.flatten, "Three Real/Bool symbols per interval instead of a datatype");
  translate->add_flag("--abstract", ta.abstract, "Symbolic error parameters for the precision ladder");
  translate->add_option("--logic", ta.logic, "auto, linear or nonlinear")
      ->check(CLI::IsMember({"auto", "linear", "nonlinear"}));
  translate->add_flag("--no-zero-guard", ta.no_guard, "Literal signed-zero semantics for === and !==");
  translate->add_option("-o,--output", ta.output, "Output path (default stdout)");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Decide an FPA script; prints sat, unsat or unknown");
  solve->add_option("input", sa.input, "FPA SMT-LIB file ('-' for stdin)")->required();
  solve->add_option("--mode", sa.mode, "both, weak or strong")->check(CLI::IsMember({"both", "weak", "strong"}));
  solve->add_option("--backend", sa.backend, "Solver command reading SMT-LIB on stdin (default $FPRIA_BACKEND or 'z3 -in')");
  solve->add_option("--timeout", sa.timeout, "Seconds per mode")->check(CLI::PositiveNumber);
  solve->add_flag("--incremental", sa.incremental, "Run the precision ladder with assumption checks");
  solve->add_option("--precision-list", sa.precision_list, "Ladder override, e.g. 4:4,8:24,11:53");
  solve->add_flag("--flatten", sa.flatten, "Flattened interval representation");
  solve->add_flag("--no-zero-guard", sa.no_guard, "Literal signed-zero semantics for === and !==");
  solve->add_flag("-v,--verbose", sa.verbose, "Print provenance after the verdict");

  auto* benchcmd = app.add_subcommand("bench", "Generate benchmark instances");
  benchcmd->require_subcommand(1);
  BmcArgs ba;
  auto* bmc = benchcmd->add_subcommand("bmc", "Bounded model checking unrollings");
  bmc->add_option("--system", ba.system, "integrator, filter or rotation")
      ->check(CLI::IsMember({"integrator", "filter", "rotation"}));
  bmc->add_option("--k", ba.ks, "Comma-separated unrolling depths");
  bmc->add_option("--th", ba.ths, "Comma-separated thresholds");
  bmc->add_option("--format", ba.format, "eb:sb (default 11:53)");
  bmc->add_option("-o,--output-dir", ba.outdir, "Directory for <system>_k<k>_th<th>.smt2 (default stdout)");
  Ra2FpaArgs ra;
  auto* ra2fpa = benchcmd->add_subcommand("ra2fpa", "Translate a real-arithmetic script to floating point");
  ra2fpa->add_option("input", ra.input, "RA SMT-LIB file ('-' for stdin)")->required();
  ra2fpa->add_option("--format", ra.format, "eb:sb (default 11:53)");
  ra2fpa->add_flag("--no-nan-guard", ra.no_nan_guard, "Do not assert that variables are not NaN");
  ra2fpa->add_option("-o,--output", ra.output, "Output path (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive reference checks on small formats");
  oracle->require_subcommand(1);
  std::string oracle_input;
  auto* check = oracle->add_subcommand("check", "Decide a script by enumeration");
  check->add_option("input", oracle_input, "FPA SMT-LIB file")->required();
  std::string suite_format = "4:4";
  int suite_samples = 10000;
  std::uint64_t suite_seed = 1;
  auto* suite = oracle->add_subcommand("suite", "Rounding, operator and comparison sweeps");
  suite->add_option("--format", suite_format, "eb:sb (default 4:4)");
  suite->add_option("--samples", suite_samples, "Random rationals for the rounding sweep");
  suite->add_option("--seed", suite_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*translate) return run_translate(ta);
    if (*solve) return run_solve(sa);
    if (*bmc) return run_bmc(ba);
    if (*ra2fpa) return run_ra2fpa(ra);
    if (*check) return run_oracle_check(oracle_input);
    if (*suite) return run_oracle_suite(suite_format, suite_samples, suite_seed);
  } catch (const std::exception& e) {
    std::cerr << "fpria: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
