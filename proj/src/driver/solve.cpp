#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "fpria/driver.hpp"

namespace fpria::driver {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

const std::vector<std::pair<int, int>>& default_ladder() {
  static const std::vector<std::pair<int, int>> ladder = {{4, 4}, {5, 11}, {8, 24}, {11, 53}, {15, 113}};
  return ladder;
}

std::vector<std::pair<int, int>> clamp_ladder(const std::vector<std::pair<int, int>>& ladder,
                                              const std::vector<FpFormat>& bounds) {
  int eb = 0, sb = 0;
  for (const auto& b : bounds) {
    eb = std::max(eb, b.eb());
    sb = std::max(sb, b.sb());
  }
  std::vector<std::pair<int, int>> out;
  for (auto [e, s] : ladder) {
    std::pair<int, int> step{std::min(e, eb), std::min(s, sb)};
    if (out.empty() || out.back() != step) out.push_back(step);
  }
  return out;
}

namespace {

bool conclusive(Mode m, Answer a) { return (m == Mode::Weak && a == Answer::Unsat) || (m == Mode::Strong && a == Answer::Sat); }

enc::EncodeOptions encode_options(Mode mode, const SolveOptions& opts) {
  enc::EncodeOptions eo;
  eo.mode = mode;
  eo.repr = opts.repr;
  eo.zero_sign_guard = opts.zero_sign_guard;
  eo.multi_precision = true;
  return eo;
}

double remaining(Clock::time_point t0, double limit) {
  return limit - std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

ModeRun solve_once(const Formula& phi, Mode mode, const BackendConfig& cfg, const SolveOptions& opts,
                   const std::stop_token& stop) {
  const std::string script = enc::encode(phi, encode_options(mode, opts));
  BackendRun r = run_batch(cfg, script, cfg.time_limit, stop);
  ModeRun run;
  run.answer = r.answer;
  run.detail = r.detail;
  run.seconds = r.seconds;
  run.checks = 1;
  return run;
}

ModeRun solve_incremental(const Formula& phi, Mode mode, const BackendConfig& cfg, const SolveOptions& opts,
                          const std::stop_token& stop) {
  const auto t0 = Clock::now();
  auto root = std::make_shared<Formula>(phi);
  smt::FormatTable table = smt::check_sorts(*root, true);
  enc::EncodeOptions eo = encode_options(mode, opts);
  eo.precision = enc::Precision::Abstract;
  eo.check_sat = false;
  enc::Encoder encoder(eo, table);
  encoder.assert_expr(encoder.formula(smt::to_nnf(root)));
  const std::string header = "(set-logic " + encoder.logic() + ")\n" + encoder.definitions();

  const auto steps = clamp_ladder(opts.ladder.empty() ? default_ladder() : opts.ladder, table.formats);
  ModeRun run;
  auto finish = [&](const BackendRun& r) {
    run.answer = r.answer;
    run.detail = r.detail;
    run.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return run;
  };

  std::optional<Session> session;
  auto open = [&]() -> std::optional<BackendRun> {
    try {
      session.emplace(cfg);
    } catch (const std::runtime_error& e) {
      return BackendRun{Answer::Crash, e.what(), 0};
    }
    if (!session->send(header)) return BackendRun{Answer::Crash, "backend closed its input", 0};
    return std::nullopt;
  };
  if (auto err = open()) return finish(*err);

  BackendRun last{Answer::Unknown, {}, 0};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double budget = std::max(0.05, remaining(t0, cfg.time_limit) / static_cast<double>(steps.size() - i));
    const enc::PrecisionStep ps = enc::define_precision_assumptions(table.formats, steps[i]);
    run.step = steps[i];
    ++run.checks;
    session->send(ps.declarations);
    BackendRun r;
    if (!run.push_pop) {
      r = session->check("(check-sat-assuming (" + ps.guard + "))", budget, stop);
      if (r.answer == Answer::Error || r.answer == Answer::Malformed) run.push_pop = true;
    }
    if (run.push_pop) {
      r = session->check("(push 1)\n(assert " + ps.guard + ")\n(check-sat)", budget, stop);
      session->send("(pop 1)\n");
    }
    if (conclusive(mode, r.answer) || r.answer == Answer::Cancelled || is_failure(r.answer)) return finish(r);
    last = r;
    if (r.answer == Answer::Timeout && i + 1 < steps.size()) {
      session.reset();
      if (auto err = open()) return finish(*err);
    }
  }
  return finish(last);
}

SolveResult solve(const Formula& phi, const BackendConfig& cfg, const SolveOptions& opts) {
  const auto t0 = Clock::now();
  SolveResult result;
  std::stop_source stop;
  std::mutex mu;
  std::exception_ptr error;

  auto worker = [&](Mode mode) {
    try {
      ModeRun r = opts.incremental ? solve_incremental(phi, mode, cfg, opts, stop.get_token())
                                   : solve_once(phi, mode, cfg, opts, stop.get_token());
      std::lock_guard lock(mu);
      if (conclusive(mode, r.answer)) {
        if (!result.decided_by) result.decided_by = mode;
        if (opts.cancel_sibling) stop.request_stop();
      }
      (mode == Mode::Weak ? result.weak : result.strong) = std::move(r);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      stop.request_stop();
    }
  };

  {
    std::vector<std::jthread> threads;
    if (opts.run_weak) threads.emplace_back(worker, Mode::Weak);
    if (opts.run_strong) threads.emplace_back(worker, Mode::Strong);
  }
  if (error) std::rethrow_exception(error);

  const bool weak_unsat = result.weak && result.weak->answer == Answer::Unsat;
  const bool strong_sat = result.strong && result.strong->answer == Answer::Sat;
  if (weak_unsat && strong_sat) {
    throw SoundnessViolation("weak encoding is unsat while strong encoding is sat");
  }
  if (weak_unsat) {
    result.verdict = Verdict::Unsat;
  } else if (strong_sat) {
    result.verdict = Verdict::Sat;
  } else {
    result.decided_by.reset();
    for (const auto* r : {&result.weak, &result.strong}) {
      if (*r && is_failure((*r)->answer)) result.backend_failure = true;
    }
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

}  // namespace fpria::driver
