#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>

#include "fpria/driver.hpp"
#include "fpria/smt.hpp"

using namespace fpria;
using namespace fpria::driver;

namespace {

FormulaPtr parse_file(const std::string& name) {
  return smt::parse_file(std::string(FPRIA_TEST_DATA) + "/" + name).formula();
}

BackendConfig fake(const std::string& flags, double limit = 10) {
  BackendConfig c;
  c.command = split_command("python3 " + std::string(FPRIA_FAKE_BACKENDS) + "/fake_solver.py " + flags);
  c.time_limit = limit;
  return c;
}

BackendConfig z3(double limit = 60) {
  BackendConfig c;
  c.command = {FPRIA_Z3, "-in"};
  c.time_limit = limit;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kScript = "(set-logic QF_LRA)\n; mode=weak representation=flattened precision=concrete\n(check-sat)\n";

}  // namespace

TEST(Command, SplitsWithQuotes) {
  EXPECT_EQ(split_command("z3 -in"), (std::vector<std::string>{"z3", "-in"}));
  EXPECT_EQ(split_command("  a 'b c'  \"d e\" ''"), (std::vector<std::string>{"a", "b c", "d e", ""}));
}

TEST(Command, EnvironmentSelectsBackend) {
  ::setenv("FPRIA_BACKEND", "cvc5 --lang smt2", 1);
  EXPECT_EQ(default_backend().command, (std::vector<std::string>{"cvc5", "--lang", "smt2"}));
  ::unsetenv("FPRIA_BACKEND");
  EXPECT_EQ(default_backend().command, (std::vector<std::string>{"z3", "-in"}));
  EXPECT_EQ(default_backend().time_limit, 60.0);
}

TEST(Ladder, ClampsAndDeduplicates) {
  const std::vector<std::pair<int, int>> full = {{4, 4}, {5, 11}, {8, 24}, {11, 53}, {15, 113}};
  EXPECT_EQ(default_ladder(), full);
  EXPECT_EQ(clamp_ladder(full, {make_format(4, 4)}), (std::vector<std::pair<int, int>>{{4, 4}}));
  EXPECT_EQ(clamp_ladder(full, {make_format(8, 24)}),
            (std::vector<std::pair<int, int>>{{4, 4}, {5, 11}, {8, 24}}));
  EXPECT_EQ(clamp_ladder(full, {make_format(11, 53)}),
            (std::vector<std::pair<int, int>>{{4, 4}, {5, 11}, {8, 24}, {11, 53}}));
  EXPECT_EQ(clamp_ladder(full, {make_format(8, 24), make_format(11, 53)}).size(), 4u);
  EXPECT_EQ(clamp_ladder(full, {make_format(5, 5)}),
            (std::vector<std::pair<int, int>>{{4, 4}, {5, 5}}));
}

TEST(Process, EchoesLinesAndTimesOut) {
  Process p({"cat"});
  ASSERT_TRUE(p.write("\n  hello  \n"));
  std::string line;
  EXPECT_EQ(p.read_line(line, Clock::now() + std::chrono::seconds(5), {}), Process::Status::Line);
  EXPECT_EQ(line, "hello");
  EXPECT_EQ(p.read_line(line, Clock::now() + std::chrono::milliseconds(100), {}), Process::Status::Timeout);
  std::stop_source stop;
  std::jthread canceller([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    stop.request_stop();
  });
  EXPECT_EQ(p.read_line(line, Clock::now() + std::chrono::seconds(30), stop.get_token()), Process::Status::Stopped);
  p.close_stdin();
  EXPECT_EQ(p.read_line(line, Clock::now() + std::chrono::seconds(5), {}), Process::Status::Eof);
  EXPECT_EQ(WEXITSTATUS(p.wait()), 0);
}

TEST(Process, MissingExecutable) {
  EXPECT_THROW(Process({"/nonexistent/solver"}), std::runtime_error);
}

TEST(Batch, ClassifiesBackendFailures) {
  EXPECT_EQ(run_batch(fake("--weak unsat"), kScript, 10).answer, Answer::Unsat);
  EXPECT_EQ(run_batch(fake("--crash"), kScript, 10).answer, Answer::Crash);
  EXPECT_EQ(run_batch(fake("--garbage"), kScript, 10).answer, Answer::Malformed);
  EXPECT_EQ(run_batch(fake("--weak '(error \"boom\")'"), kScript, 10).answer, Answer::Error);
  const BackendRun hang = run_batch(fake("--hang"), kScript, 0.5);
  EXPECT_EQ(hang.answer, Answer::Timeout);
  EXPECT_LT(hang.seconds, 5);
  const BackendRun missing = run_batch(BackendConfig{{"/nonexistent/solver"}}, kScript, 1);
  EXPECT_EQ(missing.answer, Answer::Crash);
  EXPECT_NE(missing.detail.find("cannot execute"), std::string::npos) << missing.detail;
  EXPECT_EQ(run_batch(fake("--weak timeout"), kScript, 10).answer, Answer::Timeout);
  EXPECT_TRUE(is_failure(Answer::Malformed));
  EXPECT_FALSE(is_failure(Answer::Timeout));
}

TEST(Batch, CrashWithoutOutput) {
  const BackendRun r = run_batch(BackendConfig{{"sh", "-c", "cat >/dev/null; echo bad >&2; exit 3"}}, kScript, 10);
  EXPECT_EQ(r.answer, Answer::Crash);
  EXPECT_NE(r.detail.find("exit status 3"), std::string::npos) << r.detail;
  EXPECT_NE(r.detail.find("bad"), std::string::npos) << r.detail;
}

TEST(Solve, CombinesModeAnswers) {
  const FormulaPtr phi = parse_file("phi.smt2");
  EXPECT_EQ(solve(*phi, fake("--weak unsat --strong unsat")).verdict, Verdict::Unsat);
  EXPECT_EQ(solve(*phi, fake("--weak sat --strong sat")).verdict, Verdict::Sat);
  const SolveResult u = solve(*phi, fake("--weak sat --strong unsat"));
  EXPECT_EQ(u.verdict, Verdict::Unknown);
  EXPECT_FALSE(u.decided_by);
  EXPECT_FALSE(u.backend_failure);
  const SolveResult crash = solve(*phi, fake("--crash"));
  EXPECT_EQ(crash.verdict, Verdict::Unknown);
  EXPECT_TRUE(crash.backend_failure);
}

TEST(Solve, ConclusiveRunCancelsTheOther) {
  const FormulaPtr phi = parse_file("phi.smt2");
  BackendConfig cfg = fake("--answers unsat --strong sat");
  // Weak answers at once; strong would only answer after a long delay.
  cfg.command = split_command("sh -c 'if grep -q \"mode=weak\"; then echo unsat; else sleep 30; echo sat; fi'");
  const SolveResult r = solve(*phi, cfg);
  EXPECT_EQ(r.verdict, Verdict::Unsat);
  EXPECT_EQ(r.decided_by, Mode::Weak);
  ASSERT_TRUE(r.strong);
  EXPECT_EQ(r.strong->answer, Answer::Cancelled);
  EXPECT_LT(r.seconds, 10);
}

TEST(Solve, ContradictionIsReported) {
  const FormulaPtr phi = parse_file("phi.smt2");
  SolveOptions o;
  o.cancel_sibling = false;
  EXPECT_THROW(solve(*phi, fake("--weak unsat --strong sat"), o), SoundnessViolation);
}

TEST(Incremental, StopsAtFirstConclusiveStep) {
  const FormulaPtr phi = parse_file("phi_f64.smt2");
  const std::string log = ::testing::TempDir() + "fpria_incremental.log";
  std::remove(log.c_str());
  const ModeRun r = solve_incremental(*phi, Mode::Weak, fake("--answers sat,unsat --log " + log));
  EXPECT_EQ(r.answer, Answer::Unsat);
  EXPECT_EQ(r.checks, 2);
  ASSERT_TRUE(r.step);
  EXPECT_EQ(*r.step, (std::pair<int, int>{5, 11}));
  EXPECT_FALSE(r.push_pop);
  const std::string sent = slurp(log);
  EXPECT_NE(sent.find("(check-sat-assuming (ri.prec_4_4))"), std::string::npos);
  EXPECT_NE(sent.find("(check-sat-assuming (ri.prec_5_11))"), std::string::npos);
  EXPECT_EQ(sent.find("ri.prec_8_24"), std::string::npos);
}

TEST(Incremental, FallsBackToPushPop) {
  const FormulaPtr phi = parse_file("phi_f64.smt2");
  const std::string log = ::testing::TempDir() + "fpria_pushpop.log";
  std::remove(log.c_str());
  const ModeRun r = solve_incremental(*phi, Mode::Strong, fake("--no-assuming --strong unsat --log " + log));
  EXPECT_EQ(r.answer, Answer::Unsat);
  EXPECT_TRUE(r.push_pop);
  EXPECT_EQ(r.checks, 4);
  const std::string sent = slurp(log);
  EXPECT_NE(sent.find("(push 1)\n(assert ri.prec_11_53)\n(check-sat)"), std::string::npos);
}

TEST(Incremental, TimeoutRestartsTheSession) {
  const FormulaPtr phi = parse_file("phi_f64.smt2");
  const std::string log = ::testing::TempDir() + "fpria_restart.log";
  std::remove(log.c_str());
  // Every restarted backend replays its answer list, so each step times out.
  const ModeRun r = solve_incremental(*phi, Mode::Weak, fake("--answers timeout,unsat --log " + log));
  EXPECT_EQ(r.answer, Answer::Timeout);
  EXPECT_EQ(r.checks, 4);
  const std::string sent = slurp(log);
  std::size_t headers = 0;
  for (std::size_t at = sent.find("(set-logic"); at != std::string::npos; at = sent.find("(set-logic", at + 1)) ++headers;
  EXPECT_EQ(headers, 4u);
}

TEST(Examples, WorkedVerdictsWithZ3) {
  if (!*FPRIA_Z3) GTEST_SKIP() << "z3 not found";
  EXPECT_EQ(solve(*parse_file("phi.smt2"), z3()).verdict, Verdict::Unsat);
  EXPECT_EQ(solve(*parse_file("phi_prime.smt2"), z3()).verdict, Verdict::Unknown);
  EXPECT_EQ(solve(*parse_file("gt_one.smt2"), z3()).verdict, Verdict::Sat);
  const ModeRun weak = solve_once(*parse_file("phi_prime.smt2"), Mode::Weak, z3());
  EXPECT_EQ(weak.answer, Answer::Sat);
  const ModeRun strong = solve_once(*parse_file("gt_one.smt2"), Mode::Strong, z3());
  EXPECT_EQ(strong.answer, Answer::Sat);
}

TEST(Examples, IncrementalEarlyExitWithZ3) {
  if (!*FPRIA_Z3) GTEST_SKIP() << "z3 not found";
  SolveOptions o;
  o.incremental = true;
  const SolveResult r = solve(*parse_file("phi_f64.smt2"), z3(), o);
  EXPECT_EQ(r.verdict, Verdict::Unsat);
  ASSERT_TRUE(r.weak);
  EXPECT_EQ(r.weak->step, (std::pair<int, int>{4, 4}));
  EXPECT_EQ(r.weak->checks, 1);
}
