#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "fpria/encoder.hpp"

namespace fpria::driver {

using Clock = std::chrono::steady_clock;

/** Child process with piped stdin/stdout/stderr. */
class Process {
 public:
  // Throws std::runtime_error when the executable cannot be started.
  explicit Process(const std::vector<std::string>& argv);
  ~Process();
  Process(const Process&) = delete;
  Process& operator=(const Process&) = delete;

  enum class Status { Line, Eof, Timeout, Stopped };

  // Returns false when the child no longer accepts input.
  bool write(const std::string& text);
  void close_stdin();
  // Next non-empty stdout line (trimmed).
  Status read_line(std::string& line, Clock::time_point deadline, const std::stop_token& stop);
  void kill();
  // Reaps the child; returns the raw wait status.
  int wait();
  // Waits until the deadline, then kills; returns the raw wait status.
  int wait_until(Clock::time_point deadline);
  const std::string& stderr_text() const { return err_; }

 private:
  void pump(int timeout_ms);

  int pid_ = -1;
  int in_ = -1, out_ = -1, errfd_ = -1;
  std::string outbuf_, err_;
  bool out_eof_ = false;
  std::optional<int> status_;
};

enum class Answer { Sat, Unsat, Unknown, Timeout, Cancelled, Crash, Malformed, Error };

std::string answer_name(Answer a);
// True for answers that indicate a broken backend rather than a verdict.
bool is_failure(Answer a);

struct BackendConfig {
  std::vector<std::string> command;
  double time_limit = 60.0;  // seconds per solve call
  std::string memory_note;   // advisory only
  bool verbose = false;
};

// Whitespace split honouring single and double quotes.
std::vector<std::string> split_command(const std::string& s);
// FPRIA_BACKEND from the environment, else "z3 -in".
BackendConfig default_backend();

struct BackendRun {
  Answer answer = Answer::Unknown;
  std::string detail;  // error line, stray output or stderr tail
  double seconds = 0;
};

// One-shot script on stdin; the first answer line decides.
BackendRun run_batch(const BackendConfig& cfg, const std::string& script, double time_limit,
                     const std::stop_token& stop = {});

/** Interactive backend session for assumption-based checks. */
class Session {
 public:
  explicit Session(const BackendConfig& cfg);
  bool send(const std::string& text);
  // Sends a check command and reads its answer.
  BackendRun check(const std::string& command, double time_limit, const std::stop_token& stop);
  const std::string& stderr_text() const { return proc_.stderr_text(); }

 private:
  Process proc_;
};

enum class Verdict { Sat, Unsat, Unknown };
std::string verdict_name(Verdict v);

class SoundnessViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ModeRun {
  Answer answer = Answer::Unknown;
  std::string detail;
  double seconds = 0;
  std::optional<std::pair<int, int>> step;  // ladder step of the last check
  int checks = 0;
  bool push_pop = false;  // incremental fallback in use
};

struct SolveResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Mode> decided_by;
  std::optional<ModeRun> weak, strong;
  double seconds = 0;
  // Some run failed (crash, error, malformed output) and none was conclusive.
  bool backend_failure = false;
};

struct SolveOptions {
  enc::Representation repr = enc::Representation::Datatype;
  bool zero_sign_guard = true;
  bool run_weak = true;
  bool run_strong = true;
  bool incremental = false;
  // Stop the other run once one mode is conclusive; off runs both to completion.
  bool cancel_sibling = true;
  std::vector<std::pair<int, int>> ladder;  // empty: default ladder
};

const std::vector<std::pair<int, int>>& default_ladder();
// Steps clamped to the widest bound format; consecutive duplicates removed.
std::vector<std::pair<int, int>> clamp_ladder(const std::vector<std::pair<int, int>>& ladder,
                                              const std::vector<FpFormat>& bounds);

ModeRun solve_once(const Formula& phi, Mode mode, const BackendConfig& cfg, const SolveOptions& opts = {},
                   const std::stop_token& stop = {});
ModeRun solve_incremental(const Formula& phi, Mode mode, const BackendConfig& cfg, const SolveOptions& opts = {},
                          const std::stop_token& stop = {});
// Weak and strong runs in parallel; throws SoundnessViolation on weak-unsat with strong-sat.
SolveResult solve(const Formula& phi, const BackendConfig& cfg, const SolveOptions& opts = {});

}  // namespace fpria::driver
