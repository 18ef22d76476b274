#include <sys/wait.h>

#include <cctype>
#include <cstdlib>

#include "fpria/driver.hpp"

namespace fpria::driver {

std::string answer_name(Answer a) {
  switch (a) {
    case Answer::Sat: return "sat";
    case Answer::Unsat: return "unsat";
    case Answer::Unknown: return "unknown";
    case Answer::Timeout: return "timeout";
    case Answer::Cancelled: return "cancelled";
    case Answer::Crash: return "crash";
    case Answer::Malformed: return "malformed";
    case Answer::Error: return "error";
  }
  return "?";
}

bool is_failure(Answer a) { return a == Answer::Crash || a == Answer::Malformed || a == Answer::Error; }

std::vector<std::string> split_command(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  bool have = false;
  char quote = 0;
  for (char c : s) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        cur += c;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
      have = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (have) out.push_back(cur);
  return out;
}

BackendConfig default_backend() {
  BackendConfig cfg;
  const char* env = std::getenv("FPRIA_BACKEND");
  cfg.command = split_command(env && *env ? env : "z3 -in");
  return cfg;
}

namespace {

std::string tail(const std::string& s, std::size_t n = 400) { return s.size() <= n ? s : s.substr(s.size() - n); }

Answer classify(const std::string& line) {
  if (line == "sat") return Answer::Sat;
  if (line == "unsat") return Answer::Unsat;
  if (line == "unknown") return Answer::Unknown;
  if (line == "timeout") return Answer::Timeout;
  if (line.rfind("(error", 0) == 0) return Answer::Error;
  return Answer::Malformed;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Clock::time_point deadline_after(double seconds) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

BackendRun read_answer(Process& p, Clock::time_point deadline, const std::stop_token& stop, Clock::time_point t0) {
  BackendRun run;
  std::string line;
  switch (p.read_line(line, deadline, stop)) {
    case Process::Status::Line:
      run.answer = classify(line);
      if (run.answer == Answer::Error || run.answer == Answer::Malformed) run.detail = line;
      break;
    case Process::Status::Timeout: run.answer = Answer::Timeout; break;
    case Process::Status::Stopped: run.answer = Answer::Cancelled; break;
    case Process::Status::Eof: {
      const int st = p.wait_until(Clock::now() + std::chrono::seconds(2));
      run.answer = (WIFSIGNALED(st) || (WIFEXITED(st) && WEXITSTATUS(st) != 0)) ? Answer::Crash : Answer::Malformed;
      run.detail = WIFSIGNALED(st) ? "killed by signal " + std::to_string(WTERMSIG(st))
                                   : "exit status " + std::to_string(WIFEXITED(st) ? WEXITSTATUS(st) : -1);
      if (!p.stderr_text().empty()) run.detail += ": " + tail(p.stderr_text());
      break;
    }
  }
  run.seconds = since(t0);
  return run;
}

}  // namespace

BackendRun run_batch(const BackendConfig& cfg, const std::string& script, double time_limit,
                     const std::stop_token& stop) {
  const auto t0 = Clock::now();
  BackendRun run;
  try {
    Process p(cfg.command);
    p.write(script);
    p.close_stdin();
    run = read_answer(p, deadline_after(time_limit), stop, t0);
    p.kill();
    if (run.answer == Answer::Error && !p.stderr_text().empty()) run.detail += "\n" + tail(p.stderr_text());
  } catch (const std::runtime_error& e) {
    run.answer = Answer::Crash;
    run.detail = e.what();
    run.seconds = since(t0);
  }
  return run;
}

Session::Session(const BackendConfig& cfg) : proc_(cfg.command) {}

bool Session::send(const std::string& text) { return proc_.write(text); }

BackendRun Session::check(const std::string& command, double time_limit, const std::stop_token& stop) {
  const auto t0 = Clock::now();
  if (!proc_.write(command + "\n")) {
    BackendRun run{Answer::Crash, "backend closed its input", since(t0)};
    if (!proc_.stderr_text().empty()) run.detail += ": " + tail(proc_.stderr_text());
    return run;
  }
  return read_answer(proc_, deadline_after(time_limit), stop, t0);
}

}  // namespace fpria::driver
