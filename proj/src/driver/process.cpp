#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <mutex>

#include "fpria/driver.hpp"

namespace fpria::driver {

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

Process::Process(const std::vector<std::string>& argv) {
  if (argv.empty()) throw std::runtime_error("empty backend command");
  ignore_sigpipe();
  int pin[2], pout[2], perr[2], pexec[2];
  if (::pipe2(pin, O_CLOEXEC) || ::pipe2(pout, O_CLOEXEC) || ::pipe2(perr, O_CLOEXEC) || ::pipe2(pexec, O_CLOEXEC)) {
    throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
  }
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  pid_ = ::fork();
  if (pid_ < 0) throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    ::dup2(pin[0], 0);
    ::dup2(pout[1], 1);
    ::dup2(perr[1], 2);
    ::execvp(args[0], args.data());
    int e = errno;
    [[maybe_unused]] auto n = ::write(pexec[1], &e, sizeof e);
    ::_exit(127);
  }
  ::close(pin[0]);
  ::close(pout[1]);
  ::close(perr[1]);
  ::close(pexec[1]);
  int e = 0;
  ssize_t n;
  do {
    n = ::read(pexec[0], &e, sizeof e);
  } while (n < 0 && errno == EINTR);
  ::close(pexec[0]);
  in_ = pin[1];
  out_ = pout[0];
  errfd_ = perr[0];
  if (n == static_cast<ssize_t>(sizeof e)) {
    wait();
    close_fd(in_);
    close_fd(out_);
    close_fd(errfd_);
    throw std::runtime_error("cannot execute '" + argv[0] + "': " + std::strerror(e));
  }
  ::fcntl(in_, F_SETFL, O_NONBLOCK);
  ::fcntl(out_, F_SETFL, O_NONBLOCK);
  ::fcntl(errfd_, F_SETFL, O_NONBLOCK);
}

Process::~Process() {
  kill();
  wait();
  close_fd(in_);
  close_fd(out_);
  close_fd(errfd_);
}

void Process::pump(int timeout_ms) {
  pollfd fds[2];
  int n = 0;
  if (out_ >= 0 && !out_eof_) fds[n++] = {out_, POLLIN, 0};
  if (errfd_ >= 0) fds[n++] = {errfd_, POLLIN, 0};
  if (n == 0) return;
  if (::poll(fds, n, timeout_ms) <= 0) return;
  char buf[4096];
  for (int i = 0; i < n; ++i) {
    if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
    ssize_t r = ::read(fds[i].fd, buf, sizeof buf);
    if (r > 0) {
      (fds[i].fd == out_ ? outbuf_ : err_).append(buf, r);
    } else if (r == 0) {
      if (fds[i].fd == out_) {
        out_eof_ = true;
      } else {
        close_fd(errfd_);
      }
    }
  }
  if (err_.size() > (1u << 20)) err_.erase(0, err_.size() - (1u << 19));
}

bool Process::write(const std::string& text) {
  std::size_t off = 0;
  while (off < text.size()) {
    if (in_ < 0) return false;
    pollfd fd{in_, POLLOUT, 0};
    if (::poll(&fd, 1, 10) > 0) {
      ssize_t w = ::write(in_, text.data() + off, text.size() - off);
      if (w < 0) {
        if (errno == EAGAIN || errno == EINTR) continue;
        close_fd(in_);
        return false;
      }
      off += static_cast<std::size_t>(w);
    }
    pump(0);
  }
  return true;
}

void Process::close_stdin() { close_fd(in_); }

Process::Status Process::read_line(std::string& line, Clock::time_point deadline, const std::stop_token& stop) {
  for (;;) {
    std::size_t nl;
    while ((nl = outbuf_.find('\n')) != std::string::npos) {
      line = trim(outbuf_.substr(0, nl));
      outbuf_.erase(0, nl + 1);
      if (!line.empty()) return Status::Line;
    }
    if (out_eof_) {
      line = trim(outbuf_);
      outbuf_.clear();
      return line.empty() ? Status::Eof : Status::Line;
    }
    if (stop.stop_requested()) return Status::Stopped;
    const auto now = Clock::now();
    if (now >= deadline) return Status::Timeout;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pump(static_cast<int>(std::clamp<long long>(left, 1, 50)));
  }
}

void Process::kill() {
  if (pid_ > 0 && !status_) ::kill(pid_, SIGKILL);
}

int Process::wait() {
  if (status_) return *status_;
  if (pid_ <= 0) return 0;
  int st = 0;
  while (::waitpid(pid_, &st, 0) < 0 && errno == EINTR) {
  }
  status_ = st;
  return st;
}

int Process::wait_until(Clock::time_point deadline) {
  while (!status_ && pid_ > 0) {
    int st = 0;
    pid_t r = ::waitpid(pid_, &st, WNOHANG);
    if (r == pid_) {
      status_ = st;
      break;
    }
    if (Clock::now() >= deadline) {
      kill();
      return wait();
    }
    pump(10);
  }
  return status_.value_or(0);
}

}  // namespace fpria::driver
