#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "ladver/smt.hpp"

extern char** environ;

namespace ladver::smt {

namespace {

using Clock = std::chrono::steady_clock;

struct Pipe {
  int fds[2] = {-1, -1};

  bool open() { return pipe(fds) == 0; }
  int& read_end() { return fds[0]; }
  int& write_end() { return fds[1]; }

  ~Pipe() {
    if (fds[0] >= 0) close(fds[0]);
    if (fds[1] >= 0) close(fds[1]);
  }
  void close_end(int& fd) {
    if (fd >= 0) {
      close(fd);
      fd = -1;
    }
  }
};

void set_nonblocking(int fd) {
  int flags = fcntl(fd, F_GETFL, 0);
  if (flags >= 0) fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

// Blocks SIGPIPE for this thread so a write to a dead solver returns EPIPE
// instead of killing the process; pending instances are consumed on restore.
struct SigpipeGuard {
  sigset_t old_set;
  bool was_blocked = false;

  SigpipeGuard() {
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGPIPE);
    pthread_sigmask(SIG_BLOCK, &set, &old_set);
    was_blocked = sigismember(&old_set, SIGPIPE) == 1;
  }
  ~SigpipeGuard() {
    if (was_blocked) return;
    sigset_t pending;
    sigpending(&pending);
    if (sigismember(&pending, SIGPIPE) == 1) {
      int sig = 0;
      sigset_t set;
      sigemptyset(&set);
      sigaddset(&set, SIGPIPE);
      struct timespec zero = {0, 0};
      sigtimedwait(&set, nullptr, &zero);
      (void)sig;
    }
    pthread_sigmask(SIG_SETMASK, &old_set, nullptr);
  }
};

// Kills the solver's whole process group (it was spawned as a group leader,
// so helpers it forked die with it) and reaps the child.
void kill_and_reap(pid_t pid) {
  kill(-pid, SIGKILL);
  kill(pid, SIGKILL);
  int status = 0;
  waitpid(pid, &status, 0);
}

}  // namespace

RunResult run_solver(const std::string& script, const SolverConfig& cfg) {
  Pipe to_child, from_child, err_child;
  if (!to_child.open() || !from_child.open() || !err_child.open()) {
    throw SolverConfigError(std::string("pipe: ") + std::strerror(errno));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child.read_end(), 0);
  posix_spawn_file_actions_adddup2(&actions, from_child.write_end(), 1);
  posix_spawn_file_actions_adddup2(&actions, err_child.write_end(), 2);
  for (int fd : {to_child.fds[0], to_child.fds[1], from_child.fds[0],
                 from_child.fds[1], err_child.fds[0], err_child.fds[1]}) {
    posix_spawn_file_actions_addclose(&actions, fd);
  }

  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);  // own group, for clean group kill

  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(cfg.executable.c_str()));
  for (const std::string& arg : cfg.extra_args) {
    argv.push_back(const_cast<char*>(arg.c_str()));
  }
  argv.push_back(nullptr);

  pid_t pid = -1;
  int rc = posix_spawnp(&pid, cfg.executable.c_str(), &actions, &attr,
                        argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);

  if (rc != 0) {
    throw SolverConfigError("cannot run solver '" + cfg.executable +
                            "': " + std::strerror(rc));
  }

  to_child.close_end(to_child.read_end());
  from_child.close_end(from_child.write_end());
  err_child.close_end(err_child.write_end());

  set_nonblocking(to_child.write_end());
  set_nonblocking(from_child.read_end());
  set_nonblocking(err_child.read_end());

  SigpipeGuard sigpipe_guard;

  const int timeout_ms = std::max(cfg.timeout_ms, 100);
  const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);

  RunResult result;
  std::size_t written = 0;
  bool stdin_open = true;
  bool out_open = true;
  bool err_open = true;
  char buffer[65536];

  while (stdin_open || out_open || err_open) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                         deadline - Clock::now())
                         .count();
    if (remaining <= 0) {
      result.timed_out = true;
      break;
    }

    struct pollfd fds[3];
    int n = 0;
    int stdin_slot = -1, out_slot = -1, err_slot = -1;
    if (stdin_open) {
      stdin_slot = n;
      fds[n++] = {to_child.write_end(), POLLOUT, 0};
    }
    if (out_open) {
      out_slot = n;
      fds[n++] = {from_child.read_end(), POLLIN, 0};
    }
    if (err_open) {
      err_slot = n;
      fds[n++] = {err_child.read_end(), POLLIN, 0};
    }

    int ready = poll(fds, static_cast<nfds_t>(n), static_cast<int>(remaining));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;  // loop re-checks the deadline

    if (stdin_slot >= 0 && (fds[stdin_slot].revents & (POLLOUT | POLLERR | POLLHUP)) != 0) {
      ssize_t w = write(to_child.write_end(), script.data() + written,
                        script.size() - written);
      if (w > 0) {
        written += static_cast<std::size_t>(w);
      } else if (w < 0 && errno != EAGAIN && errno != EINTR) {
        // Solver closed stdin (EPIPE etc.); its own output decides the verdict.
        written = script.size();
      }
      if (written >= script.size()) {
        to_child.close_end(to_child.write_end());
        stdin_open = false;
      }
    }
    if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLERR | POLLHUP)) != 0) {
      ssize_t r = read(from_child.read_end(), buffer, sizeof buffer);
      if (r > 0) {
        result.out.append(buffer, static_cast<std::size_t>(r));
      } else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR)) {
        from_child.close_end(from_child.read_end());
        out_open = false;
      }
    }
    if (err_slot >= 0 && (fds[err_slot].revents & (POLLIN | POLLERR | POLLHUP)) != 0) {
      ssize_t r = read(err_child.read_end(), buffer, sizeof buffer);
      if (r > 0) {
        result.err.append(buffer, static_cast<std::size_t>(r));
      } else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR)) {
        err_child.close_end(err_child.read_end());
        err_open = false;
      }
    }
  }

  if (result.timed_out) {
    kill_and_reap(pid);
    result.exit_code = -SIGKILL;
    return result;
  }

  // Streams are closed; wait for exit, but never past the deadline.
  while (true) {
    int status = 0;
    pid_t reaped = waitpid(pid, &status, WNOHANG);
    if (reaped == pid) {
      if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
      } else if (WIFSIGNALED(status)) {
        result.exit_code = -WTERMSIG(status);
      }
      return result;
    }
    if (reaped < 0) {  // should not happen; avoid leaking a child
      kill_and_reap(pid);
      return result;
    }
    if (Clock::now() >= deadline) {
      result.timed_out = true;
      kill_and_reap(pid);
      result.exit_code = -SIGKILL;
      return result;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
}

}  // namespace ladver::smt
