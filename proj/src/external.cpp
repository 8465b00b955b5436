#include "gegd/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <map>

#include <json.hpp>

#include "gegd/support.hpp"

namespace gegd {

namespace {

using nlohmann::json;

struct ChildProcess {
  pid_t pid = -1;
  int to_child = -1;
  int from_child = -1;

  ~ChildProcess() { shutdown(); }

  void spawn(const std::vector<std::string>& command) {
    shutdown();
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
      throw BackendError("pipe creation failed");
    pid = fork();
    if (pid < 0) throw BackendError("fork failed");
    if (pid == 0) {
      dup2(in_pipe[0], STDIN_FILENO);
      dup2(out_pipe[1], STDOUT_FILENO);
      close(in_pipe[0]);
      close(in_pipe[1]);
      close(out_pipe[0]);
      close(out_pipe[1]);
      std::vector<char*> argv;
      for (const auto& a : command) argv.push_back(const_cast<char*>(a.c_str()));
      argv.push_back(nullptr);
      execvp(argv[0], argv.data());
      _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    to_child = in_pipe[1];
    from_child = out_pipe[0];
    fcntl(to_child, F_SETFL, O_NONBLOCK);
    fcntl(from_child, F_SETFL, O_NONBLOCK);
  }

  bool alive() {
    if (pid <= 0) return false;
    int status;
    if (waitpid(pid, &status, WNOHANG) == 0) return true;
    pid = -1;  // reaped
    return false;
  }

  void shutdown() {
    if (to_child >= 0) close(to_child);
    if (from_child >= 0) close(from_child);
    to_child = from_child = -1;
    if (pid > 0) {
      kill(pid, SIGTERM);
      int status;
      waitpid(pid, &status, 0);
      pid = -1;
    }
  }
};

class ExternalDispatcher final : public CostDispatcher {
 public:
  explicit ExternalDispatcher(std::vector<std::string> command)
      : command_(std::move(command)) {
    if (command_.empty()) throw ConfigError("external cost command is empty");
    child_.spawn(command_);
  }

  std::vector<double> evaluate(const std::vector<CostRequest>& batch) override {
    std::vector<double> results(batch.size(), std::numeric_limits<double>::quiet_NaN());
    if (batch.empty()) return results;

    // id -> batch slot; retried requests get fresh ids.
    std::map<int64_t, size_t> pending;
    std::string outbox;
    std::vector<int> attempts(batch.size(), 0);
    for (size_t i = 0; i < batch.size(); ++i) {
      const int64_t id = next_id_++;
      pending[id] = i;
      attempts[i] = 1;
      outbox += encode(batch[i], id);
    }

    bool restarted = false;
    std::string inbox;
    size_t out_pos = 0;
    int stalls = 0;
    while (!pending.empty()) {
      if (stalls > 300) throw BackendError("external cost process unresponsive");
      if (!child_.alive()) {
        if (restarted) throw BackendError("external cost process died twice");
        warn("external cost process died; restarting and replaying requests");
        restarted = true;
        child_.spawn(command_);
        // Replay every outstanding request with fresh ids.
        std::map<int64_t, size_t> replay;
        std::string fresh;
        for (const auto& [id, slot] : pending) {
          const int64_t nid = next_id_++;
          replay[nid] = slot;
          fresh += encode(batch[slot], nid);
        }
        pending = std::move(replay);
        outbox = std::move(fresh);
        out_pos = 0;
        inbox.clear();
      }

      pollfd fds[2];
      int nfds = 0;
      const bool want_write = out_pos < outbox.size();
      fds[nfds++] = {child_.from_child, POLLIN, 0};
      if (want_write) fds[nfds++] = {child_.to_child, POLLOUT, 0};
      if (poll(fds, nfds, 1000) < 0 && errno != EINTR)
        throw BackendError("poll on external cost process failed");

      bool progress = false;
      if (want_write && (fds[1].revents & POLLOUT)) {
        const ssize_t w =
            write(child_.to_child, outbox.data() + out_pos, outbox.size() - out_pos);
        if (w > 0) {
          out_pos += size_t(w);
          progress = true;
        }
      }
      if (fds[0].revents & (POLLIN | POLLHUP)) {
        char buf[4096];
        for (;;) {
          const ssize_t r = read(child_.from_child, buf, sizeof(buf));
          if (r <= 0) break;
          inbox.append(buf, size_t(r));
          progress = true;
        }
        drain_lines(inbox, pending, results, batch, attempts, outbox);
      }
      stalls = progress ? 0 : stalls + 1;
    }
    return results;
  }

 private:
  static std::string encode(const CostRequest& req, int64_t id) {
    const auto& d = *req.design;
    std::string bits(d.cells.size(), '0');
    for (size_t i = 0; i < d.cells.size(); ++i)
      if (d.cells[i]) bits[i] = '1';
    json j = {{"id", id},
              {"fidelity", req.fidelity == Fidelity::High ? "hi" : "lo"},
              {"design", bits},
              {"rows", d.rows},
              {"cols", d.cols}};
    return j.dump() + "\n";
  }

  void drain_lines(std::string& inbox, std::map<int64_t, size_t>& pending,
                   std::vector<double>& results, const std::vector<CostRequest>& batch,
                   std::vector<int>& attempts, std::string& outbox) {
    size_t start = 0;
    for (;;) {
      const size_t nl = inbox.find('\n', start);
      if (nl == std::string::npos) break;
      const std::string line = inbox.substr(start, nl - start);
      start = nl + 1;
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception&) {
        warn("unparseable line from external cost process");
        continue;
      }
      if (!j.contains("id")) continue;
      const int64_t id = j["id"].get<int64_t>();
      const auto it = pending.find(id);
      if (it == pending.end()) continue;
      const size_t slot = it->second;
      pending.erase(it);
      if (j.contains("cost") && j["cost"].is_number()) {
        results[slot] = j["cost"].get<double>();
      } else if (attempts[slot] < 2) {
        // Error response: retry this request once.
        ++attempts[slot];
        const int64_t nid = next_id_++;
        pending[nid] = slot;
        outbox += encode(batch[slot], nid);
      } else {
        warn("external cost evaluation failed twice; dropping member");
      }
    }
    inbox.erase(0, start);
  }

  std::vector<std::string> command_;
  ChildProcess child_;
  int64_t next_id_ = 1;
};

}  // namespace

std::unique_ptr<CostDispatcher> make_external_dispatcher(std::vector<std::string> command) {
  return std::make_unique<ExternalDispatcher>(std::move(command));
}

double ExternalProblem::cost(const FeasibleDesign& design, Fidelity fidelity) const {
  std::vector<CostRequest> batch{{&design, fidelity}};
  const auto res = dispatcher_.evaluate(batch);
  if (!std::isfinite(res[0])) throw BackendError("external cost evaluation failed");
  return res[0];
}

}  // namespace gegd
