// Copyright 2026 The stmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stmatch/bridge.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "stmatch/error.hpp"
#include "stmatch/instance.hpp"
#include "stmatch/lp_format.hpp"

namespace stmatch {
namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;

  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "stmatch-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (mkdtemp(buf.data()) == nullptr) {
      throw BridgeError("cannot create a temporary directory for the solver bridge");
    }
    path = buf.data();
  }

  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// Runs the wrapper with output redirected to log_path; SIGKILLs it at the
// deadline. Returns true when it exited in time, false on timeout.
bool run_with_deadline(const std::vector<std::string>& argv, const fs::path& log_path,
                       double time_limit_s, int& exit_code) {
  pid_t pid = fork();
  if (pid < 0) throw BridgeError("fork failed: " + std::string(std::strerror(errno)));
  if (pid == 0) {
    int log_fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (log_fd >= 0) {
      dup2(log_fd, STDOUT_FILENO);
      dup2(log_fd, STDERR_FILENO);
      close(log_fd);
    }
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(time_limit_s));
  while (true) {
    int status = 0;
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) {
      if (WIFEXITED(status)) {
        exit_code = WEXITSTATUS(status);
      } else if (WIFSIGNALED(status)) {
        throw BridgeError("external solver killed by signal " +
                          std::to_string(WTERMSIG(status)));
      } else {
        exit_code = -1;
      }
      return true;
    }
    if (done < 0) throw BridgeError("waitpid failed: " + std::string(std::strerror(errno)));
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      return false;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

}  // namespace

SolveResult solve_external(const IlpModel& model, const std::string& command,
                           double time_limit_s) {
  if (command.empty()) throw ValidationError("external solver command is empty");
  TempDir dir;
  fs::path lp_path = dir.path / "model.lp";
  fs::path sol_path = dir.path / "model.sol";
  fs::path log_path = dir.path / "solver.log";
  export_lp(model, lp_path.string());
  std::string warm = to_warm_string(model);
  if (!warm.empty()) write_text_file((dir.path / "model.mst").string(), warm);

  char limit_buf[32];
  std::snprintf(limit_buf, sizeof(limit_buf), "%.3f", time_limit_s);
  std::vector<std::string> argv = {command, lp_path.string(), sol_path.string(), limit_buf};

  SolveResult result;
  result.meta = model.meta;
  int exit_code = 0;
  if (!run_with_deadline(argv, log_path, time_limit_s, exit_code)) {
    result.status = SolveStatus::kTimeout;
    return result;
  }
  if (exit_code == 127) {
    throw BridgeError("cannot execute external solver command '" + command + "'");
  }
  if (exit_code != 0) {
    throw BridgeError("external solver '" + command + "' exited with code " +
                      std::to_string(exit_code));
  }
  if (!fs::exists(sol_path)) {
    throw BridgeError("external solver wrote no solution file");
  }
  std::map<std::string, double> parsed;
  try {
    parsed = parse_solution(read_text_file(sol_path.string()));
  } catch (const ParseError& e) {
    throw BridgeError("external solver output is unparseable: " + std::string(e.what()));
  }
  if (parsed.empty()) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  std::vector<double> values(model.vars.size(), 0.0);
  for (size_t v = 0; v < model.vars.size(); ++v) {
    const Variable& var = model.vars[v];
    auto it = parsed.find(var.name);
    double value = it == parsed.end() ? 0.0 : it->second;
    if (std::abs(value - std::round(value)) > 1e-4) {
      throw BridgeError("external solver returned fractional " + var.name + " = " +
                        std::to_string(value));
    }
    values[v] = value;
    result.assignment[var.name] = value;
  }
  int bad = first_violated(model, values);
  if (bad >= 0) {
    throw BridgeError("external solution violates constraint " +
                      model.cons[static_cast<size_t>(bad)].name);
  }
  result.objective = objective_value(model, values);
  result.status = SolveStatus::kOptimal;
  return result;
}

}  // namespace stmatch
