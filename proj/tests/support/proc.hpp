#pragma once

#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace epimc::test {

struct CommandResult {
  int exit_code = -1;
  std::string output;      // stdout only
  double seconds = 0.0;
};

// Runs a shell command, capturing stdout; stderr is left alone so warnings
// stay visible in the test log.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  const auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + command);
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
  const int status = pclose(pipe);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace epimc::test
