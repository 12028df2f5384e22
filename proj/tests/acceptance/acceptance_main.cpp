// Copyright 2026 The mqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs every acceptance criterion and prints one PASS/FAIL line each.
// With --cli <path>, the determinism criterion also runs `<path> verify`
// twice and requires byte-identical output.

#include <array>
#include <cstdio>
#include <string>

#include "acceptance.hpp"

namespace {

bool capture(const std::string& command, std::string& out) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return false;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  return pclose(pipe) == 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }

  auto report = mqpt::acceptance::run();
  if (!cli.empty()) {
    const std::string command = "\"" + cli + "\" verify --seed " + std::to_string(report.seed) + " 2>/dev/null";
    std::string first, second;
    const bool ok1 = capture(command, first);
    const bool ok2 = capture(command, second);
    auto& determinism = report.criteria.back();
    determinism.checks.push_back({"cli_exit_status", (ok1 && ok2) ? 1.0 : 0.0, 1.0, ok1 && ok2, false});
    const bool same = !first.empty() && first == second;
    determinism.checks.push_back({"cli_identical_reports", same ? 1.0 : 0.0, 1.0, same, false});
  }

  for (const auto& c : report.criteria) std::printf("%s\n", mqpt::acceptance::summary_line(c).c_str());
  std::printf("acceptance suite %s in %.2f s\n", report.passed() ? "passed" : "FAILED", report.seconds);
  return report.passed() ? 0 : 1;
}
