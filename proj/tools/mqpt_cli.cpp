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

// mqpt command line: runs experiments from a TOML/JSON config and the
// acceptance suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "acceptance.hpp"
#include "mqpt/experiment.hpp"

namespace {

int exit_code(mqpt::ErrorCode code) {
  using mqpt::ErrorCode;
  switch (code) {
    case ErrorCode::ill_conditioned:
    case ErrorCode::degenerate_probes:
    case ErrorCode::truncation:
    case ErrorCode::non_finite:
      return 3;
    case ErrorCode::verification:
      return 4;
    default:
      return 2;
  }
}

int fail(std::string_view code, const std::string& detail, int status) {
  std::string line = detail;
  for (char& ch : line) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  std::fprintf(stderr, "error: %.*s: %s\n", static_cast<int>(code.size()), code.data(), line.c_str());
  return status;
}

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App& sub, Options& opt) {
  sub.add_option("--config", opt.config, "TOML or JSON experiment file")->check(CLI::ExistingFile);
  sub.add_option("--out", opt.out, "write the report here instead of stdout");
  sub.add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--seed", opt.seed, "noise seed");
  sub.allow_extras();
  sub.footer("Any config field can be overridden as --section.field=value, e.g. --plan.max_order=4.");
}

void apply_extras(mqpt::Json& config, const std::vector<std::string>& extras) {
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3) {
      throw mqpt::Error(mqpt::ErrorCode::config, "unexpected argument \"" + arg + "\"");
    }
    const std::string body = arg.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      mqpt::apply_override(config, body.substr(0, eq), body.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      mqpt::apply_override(config, body, extras[++i]);
    } else {
      throw mqpt::Error(mqpt::ErrorCode::config, body + ": override needs a value");
    }
  }
}

int run_experiment(const std::string& experiment, const Options& opt, const std::vector<std::string>& extras) {
  mqpt::Json config = opt.config.empty() ? mqpt::Json::object() : mqpt::load_config_file(opt.config);
  if (!config.is_object()) throw mqpt::Error(mqpt::ErrorCode::config, "config: expected a table at top level");
  if (config.contains("experiment") && config["experiment"] != experiment) {
    throw mqpt::Error(mqpt::ErrorCode::config, "experiment: config declares " + config["experiment"].dump() +
                                                   " but the subcommand runs \"" + experiment + "\"");
  }
  config["experiment"] = experiment;
  apply_extras(config, extras);
  if (!opt.out.empty()) config["output"]["path"] = opt.out;
  if (!opt.format.empty()) config["output"]["format"] = opt.format;
  if (opt.seed) config["noise"]["seed"] = *opt.seed;

  const mqpt::ExperimentConfig parsed = mqpt::parse_config(config);
  const mqpt::RunReport report = mqpt::run(parsed);
  if (parsed.output_path.empty()) std::cout << report.render(parsed.format);
  std::fprintf(stderr, "%s finished in %.3f s\n", std::string(mqpt::to_string(parsed.experiment)).c_str(),
               report.seconds);
  return 0;
}

int run_verify(const Options& opt, const std::vector<std::string>& extras) {
  if (!extras.empty()) throw mqpt::Error(mqpt::ErrorCode::config, "verify: unexpected argument \"" + extras[0] + "\"");
  if (!opt.format.empty() && opt.format != "json") {
    throw mqpt::Error(mqpt::ErrorCode::config, "output.format: verify reports are json only");
  }
  const auto report = mqpt::acceptance::run(opt.seed.value_or(mqpt::acceptance::kDefaultSeed));
  for (const auto& c : report.criteria) std::fprintf(stderr, "%s\n", mqpt::acceptance::summary_line(c).c_str());
  std::fprintf(stderr, "verify finished in %.3f s\n", report.seconds);

  const std::string text = mqpt::dump(report.json());
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw mqpt::Error(mqpt::ErrorCode::config, "output.path: cannot write " + opt.out);
    out << text;
  }
  if (!report.passed()) throw mqpt::Error(mqpt::ErrorCode::verification, "one or more acceptance criteria failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent-state process tomography in the normally ordered moment basis"};
  app.name("mqpt");
  app.require_subcommand(1);

  Options opt;
  struct Sub {
    const char* name;
    const char* experiment;
    const char* help;
  };
  const Sub subs[] = {
      {"tomography", "tomography", "estimate a process tensor from simulated coherent probes"},
      {"gaussian-id", "gaussian_id", "identify a Gaussian channel from 2m+1 probes"},
      {"catalog", "catalog_dump", "print the closed-form tensor of a catalog process"},
      {"diagnose", "diagnostics", "nonclassicality diagnostics of a state, optionally after a process"},
      {"verify", "", "run the acceptance suite"},
  };
  for (const auto& s : subs) add_common(*app.add_subcommand(s.name, s.help), opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(mqpt::to_string(mqpt::ErrorCode::config), e.what(), 2);
  }

  try {
    for (const auto& s : subs) {
      CLI::App* sub = app.get_subcommand(s.name);
      if (!sub->parsed()) continue;
      if (std::string(s.name) == "verify") return run_verify(opt, sub->remaining());
      return run_experiment(s.experiment, opt, sub->remaining());
    }
  } catch (const mqpt::Error& e) {
    return fail(mqpt::to_string(e.code()), e.what(), exit_code(e.code()));
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return 0;
}
