// Copyright 2026 The sdfmig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SDFMIG_CLI_HPP
#define SDFMIG_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "sdfmig/rational.hpp"
#include "sdfmig/report.hpp"

namespace sdfmig {

enum class Command { check, throughput, migrate, explore };

/// Unset optionals fall back to the scenario's own values.
struct CliConfig {
    Command command = Command::check;
    std::string scenario_path;
    std::optional<std::string> task;
    std::optional<Rational> speedup;
    std::optional<Int> prefetch;
    std::optional<Rational> freq_hz;
    ReportFormat format = ReportFormat::text;
    Int state_budget = 1'000'000;
};

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_analysis = 2, exit_usage = 3 };

/// A path that does not exist and has no extension is looked up as
/// <name>.yaml in the bundled scenario directory.
std::string resolve_scenario_path(const std::string& path);

int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with the command as first positional and runs it.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sdfmig

#endif // SDFMIG_CLI_HPP
