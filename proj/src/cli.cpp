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

#include "sdfmig/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <sstream>

#include "sdfmig/analysis.hpp"
#include "sdfmig/migration.hpp"
#include "sdfmig/scenario_io.hpp"

#ifndef SDFMIG_SCENARIO_DIR
#define SDFMIG_SCENARIO_DIR "scenarios"
#endif

namespace sdfmig {

namespace {

struct UsageError : Error {
    using Error::Error;
};

Scenario load_any(const std::string& path) {
    const std::filesystem::path p = resolve_scenario_path(path);
    if (!std::filesystem::is_regular_file(p)) throw UsageError("no scenario file '" + path + "'");
    if (p.extension() == ".xml") return import_sdf3(p);
    return load_scenario(p);
}

MigrationSpec migration_spec(const CliConfig& config, const Scenario& s) {
    MigrationSpec spec = s.defaults;
    if (config.speedup) spec.speedup = *config.speedup;
    if (config.prefetch) spec.prefetch_time = *config.prefetch;
    if (config.task) spec.actor = *config.task;
    return spec;
}

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& out) {
    for (const Diagnostic& d : diags) {
        out << "error: " << to_string(d.kind) << " [" << d.subject << "] " << d.message << '\n';
    }
}

int run_command(const CliConfig& config, std::ostream& out) {
    Scenario s = load_any(config.scenario_path);
    const Rational clock = config.freq_hz.value_or(s.meta.clock_hz);
    SelfTimedOptions opts;
    opts.state_budget = static_cast<std::size_t>(config.state_budget);

    switch (config.command) {
    case Command::check: {
        const ThroughputResult r = self_timed_throughput(analysis_graph(s), opts);
        const RepetitionVector q = compute_repetition_vector(s.graph);
        out << s.meta.name << ": ok, " << s.graph.actors().size() << " actors, " << s.graph.channels().size()
            << " channels, " << s.platform.tiles.size() << " tiles\n";
        out << "repetition vector:";
        for (const Actor& a : s.graph.actors()) out << ' ' << a.id << '=' << q.entries.at(a.id);
        out << '\n' << "states explored: " << r.states_explored << '\n';
        return exit_ok;
    }
    case Command::throughput: {
        const ThroughputResult r = self_timed_throughput(analysis_graph(s), opts);
        const std::string fps = to_frames_per_second(r, clock);
        if (config.format == ReportFormat::csv) {
            out << "scenario,fps\n" << s.meta.name << ',' << fps << '\n';
        } else {
            out << "Throughput (f/s): " << fps << '\n';
        }
        return exit_ok;
    }
    case Command::migrate: {
        if (!config.task) throw UsageError("migrate requires --task");
        if (!s.graph.has_actor(*config.task)) throw UsageError("unknown task '" + *config.task + "'");
        if (!s.is_mapped()) throw UsageError("migrate needs a scenario with a platform and mapping");
        const ThroughputResult base = self_timed_throughput(analysis_graph(s), opts);
        const MigrationResult m = migrate_task(s.graph, s.platform, s.mapping, migration_spec(config, s), s.build);
        const ThroughputResult after = self_timed_throughput(m.analysis_graph, opts);
        Report rep;
        rep.fps_before = frames_per_second(base, clock);
        rep.rows.push_back({*config.task, frames_per_second(after, clock), migration_gain(base, after, clock), ""});
        out << emit_report(rep, config.format);
        return exit_ok;
    }
    case Command::explore: {
        if (!s.is_mapped()) throw UsageError("explore needs a scenario with a platform and mapping");
        const Exploration e =
            explore_single_migrations(s.graph, s.platform, s.mapping, migration_spec(config, s), clock, opts, s.build);
        out << emit_report(make_report(e), config.format);
        return exit_ok;
    }
    }
    return exit_usage;
}

} // namespace

std::string resolve_scenario_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path) || fs::path(path).has_extension()) return path;
    const fs::path bundled = fs::path(SDFMIG_SCENARIO_DIR) / (path + ".yaml");
    return fs::exists(bundled) ? bundled.string() : path;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    // Buffer so that a failing command leaves nothing half-written on stdout.
    std::ostringstream buf;
    int code = exit_ok;
    try {
        code = run_command(config, buf);
    } catch (const ValidationError& e) {
        print_diagnostics(e.diagnostics(), buf);
        err << "sdfmig: " << config.scenario_path << ": " << e.diagnostics().size() << " validation error(s)\n";
        code = exit_validation;
    } catch (const ParseError& e) {
        err << "sdfmig: " << e.what() << '\n';
        code = exit_validation;
    } catch (const UsageError& e) {
        err << "sdfmig: " << e.what() << '\n';
        return exit_usage;
    } catch (const Deadlock& e) {
        err << "sdfmig: " << e.what() << '\n';
        return exit_analysis;
    } catch (const Error& e) {
        err << "sdfmig: analysis failed: " << e.what() << '\n';
        return exit_analysis;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "sdfmig: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        err << "sdfmig: " << e.what() << '\n';
        return exit_analysis;
    }
    out << buf.str();
    return code;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Throughput analysis and task migration for dataflow applications on MPSoC platforms", "sdfmig"};
    app.require_subcommand(1);

    CliConfig config;
    std::string speedup;
    std::string freq;
    std::string format = "text";
    Int prefetch = 0;

    app.add_option("--task", config.task, "Actor to migrate");
    auto* sp = app.add_option("--speedup", speedup, "Hardware speedup (default 2)");
    auto* pf = app.add_option("--prefetch", prefetch, "Prefetch time in cycles (default 10000)")
                   ->check(CLI::PositiveNumber);
    auto* fq = app.add_option("--freq", freq, "Clock frequency in Hz (default 100e6)");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--state-budget", config.state_budget, "Maximum explored states")->check(CLI::PositiveNumber);

    const std::pair<const char*, Command> commands[] = {
        {"check", Command::check},
        {"throughput", Command::throughput},
        {"migrate", Command::migrate},
        {"explore", Command::explore},
    };
    const char* help[] = {"Validate a scenario and check that it is live", "Print the throughput without migration",
                          "Migrate one task to hardware and report the gain",
                          "Try every software task and rank the gains"};
    std::size_t i = 0;
    for (const auto& [name, cmd] : commands) {
        auto* sub = app.add_subcommand(name, help[i++]);
        sub->fallthrough();
        sub->add_option("scenario", config.scenario_path, "Scenario file or bundled scenario name")->required();
        sub->callback([&config, c = cmd] { config.command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? exit_ok : exit_usage;
    }

    auto positive = [&err](const char* flag, const std::string& text) -> std::optional<Rational> {
        try {
            Rational r = Rational::parse(text);
            if (r > Rational(0)) return r;
            err << "sdfmig: " << flag << " must be positive\n";
        } catch (const std::exception& e) {
            err << "sdfmig: " << flag << ": " << e.what() << '\n';
        }
        return std::nullopt;
    };
    if (!sp->empty() && !(config.speedup = positive("--speedup", speedup))) return exit_usage;
    if (!fq->empty() && !(config.freq_hz = positive("--freq", freq))) return exit_usage;
    if (!pf->empty()) config.prefetch = prefetch;
    config.format = format == "csv" ? ReportFormat::csv : ReportFormat::text;
    return run(config, out, err);
}

} // namespace sdfmig
