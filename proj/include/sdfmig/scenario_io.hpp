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


#ifndef SDFMIG_SCENARIO_IO_HPP
#define SDFMIG_SCENARIO_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sdfmig/errors.hpp"
#include "sdfmig/graph.hpp"
#include "sdfmig/migration.hpp"
#include "sdfmig/platform.hpp"
#include "sdfmig/transforms.hpp"

namespace sdfmig {

struct ScenarioMeta {
    std::string name;
    std::string description;
    Rational clock_hz{100'000'000};

    friend bool operator==(const ScenarioMeta&, const ScenarioMeta&) = default;
};

/// Everything needed to analyse one design point.
///
/// A scenario without tiles is "unmapped": its graph is analysed as written
/// (plus self-loops unless auto-concurrency is kept) and mapping checks are skipped.
struct Scenario {
    ScenarioMeta meta;
    Sdfg graph;
    Platform platform;
    Mapping mapping;
    MigrationSpec defaults;
    BuildOptions build;

    bool is_mapped() const { return !platform.tiles.empty(); }

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.meta == b.meta && a.graph == b.graph && a.platform == b.platform && a.mapping == b.mapping &&
               a.defaults == b.defaults && a.build.keep_auto_concurrency == b.build.keep_auto_concurrency &&
               a.build.dst_edge == b.build.dst_edge;
    }
};

class ParseError : public Error {
public:
    ParseError(const std::string& source, int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Graph, mapping and migration-default checks combined.
std::vector<Diagnostic> validate_scenario(const Scenario& scenario);

/// Parses the YAML scenario format (see docs/scenario_format.md) and validates it.
/// Throws ParseError or ValidationError.
Scenario parse_scenario(std::string_view text, const std::string& source = "<memory>");
Scenario load_scenario(const std::filesystem::path& path);

/// Deterministic: identical scenarios serialize to identical bytes.
std::string serialize_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Reads the application-graph part of an SDF3 XML file into an unmapped scenario.
Scenario import_sdf3(const std::filesystem::path& path);
Scenario parse_sdf3(std::string_view xml, const std::string& source = "<memory>");

/// The graph whose throughput represents the scenario.
Sdfg analysis_graph(const Scenario& scenario);

} // namespace sdfmig

#endif // SDFMIG_SCENARIO_IO_HPP
