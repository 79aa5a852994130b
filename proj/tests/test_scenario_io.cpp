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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sdfmig/errors.hpp"
#include "sdfmig/report.hpp"
#include "sdfmig/scenario_io.hpp"
#include "support.hpp"

using namespace sdfmig;

namespace {

Scenario round_trip(const Scenario& s) { return parse_scenario(serialize_scenario(s), "<round-trip>"); }

std::string test_data(const std::string& name) { return std::string(SDFMIG_TEST_DATA_DIR) + "/" + name; }

int parse_error_line(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_CASE("bundled decoder scenario loads") {
    Scenario s = test::mjpeg();
    CHECK(s.meta.name == "mjpeg_base");
    CHECK(s.meta.clock_hz == Rational(100000000));
    CHECK(s.graph.actors().size() == 6);
    CHECK(s.graph.channels().size() == 5);
    CHECK(s.platform.tiles.size() == 3);
    CHECK(s.platform.connections.size() == 2);
    CHECK(s.platform.find_connection("c1")->bandwidth == Rational(406278, 100000000));
    CHECK(s.graph.channel("vld_izz").prod_rate == 12);
    CHECK(s.graph.channel("izz_iq").prod_rate == 1);
    CHECK(s.graph.reference_actor() == "VLD");
    CHECK(s.defaults.hw_connection.bandwidth == Rational(203139, 100000000));
    CHECK(s.build.dst_edge == DstBufferEdge::to_send_actor);
    CHECK(std::get<RemoteBinding>(s.mapping.channel_binding.at("izz_iq")).latency_bound == 100000);
}

TEST_CASE("negative initial tokens fail validation") {
    try {
        load_scenario(test_data("negative_tokens.yaml"));
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        REQUIRE(e.diagnostics().size() == 1);
        CHECK(e.diagnostics()[0].kind == DiagnosticKind::negative_value);
        CHECK(e.diagnostics()[0].subject == "ba");
    }
}

TEST_CASE("unknown keys and malformed input report their position") {
    CHECK(parse_error_line("scenario: {name: x}\napplication:\n  actors:\n    - {id: A, colour: red}\n") == 4);
    CHECK(parse_error_line("bogus: 1\n") == 1);
    CHECK(parse_error_line("application:\n  actors: [\n") > 0);
    CHECK(parse_error_line("application:\n  actors:\n    - {id: A, exec_time: 1.5}\n") == 3);
    CHECK(parse_error_line("application:\n  actors:\n    - {id: A, exec_time: fast}\n") == 3);
    CHECK(parse_error_line(
              "application:\n  actors: [{id: A}, {id: B}]\n  channels: [{id: ab, src: A, dst: B}]\n"
              "mapping:\n  channels:\n    - {channel: ab, binding: cable}\n") == 6);
    CHECK_THROWS_AS(load_scenario(test_data("missing.yaml")), Error);
}

TEST_CASE("cross references are validated") {
    const std::string base = "application:\n  actors: [{id: A}, {id: B}]\n  channels: [{id: ab, src: A, dst: C}]\n";
    CHECK_THROWS_AS(parse_scenario(base), ValidationError);
    const std::string unmapped = "application:\n  actors: [{id: A}]\nplatform:\n  tiles: [{id: T, tdma_wheel: 10}]\n";
    CHECK_THROWS_AS(parse_scenario(unmapped), ValidationError);
    const std::string ref = "application:\n  reference_actor: Z\n  actors: [{id: A}]\n";
    CHECK_THROWS_AS(parse_scenario(ref), ValidationError);
}

TEST_CASE("rates default to one and numbers stay exact") {
    Scenario s = parse_scenario(
        "application:\n  actors: [{id: A, exec_time: 3}, {id: B}]\n  channels: [{id: ab, src: A, dst: B}]\n"
        "migration: {speedup: 7/3, hw_connection: {bandwidth: 1.0e-9}}\n");
    CHECK(s.graph.channel("ab").prod_rate == 1);
    CHECK(s.graph.channel("ab").cons_rate == 1);
    CHECK(s.graph.actor("B").exec_time == 0);
    CHECK(s.graph.actor("A").kind == ActorKind::software);
    CHECK(s.defaults.speedup == Rational(7, 3));
    CHECK(s.defaults.hw_connection.bandwidth == Rational(1, 1000000000));
    CHECK_FALSE(s.is_mapped());
}

TEST_CASE("serialization is deterministic and round-trips the fixtures") {
    for (const char* name : {"mjpeg_base.yaml"}) {
        Scenario s = load_scenario(test::fixture_path(name));
        const std::string text = serialize_scenario(s);
        CHECK(serialize_scenario(s) == text);
        CHECK(round_trip(s) == s);
        CHECK(serialize_scenario(round_trip(s)) == text);
    }
    Scenario xml = import_sdf3(test::fixture_path("mjpeg_app.xml"));
    CHECK(round_trip(xml) == xml);
    for (const char* name : {"ring.yaml", "deadlock.yaml"}) {
        Scenario s = load_scenario(test_data(name));
        CHECK(round_trip(s) == s);
    }
}

TEST_CASE("save and load through a file") {
    const auto path = std::filesystem::temp_directory_path() / "sdfmig_round_trip.yaml";
    Scenario s = test::mjpeg();
    save_scenario(s, path);
    CHECK(load_scenario(path) == s);
    std::filesystem::remove(path);
    CHECK_THROWS(save_scenario(s, "/nonexistent-dir/x.yaml"));
}

TEST_CASE("empty scenario round-trips") {
    Scenario empty;
    CHECK(round_trip(empty) == empty);
    CHECK(parse_scenario("") == empty);
}

TEST_CASE("migrated scenarios round-trip") {
    Scenario s = test::mjpeg();
    for (const char* actor : {"VLD", "IDCT", "CC"}) {
        MigrationSpec spec = s.defaults;
        spec.actor = actor;
        MigrationResult m = migrate_task(s.graph, s.platform, s.mapping, spec, s.build);
        Scenario migrated = s;
        migrated.graph = m.application;
        migrated.platform = m.platform;
        migrated.mapping = m.mapping;
        CHECK(round_trip(migrated) == migrated);

        // The flattened analysis graph, with its infrastructure actors.
        Scenario flat;
        flat.meta = s.meta;
        flat.graph = m.analysis_graph;
        flat.build.keep_auto_concurrency = true;
        Scenario back = round_trip(flat);
        CHECK(back == flat);
        CHECK(self_timed_throughput(analysis_graph(back)) == self_timed_throughput(m.analysis_graph));
    }
}

TEST_CASE("random scenarios round-trip") {
    test::Rng rng(61);
    for (int i = 0; i < 60; ++i) {
        Scenario s = test::random_scenario(rng, {6, 3, 0.25, 1000});
        CHECK(validate_scenario(s).empty());
        const std::string text = serialize_scenario(s);
        Scenario back = parse_scenario(text);
        CHECK(back == s);
        CHECK(serialize_scenario(back) == text);
    }
}

TEST_CASE("sdf3 import") {
    Scenario s = import_sdf3(test::fixture_path("mjpeg_app.xml"));
    CHECK(s.meta.name == "mjpeg_app");
    CHECK(s.graph.actors().size() == 6);
    CHECK(s.graph.actor("VLD").exec_time == 2082463);
    CHECK(s.graph.channel("vld_izz").prod_rate == 12);
    CHECK(s.graph.channel("cc_re").cons_rate == 12);
    CHECK(s.graph.channel("izz_iq").token_size == 1024);
    CHECK(s.graph.channel("frame").initial_tokens == 1);
    CHECK_FALSE(s.is_mapped());
    CHECK(compute_repetition_vector(s.graph)["IDCT"] == 12);

    CHECK_THROWS_AS(parse_sdf3("<sdf3><notAGraph/></sdf3>"), ParseError);
    CHECK_THROWS_AS(parse_sdf3("<sdf3"), ParseError);
    CHECK_THROWS_AS(parse_sdf3("<sdf3><applicationGraph><sdf><actor name='A'/>"
                               "<channel name='c' srcActor='A' srcPort='p' dstActor='A' dstPort='q'/>"
                               "</sdf></applicationGraph></sdf3>"),
                    ParseError);
}

TEST_CASE("report layouts") {
    Report r;
    r.fps_before = Rational::parse("13.6");
    r.rows.push_back({"IDCT", Rational::parse("17.23"), Rational::parse("3.63"), ""});
    r.rows.push_back({"VLD", Rational::parse("15.58"), Rational::parse("1.98"), ""});
    const std::string csv = emit_report(r, ReportFormat::csv);
    CHECK(csv ==
          "actor,fps_before,fps_after,gain_fps\n"
          "IDCT,13.60,17.23,3.63\n"
          "VLD,13.60,15.58,1.98\n");
    const std::string text = emit_report(r, ReportFormat::text);
    CHECK(text ==
          "Throughput without migration (f/s): 13.60\n"
          "\n"
          "actor     fps_after    gain_fps\n"
          "IDCT          17.23        3.63\n"
          "VLD           15.58        1.98\n");
    CHECK(emit_report(r, ReportFormat::text) == text);

    Report empty;
    empty.fps_before = Rational::parse("13.6");
    CHECK(emit_report(empty, ReportFormat::text) == "Throughput without migration (f/s): 13.60\n");
    CHECK(emit_report(empty, ReportFormat::csv) == "actor,fps_before,fps_after,gain_fps\n");

    Report failed = empty;
    failed.rows.push_back({"X,Y", Rational(0), Rational(0), "state budget exhausted"});
    CHECK(emit_report(failed, ReportFormat::csv) == "actor,fps_before,fps_after,gain_fps\n\"X,Y\",13.60,,\n");
    CHECK(emit_report(failed, ReportFormat::text).find("failed: state budget exhausted") != std::string::npos);
}

TEST_CASE("csv has one row per candidate plus a header") {
    Scenario s = test::mjpeg();
    Exploration e = explore_single_migrations(s.graph, s.platform, s.mapping, s.defaults, s.meta.clock_hz, {}, s.build);
    const std::string csv = emit_report(make_report(e), ReportFormat::csv);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(e.entries.size()) + 1);
}
