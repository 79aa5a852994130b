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


#include "sdfmig/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace sdfmig {

ParseError::ParseError(const std::string& source, int line, int column, const std::string& message)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string out = "scenario failed validation";
    for (const Diagnostic& d : diagnostics) {
        out += "\n  ";
        out += to_string(d.kind);
        out += ": ";
        out += d.message;
    }
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<Diagnostic> validate_scenario(const Scenario& scenario) {
    std::vector<Diagnostic> out = validate(scenario.graph);
    if (scenario.is_mapped()) {
        auto mapping = validate_mapping(scenario.graph, scenario.platform, scenario.mapping);
        out.insert(out.end(), mapping.begin(), mapping.end());
    }
    if (scenario.meta.clock_hz <= Rational(0)) {
        out.push_back({DiagnosticKind::invalid_parameter, "clock_hz", "clock frequency must be positive"});
    }
    const MigrationSpec& d = scenario.defaults;
    if (d.speedup < Rational(1)) {
        out.push_back({DiagnosticKind::invalid_parameter, "speedup", "migration speedup must be at least 1"});
    }
    if (d.prefetch_time < 0) {
        out.push_back({DiagnosticKind::negative_value, "prefetch_time", "prefetch time must be non-negative"});
    }
    if (d.hw_buffer_tokens < 1 || d.prefetch_tokens < 1) {
        out.push_back({DiagnosticKind::invalid_parameter, "migration",
                       "hardware buffer and prefetch tokens must be at least 1"});
    }
    if (d.hw_connection.bandwidth <= Rational(0) || d.hw_connection.latency < 0) {
        out.push_back({DiagnosticKind::invalid_parameter, "hw_connection",
                       "hardware connection needs a positive bandwidth and non-negative latency"});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

namespace {

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& node, const std::string& message) const {
        const YAML::Mark mark = node.Mark();
        throw ParseError(source_, mark.line + 1, mark.column + 1, message);
    }

    void expect_map(const YAML::Node& node, const std::string& what) const {
        if (!node.IsMap()) fail(node, what + " must be a mapping");
    }

    void expect_keys(const YAML::Node& node, const std::string& what, std::initializer_list<std::string_view> keys,
                     std::initializer_list<std::string_view> required = {}) const {
        expect_map(node, what);
        for (const auto& kv : node) {
            const std::string key = kv.first.as<std::string>();
            bool known = false;
            for (std::string_view k : keys) known = known || k == key;
            if (!known) fail(kv.first, "unknown key '" + key + "' in " + what);
        }
        for (std::string_view k : required) {
            if (!node[std::string(k)]) fail(node, what + " is missing '" + std::string(k) + "'");
        }
    }

    std::string text(const YAML::Node& node, const std::string& key, const std::string& fallback = "") const {
        const YAML::Node v = node[key];
        if (!v) return fallback;
        if (!v.IsScalar()) fail(v, "'" + key + "' must be a scalar");
        return v.Scalar();
    }

    Rational number(const YAML::Node& node, const std::string& key, Rational fallback) const {
        const YAML::Node v = node[key];
        if (!v) return fallback;
        if (!v.IsScalar()) fail(v, "'" + key + "' must be a number");
        try {
            return Rational::parse(v.Scalar());
        } catch (const std::exception& e) {
            fail(v, "'" + key + "': " + e.what());
        }
    }

    Int integer(const YAML::Node& node, const std::string& key, Int fallback) const {
        Rational r = number(node, key, Rational(fallback));
        if (!r.is_integer()) fail(node[key], "'" + key + "' must be an integer");
        return r.num();
    }

    std::optional<Int> optional_integer(const YAML::Node& node, const std::string& key) const {
        if (!node[key]) return std::nullopt;
        return integer(node, key, 0);
    }

    bool boolean(const YAML::Node& node, const std::string& key, bool fallback) const {
        const YAML::Node v = node[key];
        if (!v) return fallback;
        const std::string s = v.IsScalar() ? v.Scalar() : "";
        if (s == "true") return true;
        if (s == "false") return false;
        fail(v, "'" + key + "' must be true or false");
    }

    const YAML::Node& sequence(const YAML::Node& node, const std::string& what) const {
        if (!node.IsSequence()) fail(node, what + " must be a sequence");
        return node;
    }

private:
    std::string source_;
};

void read_meta(const Reader& r, const YAML::Node& node, Scenario& s) {
    r.expect_keys(node, "scenario", {"name", "description", "clock_hz", "auto_concurrency", "dst_buffer_edge"});
    s.meta.name = r.text(node, "name");
    s.meta.description = r.text(node, "description");
    s.meta.clock_hz = r.number(node, "clock_hz", s.meta.clock_hz);
    s.build.keep_auto_concurrency = r.boolean(node, "auto_concurrency", false);
    const std::string edge = r.text(node, "dst_buffer_edge", "send");
    if (edge == "send") {
        s.build.dst_edge = DstBufferEdge::to_send_actor;
    } else if (edge == "slot_wait") {
        s.build.dst_edge = DstBufferEdge::to_slot_wait_actor;
    } else {
        r.fail(node["dst_buffer_edge"], "dst_buffer_edge must be 'send' or 'slot_wait'");
    }
}

void read_application(const Reader& r, const YAML::Node& node, Scenario& s) {
    r.expect_keys(node, "application", {"reference_actor", "actors", "channels"});
    if (node["actors"]) {
        for (const YAML::Node& a : r.sequence(node["actors"], "actors")) {
            r.expect_keys(a, "actor", {"id", "name", "exec_time", "kind"}, {"id"});
            Actor actor;
            actor.id = r.text(a, "id");
            actor.name = r.text(a, "name");
            actor.exec_time = r.integer(a, "exec_time", 0);
            const std::string kind = r.text(a, "kind", "software");
            auto k = parse_actor_kind(kind);
            if (!k) r.fail(a["kind"], "unknown actor kind '" + kind + "'");
            actor.kind = *k;
            if (s.graph.has_actor(actor.id)) r.fail(a, "duplicate actor id '" + actor.id + "'");
            s.graph.add_actor(std::move(actor));
        }
    }
    if (node["channels"]) {
        for (const YAML::Node& c : r.sequence(node["channels"], "channels")) {
            r.expect_keys(c, "channel", {"id", "src", "dst", "prod", "cons", "initial_tokens", "token_size"},
                          {"id", "src", "dst"});
            Channel ch;
            ch.id = r.text(c, "id");
            ch.src = r.text(c, "src");
            ch.dst = r.text(c, "dst");
            ch.prod_rate = r.integer(c, "prod", 1);
            ch.cons_rate = r.integer(c, "cons", 1);
            ch.initial_tokens = r.integer(c, "initial_tokens", 0);
            ch.token_size = r.integer(c, "token_size", 0);
            if (s.graph.has_channel(ch.id)) r.fail(c, "duplicate channel id '" + ch.id + "'");
            s.graph.add_channel(std::move(ch));
        }
    }
    if (node["reference_actor"]) s.graph.set_reference_actor(r.text(node, "reference_actor"));
}

NocConnection read_connection_params(const Reader& r, const YAML::Node& c, NocConnection conn) {
    conn.latency = r.integer(c, "latency", conn.latency);
    conn.bandwidth = r.number(c, "bandwidth", conn.bandwidth);
    return conn;
}

void read_platform(const Reader& r, const YAML::Node& node, Scenario& s) {
    r.expect_keys(node, "platform", {"tiles", "connections"});
    if (node["tiles"]) {
        for (const YAML::Node& t : r.sequence(node["tiles"], "tiles")) {
            r.expect_keys(t, "tile", {"id", "kind", "tdma_wheel", "clock_hz"}, {"id"});
            Tile tile;
            tile.id = r.text(t, "id");
            const std::string kind = r.text(t, "kind", "processor");
            auto k = parse_tile_kind(kind);
            if (!k) r.fail(t["kind"], "unknown tile kind '" + kind + "'");
            tile.kind = *k;
            tile.tdma_wheel = r.integer(t, "tdma_wheel", 0);
            tile.clock_hz = r.number(t, "clock_hz", s.meta.clock_hz);
            if (s.platform.find_tile(tile.id) != nullptr) r.fail(t, "duplicate tile id '" + tile.id + "'");
            s.platform.tiles.push_back(std::move(tile));
        }
    }
    if (node["connections"]) {
        for (const YAML::Node& c : r.sequence(node["connections"], "connections")) {
            r.expect_keys(c, "connection", {"id", "src", "dst", "latency", "bandwidth"}, {"id", "src", "dst", "bandwidth"});
            NocConnection conn;
            conn.id = r.text(c, "id");
            conn.src_tile = r.text(c, "src");
            conn.dst_tile = r.text(c, "dst");
            conn = read_connection_params(r, c, conn);
            if (s.platform.find_connection(conn.id) != nullptr) r.fail(c, "duplicate connection id '" + conn.id + "'");
            s.platform.connections.push_back(std::move(conn));
        }
    }
}

void read_mapping(const Reader& r, const YAML::Node& node, Scenario& s) {
    r.expect_keys(node, "mapping", {"actors", "channels"});
    if (node["actors"]) {
        for (const YAML::Node& a : r.sequence(node["actors"], "mapping actors")) {
            r.expect_keys(a, "actor placement", {"actor", "tile", "slice"}, {"actor", "tile"});
            const std::string actor = r.text(a, "actor");
            if (s.mapping.actor_tile.contains(actor)) r.fail(a, "actor '" + actor + "' is placed twice");
            s.mapping.actor_tile[actor] = r.text(a, "tile");
            if (a["slice"]) s.mapping.tdma_slice[actor] = r.integer(a, "slice", 0);
        }
    }
    if (node["channels"]) {
        for (const YAML::Node& c : r.sequence(node["channels"], "mapping channels")) {
            r.expect_map(c, "channel binding");
            const std::string kind = r.text(c, "binding");
            const std::string channel = r.text(c, "channel");
            if (s.mapping.channel_binding.contains(channel)) r.fail(c, "channel '" + channel + "' is bound twice");
            if (kind == "local") {
                r.expect_keys(c, "local binding", {"channel", "binding", "buffer"}, {"channel", "buffer"});
                s.mapping.channel_binding[channel] = LocalBinding{r.integer(c, "buffer", 1)};
            } else if (kind == "remote") {
                r.expect_keys(c, "remote binding",
                              {"channel", "binding", "connection", "alpha_src", "alpha_dst", "latency_bound"},
                              {"channel", "connection"});
                RemoteBinding b;
                b.connection = r.text(c, "connection");
                b.alpha_src = r.integer(c, "alpha_src", 1);
                b.alpha_dst = r.integer(c, "alpha_dst", 1);
                b.latency_bound = r.optional_integer(c, "latency_bound");
                s.mapping.channel_binding[channel] = b;
            } else if (kind == "memory") {
                r.expect_keys(c, "memory binding",
                              {"channel", "binding", "connection", "buffer", "batch", "prefetch_time", "fetch"},
                              {"channel", "connection", "buffer"});
                MemoryBinding b;
                b.connection = r.text(c, "connection");
                b.buffer_tokens = r.integer(c, "buffer", 1);
                b.batch = r.integer(c, "batch", 1);
                b.prefetch_time = r.integer(c, "prefetch_time", 0);
                b.fetch_path = r.boolean(c, "fetch", false);
                s.mapping.channel_binding[channel] = b;
            } else {
                r.fail(c, "binding must be 'local', 'remote' or 'memory'");
            }
        }
    }
}

void read_migration(const Reader& r, const YAML::Node& node, Scenario& s) {
    r.expect_keys(node, "migration",
                  {"speedup", "prefetch_time", "hw_buffer_tokens", "prefetch_tokens", "hw_latency_bound",
                   "hw_connection"});
    MigrationSpec& d = s.defaults;
    d.speedup = r.number(node, "speedup", d.speedup);
    d.prefetch_time = r.integer(node, "prefetch_time", d.prefetch_time);
    d.hw_buffer_tokens = r.integer(node, "hw_buffer_tokens", d.hw_buffer_tokens);
    d.prefetch_tokens = r.integer(node, "prefetch_tokens", d.prefetch_tokens);
    d.hw_latency_bound = r.optional_integer(node, "hw_latency_bound");
    if (const YAML::Node c = node["hw_connection"]) {
        r.expect_keys(c, "hw_connection", {"latency", "bandwidth"});
        d.hw_connection = read_connection_params(r, c, d.hw_connection);
    }
}

} // namespace

Scenario parse_scenario(std::string_view text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
    }
    Reader r(source);
    Scenario s;
    if (root.IsNull()) return s;
    try {
        r.expect_keys(root, "scenario file", {"scenario", "application", "platform", "mapping", "migration"});
        if (root["scenario"]) read_meta(r, root["scenario"], s);
        if (root["application"]) read_application(r, root["application"], s);
        if (root["platform"]) read_platform(r, root["platform"], s);
        if (root["mapping"]) read_mapping(r, root["mapping"], s);
        if (root["migration"]) read_migration(r, root["migration"], s);
    } catch (const YAML::Exception& e) {
        throw ParseError(source, e.mark.line + 1, e.mark.column + 1, e.msg);
    }

    auto diagnostics = validate_scenario(s);
    if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open scenario '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

namespace {

void emit_number(YAML::Emitter& out, const char* key, const Rational& value) {
    out << YAML::Key << key << YAML::Value << value.to_string();
}

void emit_int(YAML::Emitter& out, const char* key, Int value) {
    out << YAML::Key << key << YAML::Value << std::to_string(value);
}

} // namespace

std::string serialize_scenario(const Scenario& s) {
    YAML::Emitter out;
    out << YAML::BeginMap;

    out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << s.meta.name;
    out << YAML::Key << "description" << YAML::Value << YAML::DoubleQuoted << s.meta.description;
    emit_number(out, "clock_hz", s.meta.clock_hz);
    out << YAML::Key << "auto_concurrency" << YAML::Value << (s.build.keep_auto_concurrency ? "true" : "false");
    out << YAML::Key << "dst_buffer_edge" << YAML::Value
        << (s.build.dst_edge == DstBufferEdge::to_send_actor ? "send" : "slot_wait");
    out << YAML::EndMap;

    out << YAML::Key << "application" << YAML::Value << YAML::BeginMap;
    if (s.graph.reference_actor()) {
        out << YAML::Key << "reference_actor" << YAML::Value << YAML::DoubleQuoted << *s.graph.reference_actor();
    }
    out << YAML::Key << "actors" << YAML::Value << YAML::BeginSeq;
    for (const Actor& a : s.graph.actors()) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << a.id;
        out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << a.name;
        emit_int(out, "exec_time", a.exec_time);
        out << YAML::Key << "kind" << YAML::Value << std::string(to_string(a.kind));
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "channels" << YAML::Value << YAML::BeginSeq;
    for (const Channel& c : s.graph.channels()) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << c.id;
        out << YAML::Key << "src" << YAML::Value << YAML::DoubleQuoted << c.src;
        out << YAML::Key << "dst" << YAML::Value << YAML::DoubleQuoted << c.dst;
        emit_int(out, "prod", c.prod_rate);
        emit_int(out, "cons", c.cons_rate);
        emit_int(out, "initial_tokens", c.initial_tokens);
        emit_int(out, "token_size", c.token_size);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;

    out << YAML::Key << "platform" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "tiles" << YAML::Value << YAML::BeginSeq;
    for (const Tile& t : s.platform.tiles) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << t.id;
        out << YAML::Key << "kind" << YAML::Value << std::string(to_string(t.kind));
        emit_int(out, "tdma_wheel", t.tdma_wheel);
        emit_number(out, "clock_hz", t.clock_hz);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "connections" << YAML::Value << YAML::BeginSeq;
    for (const NocConnection& c : s.platform.connections) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << c.id;
        out << YAML::Key << "src" << YAML::Value << YAML::DoubleQuoted << c.src_tile;
        out << YAML::Key << "dst" << YAML::Value << YAML::DoubleQuoted << c.dst_tile;
        emit_int(out, "latency", c.latency);
        emit_number(out, "bandwidth", c.bandwidth);
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;

    out << YAML::Key << "mapping" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "actors" << YAML::Value << YAML::BeginSeq;
    for (const auto& [actor, tile] : s.mapping.actor_tile) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "actor" << YAML::Value << YAML::DoubleQuoted << actor;
        out << YAML::Key << "tile" << YAML::Value << YAML::DoubleQuoted << tile;
        if (auto it = s.mapping.tdma_slice.find(actor); it != s.mapping.tdma_slice.end()) {
            emit_int(out, "slice", it->second);
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "channels" << YAML::Value << YAML::BeginSeq;
    for (const auto& [channel, binding] : s.mapping.channel_binding) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "channel" << YAML::Value << YAML::DoubleQuoted << channel;
        if (const auto* local = std::get_if<LocalBinding>(&binding)) {
            out << YAML::Key << "binding" << YAML::Value << "local";
            emit_int(out, "buffer", local->buffer_tokens);
        } else if (const auto* remote = std::get_if<RemoteBinding>(&binding)) {
            out << YAML::Key << "binding" << YAML::Value << "remote";
            out << YAML::Key << "connection" << YAML::Value << YAML::DoubleQuoted << remote->connection;
            emit_int(out, "alpha_src", remote->alpha_src);
            emit_int(out, "alpha_dst", remote->alpha_dst);
            if (remote->latency_bound) emit_int(out, "latency_bound", *remote->latency_bound);
        } else if (const auto* mem = std::get_if<MemoryBinding>(&binding)) {
            out << YAML::Key << "binding" << YAML::Value << "memory";
            out << YAML::Key << "connection" << YAML::Value << YAML::DoubleQuoted << mem->connection;
            emit_int(out, "buffer", mem->buffer_tokens);
            emit_int(out, "batch", mem->batch);
            emit_int(out, "prefetch_time", mem->prefetch_time);
            out << YAML::Key << "fetch" << YAML::Value << (mem->fetch_path ? "true" : "false");
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;

    const MigrationSpec& d = s.defaults;
    out << YAML::Key << "migration" << YAML::Value << YAML::BeginMap;
    emit_number(out, "speedup", d.speedup);
    emit_int(out, "prefetch_time", d.prefetch_time);
    emit_int(out, "hw_buffer_tokens", d.hw_buffer_tokens);
    emit_int(out, "prefetch_tokens", d.prefetch_tokens);
    if (d.hw_latency_bound) emit_int(out, "hw_latency_bound", *d.hw_latency_bound);
    out << YAML::Key << "hw_connection" << YAML::Value << YAML::Flow << YAML::BeginMap;
    emit_int(out, "latency", d.hw_connection.latency);
    emit_number(out, "bandwidth", d.hw_connection.bandwidth);
    out << YAML::EndMap;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write scenario '" + path.string() + "'");
    file << serialize_scenario(scenario);
    if (!file) throw Error("failed writing scenario '" + path.string() + "'");
}

Sdfg analysis_graph(const Scenario& scenario) {
    if (scenario.is_mapped()) {
        return build_analysis_graph(scenario.graph, scenario.platform, scenario.mapping, scenario.build);
    }
    return scenario.build.keep_auto_concurrency ? scenario.graph : disable_auto_concurrency(scenario.graph);
}

} // namespace sdfmig
