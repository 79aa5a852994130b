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


#include "sdfmig/migration.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "sdfmig/errors.hpp"

namespace sdfmig {

std::string_view to_string(CommClass c) {
    switch (c) {
        case CommClass::SS: return "SS";
        case CommClass::SH1: return "SH1";
        case CommClass::HS1: return "HS1";
        case CommClass::HH1: return "HH1";
    }
    return "SS";
}

CommClass classify_channel(const Channel& channel, const Sdfg& graph) {
    bool src_hw = graph.actor(channel.src).kind == ActorKind::hardware;
    bool dst_hw = graph.actor(channel.dst).kind == ActorKind::hardware;
    if (src_hw) return dst_hw ? CommClass::HH1 : CommClass::HS1;
    return dst_hw ? CommClass::SH1 : CommClass::SS;
}

namespace {

TileId unique_tile_id(const Platform& platform, const std::string& base) {
    if (platform.find_tile(base) == nullptr) return base;
    for (int i = 2;; ++i) {
        std::string candidate = base + "#" + std::to_string(i);
        if (platform.find_tile(candidate) == nullptr) return candidate;
    }
}

/// Reuses a connection with identical endpoints and parameters or adds one.
ConnectionId connect(Platform& platform, const TileId& src, const TileId& dst, const NocConnection& params) {
    for (const NocConnection& c : platform.connections) {
        if (c.src_tile == src && c.dst_tile == dst && c.latency == params.latency && c.bandwidth == params.bandwidth) {
            return c.id;
        }
    }
    std::string id = src + "_" + dst;
    if (platform.find_connection(id) != nullptr) {
        for (int i = 2;; ++i) {
            std::string candidate = id + "#" + std::to_string(i);
            if (platform.find_connection(candidate) == nullptr) {
                id = candidate;
                break;
            }
        }
    }
    platform.connections.push_back({id, src, dst, params.latency, params.bandwidth});
    return id;
}

const TileId& tile_of(const Mapping& mapping, const ActorId& actor) {
    auto it = mapping.actor_tile.find(actor);
    if (it == mapping.actor_tile.end()) throw UnmappedActor("actor '" + actor + "' is not mapped to a tile");
    return it->second;
}

} // namespace

MigrationResult migrate_task(const Sdfg& graph, const Platform& platform, const Mapping& mapping,
                             const MigrationSpec& spec, const BuildOptions& options) {
    if (!graph.has_actor(spec.actor)) throw UnknownActor("unknown actor '" + spec.actor + "'");
    const Actor& target = graph.actor(spec.actor);
    if (target.kind != ActorKind::software) throw AlreadyHardware("actor '" + spec.actor + "' is not a software task");
    if (spec.speedup < Rational(1)) throw std::invalid_argument("speedup must be at least 1");
    if (spec.prefetch_time < 0 || spec.hw_buffer_tokens < 1 || spec.prefetch_tokens < 1) {
        throw std::invalid_argument("invalid migration parameters");
    }
    const Tile* old_tile = platform.find_tile(tile_of(mapping, spec.actor));
    if (old_tile == nullptr) throw UnmappedActor("actor '" + spec.actor + "' is mapped to an unknown tile");

    MigrationResult r{graph, platform, mapping, {}, {}, {}};
    r.hardware_tile = unique_tile_id(platform, "HW_" + spec.actor);
    r.platform.tiles.push_back({r.hardware_tile, TileKind::hardware_block, 0, old_tile->clock_hz});

    // Impact 1: faster dedicated implementation.
    Actor& moved = r.application.actor(spec.actor);
    moved.exec_time = (Rational(target.exec_time) / spec.speedup).floor();
    moved.kind = ActorKind::hardware;

    // Impact 2: the slice disappears from the processor's wheel; ETAM and slot
    // waits of the remaining actors follow from the mapping.
    r.mapping.actor_tile[spec.actor] = r.hardware_tile;
    r.mapping.tdma_slice.erase(spec.actor);

    const Int latency = spec.hw_latency_bound.value_or(old_tile->tdma_wheel);
    const RepetitionVector q = compute_repetition_vector(graph);

    // Impacts 3 and 4: rebind every incident channel by communication class.
    for (const Channel& c : graph.channels()) {
        if (c.is_self_loop() || (c.src != spec.actor && c.dst != spec.actor)) continue;
        const CommClass comm = classify_channel(c, r.application);
        auto old = mapping.channel_binding.find(c.id);
        if (old == mapping.channel_binding.end()) {
            r.channels.push_back({c.id, comm, false});
            continue;
        }
        const ChannelBinding& before = old->second;
        const bool was_local = std::holds_alternative<LocalBinding>(before);
        const TileId& src_tile = tile_of(r.mapping, c.src);
        const TileId& dst_tile = tile_of(r.mapping, c.dst);

        // Room for one iteration on top of the initial tokens keeps a new
        // buffer live.
        const Int iteration = checked_add(checked_mul(q[c.dst], c.cons_rate), c.initial_tokens);

        if (comm == CommClass::HS1) {
            MemoryBinding mem;
            mem.batch = q[c.dst];
            mem.prefetch_time = spec.prefetch_time;
            mem.fetch_path = c.cons_rate > spec.prefetch_tokens;
            mem.buffer_tokens = std::max(spec.hw_buffer_tokens, iteration);
            mem.connection = connect(r.platform, src_tile, dst_tile, spec.hw_connection);
            r.mapping.channel_binding[c.id] = mem;
        } else {
            // SH1 and HH1 both cross the NoC into the consumer's memory.
            RemoteBinding remote;
            NocConnection params = spec.hw_connection;
            if (const auto* prev = std::get_if<RemoteBinding>(&before)) {
                remote = *prev;
                if (const NocConnection* conn = platform.find_connection(prev->connection)) params = *conn;
                if (!remote.latency_bound) {
                    // Pin the latency the chain had, before the destination moves.
                    const Tile* before_dst = platform.find_tile(tile_of(mapping, c.dst));
                    remote.latency_bound = before_dst != nullptr ? before_dst->tdma_wheel : 0;
                }
            } else if (const auto* prev_local = std::get_if<LocalBinding>(&before)) {
                remote.alpha_src = prev_local->buffer_tokens;
                remote.alpha_dst = std::max(spec.hw_buffer_tokens, iteration);
                remote.latency_bound = latency;
            } else if (const auto* prev_mem = std::get_if<MemoryBinding>(&before)) {
                if (const NocConnection* conn = platform.find_connection(prev_mem->connection)) params = *conn;
                remote.alpha_src = prev_mem->buffer_tokens;
                remote.alpha_dst = std::max(spec.hw_buffer_tokens, iteration);
                remote.latency_bound = latency;
            }
            remote.connection = connect(r.platform, src_tile, dst_tile, params);
            r.mapping.channel_binding[c.id] = remote;
        }
        r.channels.push_back({c.id, comm, was_local});
    }

    r.analysis_graph = build_analysis_graph(r.application, r.platform, r.mapping, options);
    return r;
}

Rational migration_gain(const ThroughputResult& base, const ThroughputResult& migrated, const Rational& clock_hz) {
    return frames_per_second(migrated, clock_hz) - frames_per_second(base, clock_hz);
}

Exploration explore_single_migrations(const Sdfg& graph, const Platform& platform, const Mapping& mapping,
                                      const MigrationSpec& defaults, const Rational& clock_hz,
                                      const SelfTimedOptions& analysis, const BuildOptions& build) {
    Exploration ex;
    ex.baseline = self_timed_throughput(build_analysis_graph(graph, platform, mapping, build), analysis);
    ex.baseline_fps = frames_per_second(ex.baseline, clock_hz);

    std::vector<std::future<ExplorationEntry>> jobs;
    for (const Actor& a : graph.actors()) {
        if (a.kind != ActorKind::software) continue;
        jobs.push_back(std::async(std::launch::async, [&, id = a.id] {
            ExplorationEntry e;
            e.actor = id;
            try {
                MigrationSpec spec = defaults;
                spec.actor = id;
                MigrationResult m = migrate_task(graph, platform, mapping, spec, build);
                e.result = self_timed_throughput(m.analysis_graph, analysis);
                e.fps = frames_per_second(*e.result, clock_hz);
                e.gain = e.fps - ex.baseline_fps;
            } catch (const std::exception& err) {
                e.diagnostic = err.what();
            }
            return e;
        }));
    }
    for (auto& job : jobs) ex.entries.push_back(job.get());

    std::stable_sort(ex.entries.begin(), ex.entries.end(), [](const ExplorationEntry& a, const ExplorationEntry& b) {
        if (a.result.has_value() != b.result.has_value()) return a.result.has_value();
        if (a.gain != b.gain) return a.gain > b.gain;
        return a.actor < b.actor;
    });
    return ex;
}

} // namespace sdfmig
