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


#include "sdfmig/platform.hpp"

#include <algorithm>

#include "sdfmig/errors.hpp"

namespace sdfmig {

std::string_view to_string(TileKind kind) {
    switch (kind) {
        case TileKind::processor: return "processor";
        case TileKind::hardware_block: return "hardware_block";
        case TileKind::memory: return "memory";
    }
    return "processor";
}

std::optional<TileKind> parse_tile_kind(std::string_view text) {
    if (text == "processor") return TileKind::processor;
    if (text == "hardware_block") return TileKind::hardware_block;
    if (text == "memory") return TileKind::memory;
    return std::nullopt;
}

const Tile* Platform::find_tile(const TileId& id) const {
    auto it = std::find_if(tiles.begin(), tiles.end(), [&](const Tile& t) { return t.id == id; });
    return it == tiles.end() ? nullptr : &*it;
}

const NocConnection* Platform::find_connection(const ConnectionId& id) const {
    auto it = std::find_if(connections.begin(), connections.end(), [&](const NocConnection& c) { return c.id == id; });
    return it == connections.end() ? nullptr : &*it;
}

namespace {

/// Software actors of `graph` placed on `tile`.
std::vector<ActorId> software_on_tile(const Sdfg& graph, const Mapping& mapping, const TileId& tile) {
    std::vector<ActorId> out;
    for (const auto& [actor, t] : mapping.actor_tile) {
        if (t == tile && graph.has_actor(actor) && graph.actor(actor).kind == ActorKind::software) {
            out.push_back(actor);
        }
    }
    return out;
}

Int slice_of(const Mapping& mapping, const ActorId& actor) {
    auto it = mapping.tdma_slice.find(actor);
    if (it == mapping.tdma_slice.end()) throw UnmappedActor("actor '" + actor + "' has no TDMA slice");
    return it->second;
}

const Tile& processor_tile_of(const ActorId& actor, const Platform& platform, const Mapping& mapping) {
    auto it = mapping.actor_tile.find(actor);
    if (it == mapping.actor_tile.end()) throw UnmappedActor("actor '" + actor + "' is not mapped to a tile");
    const Tile* tile = platform.find_tile(it->second);
    if (tile == nullptr) throw UnmappedActor("actor '" + actor + "' is mapped to unknown tile '" + it->second + "'");
    if (tile->kind != TileKind::processor) {
        throw UnmappedActor("software actor '" + actor + "' is mapped to non-processor tile '" + tile->id + "'");
    }
    return *tile;
}

} // namespace

Int tdma_wait(const ActorId& actor, const Sdfg& graph, const Platform& platform, const Mapping& mapping) {
    if (graph.actor(actor).kind != ActorKind::software) return 0;
    const Tile& tile = processor_tile_of(actor, platform, mapping);
    Int total = 0;
    Int others = 0;
    for (const ActorId& b : software_on_tile(graph, mapping, tile.id)) {
        Int s = slice_of(mapping, b);
        total = checked_add(total, s);
        if (b != actor) others = checked_add(others, s);
    }
    if (total > tile.tdma_wheel) {
        throw SliceOverflow("slices on tile '" + tile.id + "' sum to " + std::to_string(total) + " > wheel " +
                            std::to_string(tile.tdma_wheel));
    }
    slice_of(mapping, actor);
    return others;
}

std::map<ActorId, Int> compute_etam(const Sdfg& graph, const Platform& platform, const Mapping& mapping) {
    std::map<ActorId, Int> out;
    for (const Actor& a : graph.actors()) {
        Int wait = tdma_wait(a.id, graph, platform, mapping);
        out[a.id] = checked_add(a.exec_time, wait);
    }
    return out;
}

std::vector<Diagnostic> validate_mapping(const Sdfg& graph, const Platform& platform, const Mapping& mapping) {
    std::vector<Diagnostic> out;
    auto add = [&](DiagnosticKind k, const std::string& subject, const std::string& msg) {
        out.push_back({k, subject, msg});
    };

    for (const Tile& t : platform.tiles) {
        if (t.kind == TileKind::processor && t.tdma_wheel <= 0) {
            add(DiagnosticKind::invalid_parameter, t.id, "processor tile '" + t.id + "' needs a positive TDMA wheel");
        }
        if (t.clock_hz <= Rational(0)) {
            add(DiagnosticKind::invalid_parameter, t.id, "tile '" + t.id + "' needs a positive clock");
        }
    }
    for (const NocConnection& c : platform.connections) {
        if (platform.find_tile(c.src_tile) == nullptr || platform.find_tile(c.dst_tile) == nullptr) {
            add(DiagnosticKind::unknown_tile, c.id, "connection '" + c.id + "' references an unknown tile");
        }
        if (c.bandwidth <= Rational(0)) {
            add(DiagnosticKind::invalid_parameter, c.id, "connection '" + c.id + "' needs a positive bandwidth");
        }
        if (c.latency < 0) add(DiagnosticKind::negative_value, c.id, "connection '" + c.id + "' has negative latency");
    }

    for (const auto& [actor, tile] : mapping.actor_tile) {
        if (!graph.has_actor(actor)) {
            add(DiagnosticKind::dangling_endpoint, actor, "mapping references unknown actor '" + actor + "'");
        }
        if (platform.find_tile(tile) == nullptr) {
            add(DiagnosticKind::unknown_tile, actor, "actor '" + actor + "' is mapped to unknown tile '" + tile + "'");
        }
    }
    for (const auto& [actor, slice] : mapping.tdma_slice) {
        if (slice < 0) add(DiagnosticKind::negative_value, actor, "actor '" + actor + "' has a negative slice");
        if (!mapping.actor_tile.contains(actor)) {
            add(DiagnosticKind::unmapped_actor, actor, "actor '" + actor + "' has a slice but no tile");
        }
    }

    for (const Actor& a : graph.actors()) {
        if (a.kind != ActorKind::software) continue;
        auto it = mapping.actor_tile.find(a.id);
        if (it == mapping.actor_tile.end()) {
            add(DiagnosticKind::unmapped_actor, a.id, "software actor '" + a.id + "' is not mapped");
            continue;
        }
        const Tile* t = platform.find_tile(it->second);
        if (t != nullptr && t->kind != TileKind::processor) {
            add(DiagnosticKind::not_processor_tile, a.id,
                "software actor '" + a.id + "' is mapped to non-processor tile '" + t->id + "'");
        }
        if (!mapping.tdma_slice.contains(a.id)) {
            add(DiagnosticKind::unmapped_actor, a.id, "software actor '" + a.id + "' has no TDMA slice");
        }
    }

    for (const Tile& t : platform.tiles) {
        if (t.kind != TileKind::processor) continue;
        Int total = 0;
        for (const ActorId& b : software_on_tile(graph, mapping, t.id)) {
            auto s = mapping.tdma_slice.find(b);
            if (s != mapping.tdma_slice.end() && s->second > 0) total = checked_add(total, s->second);
        }
        if (total > t.tdma_wheel) {
            add(DiagnosticKind::slice_overflow, t.id,
                "slices on tile '" + t.id + "' sum to " + std::to_string(total) + " > wheel " +
                    std::to_string(t.tdma_wheel));
        }
    }

    auto tile_of = [&](const ActorId& a) -> std::optional<TileId> {
        auto it = mapping.actor_tile.find(a);
        if (it == mapping.actor_tile.end()) return std::nullopt;
        return it->second;
    };

    for (const auto& [cid, binding] : mapping.channel_binding) {
        if (!graph.has_channel(cid)) {
            add(DiagnosticKind::dangling_endpoint, cid, "binding references unknown channel '" + cid + "'");
            continue;
        }
        const Channel& ch = graph.channel(cid);
        auto src_tile = tile_of(ch.src);
        auto dst_tile = tile_of(ch.dst);
        if (!src_tile || !dst_tile) {
            add(DiagnosticKind::unmapped_actor, cid, "bound channel '" + cid + "' has an unmapped endpoint");
            continue;
        }
        auto check_connection = [&](const ConnectionId& conn_id) {
            const NocConnection* conn = platform.find_connection(conn_id);
            if (conn == nullptr) {
                add(DiagnosticKind::unknown_connection, cid,
                    "channel '" + cid + "' is bound to unknown connection '" + conn_id + "'");
                return;
            }
            if (conn->src_tile != *src_tile || conn->dst_tile != *dst_tile) {
                add(DiagnosticKind::binding_mismatch, cid,
                    "channel '" + cid + "' runs " + *src_tile + "->" + *dst_tile + " but connection '" + conn_id +
                        "' runs " + conn->src_tile + "->" + conn->dst_tile);
            }
        };
        if (const auto* local = std::get_if<LocalBinding>(&binding)) {
            if (*src_tile != *dst_tile) {
                add(DiagnosticKind::binding_mismatch, cid,
                    "channel '" + cid + "' is bound locally but its endpoints are on different tiles");
            }
            if (local->buffer_tokens < ch.initial_tokens || local->buffer_tokens < 1) {
                add(DiagnosticKind::buffer_too_small, cid,
                    "channel '" + cid + "' buffer of " + std::to_string(local->buffer_tokens) +
                        " tokens cannot hold its initial tokens");
            }
        } else if (const auto* remote = std::get_if<RemoteBinding>(&binding)) {
            check_connection(remote->connection);
            if (remote->alpha_src < 1 || remote->alpha_dst < 1) {
                add(DiagnosticKind::buffer_too_small, cid, "channel '" + cid + "' needs alpha_src, alpha_dst >= 1");
            }
            if (remote->latency_bound && *remote->latency_bound < 0) {
                add(DiagnosticKind::negative_value, cid, "channel '" + cid + "' has a negative latency bound");
            }
        } else if (const auto* mem = std::get_if<MemoryBinding>(&binding)) {
            check_connection(mem->connection);
            if (mem->batch < 1) {
                add(DiagnosticKind::invalid_parameter, cid, "channel '" + cid + "' needs a batch of at least 1");
            }
            if (mem->prefetch_time < 0) {
                add(DiagnosticKind::negative_value, cid, "channel '" + cid + "' has a negative prefetch time");
            }
            if (mem->buffer_tokens < checked_mul(std::max<Int>(mem->batch, 1), ch.cons_rate)) {
                add(DiagnosticKind::buffer_too_small, cid,
                    "channel '" + cid + "' memory must hold one batch (" +
                        std::to_string(std::max<Int>(mem->batch, 1) * ch.cons_rate) + " tokens)");
            }
        }
    }
    return out;
}

} // namespace sdfmig
