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


#include "sdfmig/transforms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sdfmig/errors.hpp"

namespace sdfmig {

Int connection_actor_time(Int token_size, const NocConnection& connection) {
    if (connection.bandwidth <= Rational(0)) {
        throw std::invalid_argument("connection '" + connection.id + "' needs a positive bandwidth");
    }
    if (token_size < 0) throw std::invalid_argument("token size must be non-negative");
    return checked_add(connection.latency, (Rational(token_size) / connection.bandwidth).floor());
}

Sdfg bind_local_channel(const Sdfg& graph, const ChannelId& channel, Int buffer_tokens) {
    const Channel& fwd = graph.channel(channel);
    if (buffer_tokens < fwd.initial_tokens) {
        throw BufferTooSmall("buffer of " + std::to_string(buffer_tokens) + " tokens on channel '" + channel +
                             "' is smaller than its " + std::to_string(fwd.initial_tokens) + " initial tokens");
    }
    Sdfg out = graph;
    out.add_channel(Channel{out.unique_channel_id(channel + ".space"), fwd.dst, fwd.src, fwd.cons_rate, fwd.prod_rate,
                            buffer_tokens - fwd.initial_tokens, 0});
    return out;
}

RemoteChain remote_chain_ids(const ChannelId& channel) {
    return {channel + ".send", channel + ".latency", channel + ".slot_wait"};
}

Sdfg bind_remote_channel(const Sdfg& graph, const ChannelId& channel, const RemoteBindingParams& params, Int dst_wait,
                         DstBufferEdge dst_edge) {
    const Channel orig = graph.channel(channel);
    if (orig.is_self_loop()) throw SameTile("self-loop '" + channel + "' cannot be bound to a connection");
    if (params.alpha_src < 1 || params.alpha_dst < 1) {
        throw std::invalid_argument("channel '" + channel + "' needs alpha_src and alpha_dst of at least 1");
    }
    if (params.latency_bound < 0 || dst_wait < 0) {
        throw std::invalid_argument("latency bound and slot wait must be non-negative");
    }

    const RemoteChain ids = remote_chain_ids(channel);
    Sdfg out = graph;
    for (const ActorId& id : {ids.send, ids.latency, ids.slot_wait}) {
        if (out.has_actor(id)) throw std::invalid_argument("channel '" + channel + "' is already bound");
    }
    out.add_actor({ids.send, "send " + channel, connection_actor_time(params.token_size, params.connection),
                   ActorKind::infrastructure});
    out.add_actor({ids.latency, "latency " + channel, params.latency_bound, ActorKind::infrastructure});
    out.add_actor({ids.slot_wait, "slot wait " + channel, dst_wait, ActorKind::infrastructure});

    Channel& head = out.channel(channel);
    head.dst = ids.send;
    head.cons_rate = 1;
    head.initial_tokens = 0;

    out.add_channel({channel + ".link", ids.send, ids.latency, 1, 1, 0, params.token_size});
    out.add_channel({channel + ".wait", ids.latency, ids.slot_wait, 1, 1, 0, params.token_size});
    out.add_channel(
        {channel + ".deliver", ids.slot_wait, orig.dst, 1, orig.cons_rate, orig.initial_tokens, params.token_size});
    out.add_channel({channel + ".src_space", ids.send, orig.src, 1, orig.prod_rate, params.alpha_src, 0});
    const ActorId& dst_target = dst_edge == DstBufferEdge::to_send_actor ? ids.send : ids.slot_wait;
    out.add_channel({channel + ".dst_space", orig.dst, dst_target, orig.cons_rate, 1, params.alpha_dst, 0});
    for (const ActorId& id : {ids.send, ids.latency, ids.slot_wait}) {
        out.add_channel({id + ".self", id, id, 1, 1, 1, 0});
    }
    return out;
}

MemoryAwareActors memory_aware_ids(const ActorId& actor) {
    return {actor + ".gate_in", actor + ".issue", actor + ".prefetch",
            actor + ".exec",    actor + ".fetch", actor + ".gate_out"};
}

Sdfg memory_aware_transform(const Sdfg& graph, const ActorId& actor, const MemoryAwareParams& params) {
    if (!graph.has_actor(actor)) throw UnknownActor("unknown actor '" + actor + "'");
    if (params.n < 1) throw std::invalid_argument("memory-aware batch n must be at least 1");
    if (params.prefetch_time < 0 || params.transfer_time < 0) {
        throw std::invalid_argument("prefetch and transfer times must be non-negative");
    }
    const Actor original = graph.actor(actor);
    const MemoryAwareActors ids = memory_aware_ids(actor);

    std::vector<ChannelId> gated = params.gated_inputs;
    if (gated.empty()) {
        for (const ChannelId& cid : graph.inputs_of(actor)) {
            if (!graph.channel(cid).is_self_loop()) gated.push_back(cid);
        }
    }
    for (const ChannelId& cid : gated) {
        const Channel& c = graph.channel(cid);
        if (c.dst != actor || c.is_self_loop()) {
            throw std::invalid_argument("channel '" + cid + "' is not an external input of '" + actor + "'");
        }
    }

    Sdfg out;
    for (const Actor& a : graph.actors()) {
        if (a.id != actor) {
            out.add_actor(a);
            continue;
        }
        const std::string& name = original.name.empty() ? actor : original.name;
        out.add_actor({ids.gate_in, name + " input gate", 1, ActorKind::infrastructure});
        out.add_actor({ids.issue, name + " prefetch issue", params.prefetch_time, original.kind});
        out.add_actor(
            {ids.prefetch, name + " prefetch memory", checked_add(params.prefetch_time, params.transfer_time),
             ActorKind::infrastructure});
        out.add_actor({ids.exec, name, original.exec_time, original.kind});
        if (params.enable_fetch_path) {
            out.add_actor({ids.fetch, name + " fetch memory", params.transfer_time, ActorKind::infrastructure});
        }
        out.add_actor({ids.gate_out, name + " output gate", 1, ActorKind::infrastructure});
    }
    for (Channel c : graph.channels()) {
        if (std::find(gated.begin(), gated.end(), c.id) != gated.end()) {
            c.dst = ids.gate_in;
            c.cons_rate = checked_mul(c.cons_rate, params.n);
        } else {
            if (c.src == actor) c.src = ids.exec;
            if (c.dst == actor) c.dst = ids.exec;
        }
        out.add_channel(std::move(c));
    }

    auto add = [&](const std::string& suffix, const ActorId& s, const ActorId& d, Int p, Int c, Int t) {
        out.add_channel({out.unique_channel_id(actor + "." + suffix), s, d, p, c, t, 0});
    };
    add("release", ids.gate_in, ids.prefetch, params.n, 1, 0);
    add("released", ids.prefetch, ids.gate_in, 1, params.n, params.n);
    add("request", ids.issue, ids.prefetch, 1, 1, 0);
    add("request_done", ids.prefetch, ids.issue, 1, 1, 1);
    add("data", ids.prefetch, ids.exec, 1, 1, 0);
    add("slots", ids.exec, ids.issue, 1, 1, 2);
    add("done", ids.exec, ids.gate_out, 1, params.n, 0);
    add("batch", ids.gate_out, ids.exec, params.n, 1, params.n);
    if (params.enable_fetch_path) {
        add("fetch_request", ids.exec, ids.fetch, 1, 1, 0);
        add("fetch_done", ids.fetch, ids.exec, 1, 1, 1);
    }
    std::vector<ActorId> fresh{ids.gate_in, ids.issue, ids.prefetch, ids.gate_out};
    if (params.enable_fetch_path) fresh.push_back(ids.fetch);
    if (!out.has_self_loop(ids.exec)) fresh.push_back(ids.exec);
    for (const ActorId& id : fresh) add(id.substr(actor.size() + 1) + ".self", id, id, 1, 1, 1);

    if (graph.reference_actor() == actor) {
        out.set_reference_actor(ids.exec);
    } else {
        out.set_reference_actor(graph.reference_actor());
    }
    return out;
}

Sdfg build_analysis_graph(const Sdfg& application, const Platform& platform, const Mapping& mapping,
                          const BuildOptions& options) {
    Sdfg graph = application;
    const auto etam = compute_etam(application, platform, mapping);
    for (const auto& [id, et] : etam) graph.actor(id).exec_time = et;

    auto tile_of = [&](const ActorId& a) -> const TileId& {
        auto it = mapping.actor_tile.find(a);
        if (it == mapping.actor_tile.end()) throw UnmappedActor("actor '" + a + "' is not mapped to a tile");
        return it->second;
    };
    auto connection = [&](const ConnectionId& id) -> const NocConnection& {
        const NocConnection* c = platform.find_connection(id);
        if (c == nullptr) throw std::invalid_argument("unknown connection '" + id + "'");
        return *c;
    };

    // Memory-aware rewrites, one per consumer.
    std::map<ActorId, MemoryAwareParams> memory;
    std::vector<ActorId> memory_order;
    for (const Channel& c : application.channels()) {
        auto it = mapping.channel_binding.find(c.id);
        if (it == mapping.channel_binding.end()) continue;
        const auto* mem = std::get_if<MemoryBinding>(&it->second);
        if (mem == nullptr) continue;
        MemoryAwareParams params;
        params.n = mem->batch;
        params.prefetch_time = mem->prefetch_time;
        params.transfer_time = connection_actor_time(c.token_size, connection(mem->connection));
        params.enable_fetch_path = mem->fetch_path;
        auto [pos, inserted] = memory.try_emplace(c.dst, params);
        if (!inserted) {
            MemoryAwareParams& prev = pos->second;
            if (prev.n != params.n || prev.prefetch_time != params.prefetch_time) {
                throw std::invalid_argument("memory bindings into '" + c.dst + "' disagree on batch or prefetch time");
            }
            prev.transfer_time = std::max(prev.transfer_time, params.transfer_time);
            prev.enable_fetch_path = prev.enable_fetch_path || params.enable_fetch_path;
        } else {
            memory_order.push_back(c.dst);
        }
        pos->second.gated_inputs.push_back(c.id);
    }
    for (const ActorId& consumer : memory_order) graph = memory_aware_transform(graph, consumer, memory.at(consumer));

    for (const Channel& c : application.channels()) {
        auto it = mapping.channel_binding.find(c.id);
        if (it == mapping.channel_binding.end()) continue;
        if (const auto* local = std::get_if<LocalBinding>(&it->second)) {
            graph = bind_local_channel(graph, c.id, local->buffer_tokens);
        } else if (const auto* mem = std::get_if<MemoryBinding>(&it->second)) {
            graph = bind_local_channel(graph, c.id, mem->buffer_tokens);
        } else if (const auto* remote = std::get_if<RemoteBinding>(&it->second)) {
            if (tile_of(c.src) == tile_of(c.dst)) {
                throw SameTile("channel '" + c.id + "' is bound to a connection but both endpoints are on tile '" +
                               tile_of(c.src) + "'");
            }
            RemoteBindingParams params;
            params.alpha_src = remote->alpha_src;
            params.alpha_dst = remote->alpha_dst;
            params.token_size = c.token_size;
            params.connection = connection(remote->connection);
            if (remote->latency_bound) {
                params.latency_bound = *remote->latency_bound;
            } else {
                const Tile* dst_tile = platform.find_tile(tile_of(c.dst));
                params.latency_bound = dst_tile != nullptr ? dst_tile->tdma_wheel : 0;
            }
            Int wait = tdma_wait(c.dst, application, platform, mapping);
            graph = bind_remote_channel(graph, c.id, params, wait, options.dst_edge);
        }
    }

    if (!options.keep_auto_concurrency) graph = disable_auto_concurrency(graph);
    return graph;
}

} // namespace sdfmig
