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


#include "sdfmig/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "sdfmig/errors.hpp"

namespace sdfmig {

std::string_view to_string(ActorKind kind) {
    switch (kind) {
        case ActorKind::software: return "software";
        case ActorKind::hardware: return "hardware";
        case ActorKind::infrastructure: return "infrastructure";
    }
    return "software";
}

std::optional<ActorKind> parse_actor_kind(std::string_view text) {
    if (text == "software") return ActorKind::software;
    if (text == "hardware") return ActorKind::hardware;
    if (text == "infrastructure") return ActorKind::infrastructure;
    return std::nullopt;
}

std::string_view to_string(DiagnosticKind kind) {
    switch (kind) {
        case DiagnosticKind::duplicate_id: return "DuplicateId";
        case DiagnosticKind::dangling_endpoint: return "DanglingEndpoint";
        case DiagnosticKind::zero_rate: return "ZeroRate";
        case DiagnosticKind::negative_value: return "NegativeValue";
        case DiagnosticKind::missing_reference_actor: return "MissingReferenceActor";
        case DiagnosticKind::inconsistent: return "Inconsistent";
        case DiagnosticKind::unmapped_actor: return "UnmappedActor";
        case DiagnosticKind::unknown_tile: return "UnknownTile";
        case DiagnosticKind::unknown_connection: return "UnknownConnection";
        case DiagnosticKind::not_processor_tile: return "NotProcessorTile";
        case DiagnosticKind::slice_overflow: return "SliceOverflow";
        case DiagnosticKind::binding_mismatch: return "BindingMismatch";
        case DiagnosticKind::buffer_too_small: return "BufferTooSmall";
        case DiagnosticKind::invalid_parameter: return "InvalidParameter";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// Sdfg
// ---------------------------------------------------------------------------

const Actor& Sdfg::add_actor(Actor actor) {
    if (actor_index_.contains(actor.id)) throw Error("duplicate actor id '" + actor.id + "'");
    actor_index_.emplace(actor.id, actors_.size());
    actors_.push_back(std::move(actor));
    return actors_.back();
}

const Channel& Sdfg::add_channel(Channel channel) {
    if (channel_index_.contains(channel.id)) {
        throw Error("duplicate channel id '" + channel.id + "'");
    }
    channel_index_.emplace(channel.id, channels_.size());
    channels_.push_back(std::move(channel));
    return channels_.back();
}

void Sdfg::remove_actor(const ActorId& id) {
    if (!has_actor(id)) throw UnknownActor("unknown actor '" + id + "'");
    std::erase_if(actors_, [&](const Actor& a) { return a.id == id; });
    std::erase_if(channels_, [&](const Channel& c) { return c.src == id || c.dst == id; });
    if (reference_actor_ == id) reference_actor_.reset();
    reindex();
}

void Sdfg::remove_channel(const ChannelId& id) {
    if (!has_channel(id)) throw UnknownChannel("unknown channel '" + id + "'");
    std::erase_if(channels_, [&](const Channel& c) { return c.id == id; });
    reindex();
}

void Sdfg::reindex() {
    actor_index_.clear();
    channel_index_.clear();
    for (std::size_t i = 0; i < actors_.size(); ++i) actor_index_.emplace(actors_[i].id, i);
    for (std::size_t i = 0; i < channels_.size(); ++i) channel_index_.emplace(channels_[i].id, i);
}

const Actor& Sdfg::actor(const ActorId& id) const { return actors_[actor_position(id)]; }
Actor& Sdfg::actor(const ActorId& id) { return actors_[actor_position(id)]; }
const Channel& Sdfg::channel(const ChannelId& id) const { return channels_[channel_position(id)]; }
Channel& Sdfg::channel(const ChannelId& id) { return channels_[channel_position(id)]; }

std::size_t Sdfg::actor_position(const ActorId& id) const {
    auto it = actor_index_.find(id);
    if (it == actor_index_.end()) throw UnknownActor("unknown actor '" + id + "'");
    return it->second;
}

std::size_t Sdfg::channel_position(const ChannelId& id) const {
    auto it = channel_index_.find(id);
    if (it == channel_index_.end()) throw UnknownChannel("unknown channel '" + id + "'");
    return it->second;
}

std::vector<ChannelId> Sdfg::inputs_of(const ActorId& id) const {
    std::vector<ChannelId> out;
    for (const auto& c : channels_) {
        if (c.dst == id) out.push_back(c.id);
    }
    return out;
}

std::vector<ChannelId> Sdfg::outputs_of(const ActorId& id) const {
    std::vector<ChannelId> out;
    for (const auto& c : channels_) {
        if (c.src == id) out.push_back(c.id);
    }
    return out;
}

bool Sdfg::has_self_loop(const ActorId& id) const {
    return std::any_of(channels_.begin(), channels_.end(),
                       [&](const Channel& c) { return c.src == id && c.dst == id; });
}

ActorId Sdfg::unique_actor_id(const std::string& base) const {
    if (!has_actor(base)) return base;
    for (int i = 2;; ++i) {
        std::string candidate = base + "#" + std::to_string(i);
        if (!has_actor(candidate)) return candidate;
    }
}

ChannelId Sdfg::unique_channel_id(const std::string& base) const {
    if (!has_channel(base)) return base;
    for (int i = 2;; ++i) {
        std::string candidate = base + "#" + std::to_string(i);
        if (!has_channel(candidate)) return candidate;
    }
}

// ---------------------------------------------------------------------------
// Consistency
// ---------------------------------------------------------------------------

RepetitionVector compute_repetition_vector(const Sdfg& graph) {
    const auto& actors = graph.actors();
    const std::size_t n = actors.size();

    // Adjacency over channel indices, both directions.
    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t ci = 0; ci < graph.channels().size(); ++ci) {
        const Channel& c = graph.channels()[ci];
        if (!graph.has_actor(c.src) || !graph.has_actor(c.dst)) {
            throw std::invalid_argument("channel '" + c.id + "' has a dangling endpoint");
        }
        if (c.prod_rate < 1 || c.cons_rate < 1) {
            throw std::invalid_argument("channel '" + c.id + "' has a non-positive rate");
        }
        incident[graph.actor_position(c.src)].push_back(ci);
        incident[graph.actor_position(c.dst)].push_back(ci);
    }

    std::vector<std::optional<Rational>> ratio(n);
    std::vector<Int> q(n, 0);

    for (std::size_t root = 0; root < n; ++root) {
        if (ratio[root]) continue;
        // BFS assigns relative firing ratios inside one weakly connected component.
        std::vector<std::size_t> component{root};
        ratio[root] = Rational(1);
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            std::size_t a = queue.front();
            queue.pop_front();
            for (std::size_t ci : incident[a]) {
                const Channel& c = graph.channels()[ci];
                std::size_t s = graph.actor_position(c.src);
                std::size_t d = graph.actor_position(c.dst);
                // q(s) * prod = q(d) * cons
                std::size_t other = (s == a) ? d : s;
                Rational expected = (s == a) ? *ratio[a] * Rational(c.prod_rate, c.cons_rate)
                                             : *ratio[a] * Rational(c.cons_rate, c.prod_rate);
                if (s == d) expected = *ratio[a];
                if (!ratio[other]) {
                    ratio[other] = expected;
                    component.push_back(other);
                    queue.push_back(other);
                }
            }
        }
        Int scale = 1;
        for (std::size_t a : component) scale = lcm(scale, ratio[a]->den());
        Int g = 0;
        for (std::size_t a : component) {
            q[a] = (*ratio[a] * Rational(scale)).num();
            g = gcd(g, q[a]);
        }
        for (std::size_t a : component) q[a] /= g;
    }

    for (const Channel& c : graph.channels()) {
        Int lhs = checked_mul(q[graph.actor_position(c.src)], c.prod_rate);
        Int rhs = checked_mul(q[graph.actor_position(c.dst)], c.cons_rate);
        if (lhs != rhs) {
            throw InconsistentGraph("balance equation violated on channel '" + c.id + "': " + std::to_string(lhs) +
                                    " produced vs " + std::to_string(rhs) + " consumed per iteration");
        }
    }

    RepetitionVector rv;
    for (std::size_t i = 0; i < n; ++i) rv.entries.emplace(actors[i].id, q[i]);
    return rv;
}

std::vector<Diagnostic> validate(const Sdfg& graph) {
    std::vector<Diagnostic> out;
    bool structural_ok = true;

    for (const Actor& a : graph.actors()) {
        if (a.exec_time < 0) {
            out.push_back({DiagnosticKind::negative_value, a.id, "actor '" + a.id + "' has a negative execution time"});
        }
    }
    for (const Channel& c : graph.channels()) {
        if (!graph.has_actor(c.src) || !graph.has_actor(c.dst)) {
            out.push_back({DiagnosticKind::dangling_endpoint, c.id,
                           "channel '" + c.id + "' references an unknown actor"});
            structural_ok = false;
        }
        if (c.prod_rate < 1 || c.cons_rate < 1) {
            out.push_back({DiagnosticKind::zero_rate, c.id, "channel '" + c.id + "' has a rate below 1"});
            structural_ok = false;
        }
        if (c.initial_tokens < 0) {
            out.push_back({DiagnosticKind::negative_value, c.id,
                           "channel '" + c.id + "' has negative initial tokens"});
        }
        if (c.token_size < 0) {
            out.push_back({DiagnosticKind::negative_value, c.id, "channel '" + c.id + "' has a negative token size"});
        }
    }
    if (const auto& ref = graph.reference_actor(); ref && !graph.has_actor(*ref)) {
        out.push_back({DiagnosticKind::missing_reference_actor, *ref,
                       "reference actor '" + *ref + "' is not part of the graph"});
    }
    if (structural_ok) {
        try {
            compute_repetition_vector(graph);
        } catch (const InconsistentGraph& e) {
            out.push_back({DiagnosticKind::inconsistent, "", e.what()});
        }
    }
    return out;
}

Sdfg disable_auto_concurrency(const Sdfg& graph) {
    Sdfg out = graph;
    for (const Actor& a : graph.actors()) {
        if (graph.has_self_loop(a.id)) continue;
        out.add_channel(Channel{out.unique_channel_id(a.id + ".self"), a.id, a.id, 1, 1, 1, 0});
    }
    return out;
}

ActorId reference_actor(const Sdfg& graph, const RepetitionVector& q) {
    if (graph.reference_actor()) return *graph.reference_actor();
    if (graph.actors().empty()) throw std::invalid_argument("empty graph has no reference actor");
    for (const Actor& a : graph.actors()) {
        if (q[a.id] == 1) return a.id;
    }
    return graph.actors().front().id;
}

} // namespace sdfmig
