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


#ifndef SDFMIG_GRAPH_HPP
#define SDFMIG_GRAPH_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sdfmig/rational.hpp"

namespace sdfmig {

using ActorId = std::string;
using ChannelId = std::string;

enum class ActorKind { software, hardware, infrastructure };

std::string_view to_string(ActorKind kind);
std::optional<ActorKind> parse_actor_kind(std::string_view text);

struct Actor {
    ActorId id;
    std::string name;
    Int exec_time = 0; ///< clock cycles per firing
    ActorKind kind = ActorKind::software;

    friend bool operator==(const Actor&, const Actor&) = default;
};

struct Channel {
    ChannelId id;
    ActorId src;
    ActorId dst;
    Int prod_rate = 1;
    Int cons_rate = 1;
    Int initial_tokens = 0;
    Int token_size = 0; ///< bytes; 0 when the size is irrelevant (back-edges)

    bool is_self_loop() const { return src == dst; }

    friend bool operator==(const Channel&, const Channel&) = default;
};

/// Synchronous dataflow graph.
///
/// Actors and channels keep their insertion order; that order is the
/// "actor-id order" used wherever the analysis needs a deterministic sequence.
/// Adding an actor or channel with a duplicate id throws std::invalid_argument;
/// endpoints are not checked here (see validate()).
class Sdfg {
public:
    Sdfg() = default;

    const Actor& add_actor(Actor actor);
    const Channel& add_channel(Channel channel);

    /// Removes an actor together with every channel touching it.
    void remove_actor(const ActorId& id);
    void remove_channel(const ChannelId& id);

    const std::vector<Actor>& actors() const { return actors_; }
    const std::vector<Channel>& channels() const { return channels_; }

    bool has_actor(const ActorId& id) const { return actor_index_.contains(id); }
    bool has_channel(const ChannelId& id) const { return channel_index_.contains(id); }

    const Actor& actor(const ActorId& id) const;
    Actor& actor(const ActorId& id);
    const Channel& channel(const ChannelId& id) const;
    Channel& channel(const ChannelId& id);

    std::size_t actor_position(const ActorId& id) const;
    std::size_t channel_position(const ChannelId& id) const;

    /// Explicit reference actor, if one was set.
    const std::optional<ActorId>& reference_actor() const { return reference_actor_; }
    void set_reference_actor(std::optional<ActorId> id) { reference_actor_ = std::move(id); }

    std::vector<ChannelId> inputs_of(const ActorId& id) const;
    std::vector<ChannelId> outputs_of(const ActorId& id) const;
    bool has_self_loop(const ActorId& id) const;

    /// Returns `base` if unused, else `base#2`, `base#3`, ... for actors.
    ActorId unique_actor_id(const std::string& base) const;
    ChannelId unique_channel_id(const std::string& base) const;

    bool empty() const { return actors_.empty(); }

    friend bool operator==(const Sdfg& a, const Sdfg& b) {
        return a.actors_ == b.actors_ && a.channels_ == b.channels_ && a.reference_actor_ == b.reference_actor_;
    }

private:
    void reindex();

    std::vector<Actor> actors_;
    std::vector<Channel> channels_;
    std::unordered_map<ActorId, std::size_t> actor_index_;
    std::unordered_map<ChannelId, std::size_t> channel_index_;
    std::optional<ActorId> reference_actor_;
};

/// Smallest positive firing counts per actor that return every channel to its
/// initial token count.
struct RepetitionVector {
    std::map<ActorId, Int> entries;

    Int operator[](const ActorId& id) const { return entries.at(id); }
    friend bool operator==(const RepetitionVector&, const RepetitionVector&) = default;
};

/// Solves the balance equations per weakly connected component.
/// Throws InconsistentGraph when only the zero solution exists and
/// std::invalid_argument on dangling endpoints or non-positive rates.
RepetitionVector compute_repetition_vector(const Sdfg& graph);

enum class DiagnosticKind {
    duplicate_id,
    dangling_endpoint,
    zero_rate,
    negative_value,
    missing_reference_actor,
    inconsistent,
    unmapped_actor,
    unknown_tile,
    unknown_connection,
    not_processor_tile,
    slice_overflow,
    binding_mismatch,
    buffer_too_small,
    invalid_parameter,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
    DiagnosticKind kind;
    std::string subject; ///< id of the offending element
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Structural checks plus consistency. Empty result means the graph is usable.
std::vector<Diagnostic> validate(const Sdfg& graph);

/// Adds a (1, 1, 1 token) self-loop to every actor that lacks one.
Sdfg disable_auto_concurrency(const Sdfg& graph);

/// Actor used to count iterations: the explicit one when set, else the first
/// actor (in insertion order) whose repetition entry is 1, else the first actor.
ActorId reference_actor(const Sdfg& graph, const RepetitionVector& q);

} // namespace sdfmig

#endif // SDFMIG_GRAPH_HPP
