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


#ifndef SDFMIG_PLATFORM_HPP
#define SDFMIG_PLATFORM_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sdfmig/graph.hpp"
#include "sdfmig/rational.hpp"

namespace sdfmig {

using TileId = std::string;
using ConnectionId = std::string;

enum class TileKind { processor, hardware_block, memory };

std::string_view to_string(TileKind kind);
std::optional<TileKind> parse_tile_kind(std::string_view text);

struct Tile {
    TileId id;
    TileKind kind = TileKind::processor;
    Int tdma_wheel = 0; ///< cycles; meaningful for processor tiles only
    Rational clock_hz{100'000'000};

    friend bool operator==(const Tile&, const Tile&) = default;
};

/// Point-to-point NoC connection.
struct NocConnection {
    ConnectionId id;
    TileId src_tile;
    TileId dst_tile;
    Int latency = 0;      ///< cycles
    Rational bandwidth{1}; ///< bytes per cycle

    friend bool operator==(const NocConnection&, const NocConnection&) = default;
};

struct Platform {
    std::vector<Tile> tiles;
    std::vector<NocConnection> connections;

    const Tile* find_tile(const TileId& id) const;
    const NocConnection* find_connection(const ConnectionId& id) const;

    friend bool operator==(const Platform&, const Platform&) = default;
};

/// Producer and consumer share a tile; the channel gets `buffer_tokens` of local memory.
struct LocalBinding {
    Int buffer_tokens = 1;

    friend bool operator==(const LocalBinding&, const LocalBinding&) = default;
};

/// Channel crosses the NoC over `connection`.
struct RemoteBinding {
    ConnectionId connection;
    Int alpha_src = 1; ///< tokens of buffer space in the source tile
    Int alpha_dst = 1; ///< tokens of buffer space in the destination tile
    std::optional<Int> latency_bound; ///< defaults to the destination tile's TDMA wheel

    friend bool operator==(const RemoteBinding&, const RemoteBinding&) = default;
};

/// Producer keeps its output in its own memory; the consumer pulls it with
/// prefetch requests over `connection`.
struct MemoryBinding {
    ConnectionId connection;
    Int buffer_tokens = 1;  ///< producer-side memory, in tokens
    Int batch = 1;          ///< consumer firings released per gate firing
    Int prefetch_time = 0;  ///< cycles to issue and serve one prefetch
    bool fetch_path = false;

    friend bool operator==(const MemoryBinding&, const MemoryBinding&) = default;
};

using ChannelBinding = std::variant<LocalBinding, RemoteBinding, MemoryBinding>;

struct Mapping {
    std::map<ActorId, TileId> actor_tile;
    std::map<ActorId, Int> tdma_slice;
    /// Channels without an entry are analysed as written.
    std::map<ChannelId, ChannelBinding> channel_binding;

    friend bool operator==(const Mapping&, const Mapping&) = default;
};

/// Execution time after mapping: the actor's own time plus the slices of the
/// other actors sharing its processor tile. Hardware and infrastructure actors
/// keep their time. Throws UnmappedActor or SliceOverflow.
std::map<ActorId, Int> compute_etam(const Sdfg& graph, const Platform& platform, const Mapping& mapping);

/// Worst-case wait for the actor's next TDMA slot (0 for hardware).
Int tdma_wait(const ActorId& actor, const Sdfg& graph, const Platform& platform, const Mapping& mapping);

std::vector<Diagnostic> validate_mapping(const Sdfg& graph, const Platform& platform, const Mapping& mapping);

} // namespace sdfmig

#endif // SDFMIG_PLATFORM_HPP
