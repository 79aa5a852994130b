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


#ifndef SDFMIG_MIGRATION_HPP
#define SDFMIG_MIGRATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdfmig/analysis.hpp"
#include "sdfmig/graph.hpp"
#include "sdfmig/platform.hpp"
#include "sdfmig/transforms.hpp"

namespace sdfmig {

/// Communication pattern of a channel, by endpoint kind.
enum class CommClass { SS, SH1, HS1, HH1 };

std::string_view to_string(CommClass c);

/// SW->SW = SS, SW->HW = SH1, HW->SW = HS1, HW->HW = HH1. Infrastructure
/// actors count as software.
CommClass classify_channel(const Channel& channel, const Sdfg& graph);

/// Parameters of one software-to-hardware migration.
struct MigrationSpec {
    ActorId actor;
    Rational speedup{2};
    Int prefetch_time = 10000;
    /// Latency and bandwidth for new traffic to or from the hardware block;
    /// id and tiles are filled in per connection.
    NocConnection hw_connection{"", "", "", 3, Rational(203139, 100000000)};
    /// Hardware block memory in tokens: destination buffer of incoming
    /// channels and the producer-side store read by prefetching consumers.
    /// Raised per channel to one iteration plus the initial tokens.
    Int hw_buffer_tokens = 24;
    /// Tokens one prefetch can bring; consumers needing more per firing get a fetch path.
    Int prefetch_tokens = 1;
    /// Latency bound of new connections; defaults to the vacated tile's TDMA wheel.
    std::optional<Int> hw_latency_bound;

    friend bool operator==(const MigrationSpec&, const MigrationSpec&) = default;
};

struct MigratedChannel {
    ChannelId channel;
    CommClass comm;
    bool new_noc_traffic = false; ///< channel was local before the migration

    friend bool operator==(const MigratedChannel&, const MigratedChannel&) = default;
};

struct MigrationResult {
    Sdfg application; ///< execution times before mapping, migrated actor marked hardware
    Platform platform;
    Mapping mapping;
    Sdfg analysis_graph;
    TileId hardware_tile;
    std::vector<MigratedChannel> channels;
};

/// Moves `spec.actor` onto a fresh hardware tile:
///  - its execution time becomes floor(time / speedup);
///  - its TDMA slice is released, so co-mapped actors and their slot waits shrink;
///  - each incident channel is rebound according to its communication class
///    (SH1 and HH1 over a connection, HS1 through a prefetching consumer).
///
/// Throws UnknownActor, AlreadyHardware or UnmappedActor.
MigrationResult migrate_task(const Sdfg& graph, const Platform& platform, const Mapping& mapping,
                             const MigrationSpec& spec, const BuildOptions& options = {});

/// fps(migrated) - fps(base).
Rational migration_gain(const ThroughputResult& base, const ThroughputResult& migrated, const Rational& clock_hz);

struct ExplorationEntry {
    ActorId actor;
    std::optional<ThroughputResult> result;
    Rational fps;
    Rational gain;
    std::string diagnostic; ///< set when the candidate could not be analysed
};

struct Exploration {
    ThroughputResult baseline;
    Rational baseline_fps;
    std::vector<ExplorationEntry> entries; ///< by descending gain, ties by actor id, failures last
};

/// Migrates every software actor in turn and ranks the outcomes. Candidates are
/// evaluated concurrently; each owns its copy of the scenario.
Exploration explore_single_migrations(const Sdfg& graph, const Platform& platform, const Mapping& mapping,
                                      const MigrationSpec& defaults, const Rational& clock_hz,
                                      const SelfTimedOptions& analysis = {}, const BuildOptions& build = {});

} // namespace sdfmig

#endif // SDFMIG_MIGRATION_HPP
