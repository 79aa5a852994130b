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


#ifndef SDFMIG_TRANSFORMS_HPP
#define SDFMIG_TRANSFORMS_HPP

#include <vector>

#include "sdfmig/graph.hpp"
#include "sdfmig/platform.hpp"

namespace sdfmig {

/// Cycles to push one token through a connection: L(c) + floor(size / bandwidth).
Int connection_actor_time(Int token_size, const NocConnection& connection);

/// Adds the buffer back-edge dst -> src of a channel whose endpoints share a
/// tile. The back-edge carries the swapped rates and
/// `buffer_tokens - initial_tokens` tokens. Throws BufferTooSmall.
Sdfg bind_local_channel(const Sdfg& graph, const ChannelId& channel, Int buffer_tokens);

struct RemoteBindingParams {
    Int alpha_src = 1;
    Int alpha_dst = 1;
    Int token_size = 0;
    NocConnection connection;
    Int latency_bound = 0;
};

/// Where the destination buffer back-edge of a remote channel ends.
enum class DstBufferEdge { to_send_actor, to_slot_wait_actor };

/// Ids of the actors inserted for a remote channel.
struct RemoteChain {
    ActorId send;      ///< token transmission over the connection
    ActorId latency;   ///< guaranteed connection latency
    ActorId slot_wait; ///< wait for the consumer's next TDMA slot
};

RemoteChain remote_chain_ids(const ChannelId& channel);

/// Replaces a channel with src -> send -> latency -> slot_wait -> dst plus the
/// source and destination buffer back-edges. The original channel id is kept
/// for the src -> send edge. Throws SameTile for self-loops and
/// std::invalid_argument for non-positive alphas.
Sdfg bind_remote_channel(const Sdfg& graph, const ChannelId& channel, const RemoteBindingParams& params, Int dst_wait,
                         DstBufferEdge dst_edge = DstBufferEdge::to_send_actor);

struct MemoryAwareParams {
    Int n = 1;             ///< firings per gated batch
    Int prefetch_time = 0; ///< issue cost, also part of the memory actor's time
    Int transfer_time = 0; ///< NoC transfer added to the memory actor
    bool enable_fetch_path = false;
    /// Input channels routed through the input gate; empty means every
    /// non-self-loop input.
    std::vector<ChannelId> gated_inputs;
};

/// Ids of the actors that replace a memory-aware actor.
struct MemoryAwareActors {
    ActorId gate_in;
    ActorId issue;    ///< prefetch request, runs ahead of execution
    ActorId prefetch; ///< remote memory serving the prefetch
    ActorId exec;     ///< the original computation
    ActorId fetch;    ///< remote memory serving late fetches (optional)
    ActorId gate_out;
};

MemoryAwareActors memory_aware_ids(const ActorId& actor);

/// Replaces `actor` by the prefetch/execute template:
///
///   gated inputs -> gate_in -(n:1)-> prefetch -> exec -(1:n)-> gate_out -(n:1)-> exec
///   issue <-> prefetch (1 token toward issue), exec -> issue (2 slot tokens),
///   prefetch -(1:n)-> gate_in (n tokens), optional exec <-> fetch.
///
/// Remaining inputs and all outputs of `actor` move to `exec`. Throws UnknownActor.
Sdfg memory_aware_transform(const Sdfg& graph, const ActorId& actor, const MemoryAwareParams& params);

struct BuildOptions {
    bool keep_auto_concurrency = false;
    DstBufferEdge dst_edge = DstBufferEdge::to_send_actor;
};

/// Turns an application graph plus platform and mapping into the graph whose
/// throughput is analysed: execution times after mapping, memory-aware
/// rewrites, then local/remote bindings, then self-loops.
Sdfg build_analysis_graph(const Sdfg& application, const Platform& platform, const Mapping& mapping,
                          const BuildOptions& options = {});

} // namespace sdfmig

#endif // SDFMIG_TRANSFORMS_HPP
