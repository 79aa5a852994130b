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


#ifndef SDFMIG_ANALYSIS_HPP
#define SDFMIG_ANALYSIS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sdfmig/graph.hpp"
#include "sdfmig/rational.hpp"

namespace sdfmig {

/// Steady-state throughput of a self-timed execution.
struct ThroughputResult {
    Rational iterations_per_cycle;        ///< reference firings / (q(ref) * period)
    Int period_cycles = 1;                ///< length of the periodic phase
    Int transient_cycles = 0;             ///< time at which the periodic phase starts
    Int reference_firings_per_period = 0; ///< completions of the reference actor per period
    ActorId reference_actor;
    std::size_t states_explored = 0;

    friend bool operator==(const ThroughputResult&, const ThroughputResult&) = default;
};

/// Snapshot of a self-timed execution: tokens per channel (in channel order)
/// and the firings in progress as sorted (actor position, remaining cycles).
struct ExecutionState {
    std::vector<Int> channel_tokens;
    std::vector<std::pair<std::size_t, Int>> active_firings;

    friend bool operator==(const ExecutionState&, const ExecutionState&) = default;
};

struct SelfTimedOptions {
    std::size_t state_budget = 1'000'000;
};

/// Explores the self-timed execution of `graph` until a state recurs.
///
/// Tokens are consumed when a firing starts and produced when it ends. At each
/// time point completions and starts are repeated until nothing changes, so
/// zero-time actors resolve before time advances; enabled actors are started
/// in insertion order, each as many times as its inputs allow.
///
/// Throws InconsistentGraph, Deadlock or StateBudgetExceeded.
ThroughputResult self_timed_throughput(const Sdfg& graph, const SelfTimedOptions& options = {});

/// State of the same execution at `time`, after every start and completion
/// scheduled at or before it. A deadlocked execution stays in its final state.
/// Throws InconsistentGraph or StateBudgetExceeded.
ExecutionState execution_state_at(const Sdfg& graph, Int time, const SelfTimedOptions& options = {});

/// Throughput of a homogeneous, strongly connected graph as the reciprocal of
/// its maximum cycle mean (sum of execution times over sum of initial tokens).
///
/// Exact: repeatedly looks for a cycle whose mean beats the current candidate
/// with a Bellman-Ford positive-cycle search and adopts it.
/// Throws NotHomogeneous, NotStronglyConnected or Deadlock.
Rational mcm_throughput(const Sdfg& graph);

/// iterations_per_cycle * clock_hz.
Rational frames_per_second(const ThroughputResult& result, const Rational& clock_hz);

/// Same, rendered with `precision` decimals.
std::string to_frames_per_second(const ThroughputResult& result, const Rational& clock_hz, int precision = 2);

} // namespace sdfmig

#endif // SDFMIG_ANALYSIS_HPP
