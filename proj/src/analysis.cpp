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


#include "sdfmig/analysis.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdfmig/errors.hpp"

namespace sdfmig {

namespace {

struct Port {
    std::size_t channel;
    Int rate;
};

struct StateHash {
    std::size_t operator()(const std::vector<Int>& v) const noexcept {
        // FNV-1a over the raw words.
        std::uint64_t h = 1469598103934665603ULL;
        for (Int x : v) {
            auto u = static_cast<std::uint64_t>(x);
            for (int i = 0; i < 8; ++i) {
                h ^= (u >> (8 * i)) & 0xffU;
                h *= 1099511628211ULL;
            }
        }
        return static_cast<std::size_t>(h);
    }
};

struct Visit {
    Int time;
    Int reference_completions;
};

/// Self-timed execution, advanced one time point at a time.
class Simulator {
public:
    Simulator(const Sdfg& graph, std::size_t ref, std::size_t zero_time_limit)
        : ref_(ref), zero_time_limit_(zero_time_limit) {
        const std::size_t n_actors = graph.actors().size();
        inputs_.resize(n_actors);
        outputs_.resize(n_actors);
        for (const Actor& a : graph.actors()) exec_.push_back(a.exec_time);
        for (std::size_t ci = 0; ci < graph.channels().size(); ++ci) {
            const Channel& c = graph.channels()[ci];
            inputs_[graph.actor_position(c.dst)].push_back({ci, c.cons_rate});
            outputs_[graph.actor_position(c.src)].push_back({ci, c.prod_rate});
            tokens_.push_back(c.initial_tokens);
        }
    }

    /// Completes and starts firings at the current time until nothing changes.
    void settle() {
        std::size_t firings_now = 0;
        bool progressed = true;
        while (progressed) {
            progressed = false;
            for (auto it = active_.begin(); it != active_.end();) {
                if (it->second != 0) {
                    ++it;
                    continue;
                }
                for (const Port& p : outputs_[it->first]) {
                    tokens_[p.channel] = checked_add(tokens_[p.channel], p.rate);
                }
                if (it->first == ref_) ++ref_completions_;
                it = active_.erase(it);
                progressed = true;
            }
            for (std::size_t a = 0; a < exec_.size(); ++a) {
                while (enabled(a)) {
                    for (const Port& p : inputs_[a]) tokens_[p.channel] -= p.rate;
                    active_.emplace_back(a, exec_[a]);
                    progressed = true;
                    if (++firings_now > zero_time_limit_) {
                        throw StateBudgetExceeded("unbounded number of firings at time " + std::to_string(now_) +
                                                  " (zero-time cycle or actor without inputs)");
                    }
                }
            }
        }
        std::sort(active_.begin(), active_.end());
    }

    /// Time until the next completion; nullopt when nothing is running.
    std::optional<Int> next_step() const {
        if (active_.empty()) return std::nullopt;
        Int step = std::numeric_limits<Int>::max();
        for (const auto& f : active_) step = std::min(step, f.second);
        return step;
    }

    void advance(Int step) {
        for (auto& f : active_) f.second -= step;
        now_ = checked_add(now_, step);
    }

    void key(std::vector<Int>& out) const {
        out.assign(tokens_.begin(), tokens_.end());
        for (const auto& [a, rem] : active_) {
            out.push_back(static_cast<Int>(a));
            out.push_back(rem);
        }
    }

    ExecutionState state() const {
        ExecutionState s;
        s.channel_tokens = tokens_;
        for (const auto& [a, rem] : active_) s.active_firings.emplace_back(a, rem);
        return s;
    }

    Int now() const { return now_; }
    Int reference_completions() const { return ref_completions_; }

private:
    bool enabled(std::size_t a) const {
        return std::all_of(inputs_[a].begin(), inputs_[a].end(),
                           [&](const Port& p) { return tokens_[p.channel] >= p.rate; });
    }

    std::size_t ref_;
    std::size_t zero_time_limit_;
    std::vector<std::vector<Port>> inputs_;
    std::vector<std::vector<Port>> outputs_;
    std::vector<Int> exec_;
    std::vector<Int> tokens_;
    std::vector<std::pair<std::size_t, Int>> active_; ///< (actor, remaining time)
    Int now_ = 0;
    Int ref_completions_ = 0;
};

std::size_t zero_time_limit(const SelfTimedOptions& options) {
    return std::max<std::size_t>(options.state_budget, 1024) * 16;
}

} // namespace

ThroughputResult self_timed_throughput(const Sdfg& graph, const SelfTimedOptions& options) {
    if (graph.empty()) throw std::invalid_argument("cannot analyse an empty graph");
    const RepetitionVector q = compute_repetition_vector(graph);
    const ActorId ref_id = reference_actor(graph, q);
    Simulator sim(graph, graph.actor_position(ref_id), zero_time_limit(options));
    std::unordered_map<std::vector<Int>, Visit, StateHash> visited;

    std::vector<Int> key;
    for (;;) {
        sim.settle();
        sim.key(key);
        auto [it, inserted] = visited.try_emplace(key, Visit{sim.now(), sim.reference_completions()});
        if (!inserted) {
            const Visit& first = it->second;
            ThroughputResult r;
            r.period_cycles = sim.now() - first.time;
            r.transient_cycles = first.time;
            r.reference_firings_per_period = sim.reference_completions() - first.reference_completions;
            r.iterations_per_cycle =
                Rational(r.reference_firings_per_period, checked_mul(q[ref_id], r.period_cycles));
            r.reference_actor = ref_id;
            r.states_explored = visited.size();
            return r;
        }
        if (visited.size() >= options.state_budget) {
            throw StateBudgetExceeded("state budget of " + std::to_string(options.state_budget) +
                                      " states exhausted at time " + std::to_string(sim.now()));
        }
        std::optional<Int> step = sim.next_step();
        if (!step) {
            throw Deadlock("deadlock at time " + std::to_string(sim.now()) +
                           ": no firing in progress and no actor enabled");
        }
        sim.advance(*step);
    }
}

ExecutionState execution_state_at(const Sdfg& graph, Int time, const SelfTimedOptions& options) {
    if (time < 0) throw std::invalid_argument("time must be non-negative");
    const RepetitionVector q = compute_repetition_vector(graph);
    Simulator sim(graph, graph.actor_position(reference_actor(graph, q)), zero_time_limit(options));
    std::size_t events = 0;
    for (;;) {
        sim.settle();
        std::optional<Int> step = sim.next_step();
        if (!step || sim.now() + *step > time) {
            sim.advance(step ? time - sim.now() : 0);
            return sim.state();
        }
        if (++events > options.state_budget) {
            throw StateBudgetExceeded("more than " + std::to_string(options.state_budget) + " time points");
        }
        sim.advance(*step);
    }
}

// ---------------------------------------------------------------------------
// Maximum cycle mean
// ---------------------------------------------------------------------------

namespace {

__extension__ typedef __int128 Wide;

struct Edge {
    std::size_t from;
    std::size_t to;
    Int weight; ///< execution time of the source actor
    Int tokens;
};

bool reaches_all(std::size_t n, const std::vector<Edge>& edges, bool reverse) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const Edge& e : edges) {
        if (reverse) {
            adj[e.to].push_back(e.from);
        } else {
            adj[e.from].push_back(e.to);
        }
    }
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

bool has_token_free_cycle(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const Edge& e : edges) {
        if (e.tokens == 0) adj[e.from].push_back(e.to);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> colour(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (colour[root] != 0) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < adj[v].size()) {
                std::size_t w = adj[v][next++];
                if (colour[w] == 1) return true;
                if (colour[w] == 0) {
                    colour[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                colour[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

/// Finds a cycle with sum(weight * den - num * tokens) > 0, returned as edge indices.
std::vector<std::size_t> find_better_cycle(std::size_t n, const std::vector<Edge>& edges, const Rational& lambda) {
    std::vector<Wide> dist(n, 0);
    std::vector<std::size_t> pred(n, edges.size());
    std::size_t last_updated = n;
    for (std::size_t iter = 0; iter < n; ++iter) {
        last_updated = n;
        for (std::size_t ei = 0; ei < edges.size(); ++ei) {
            const Edge& e = edges[ei];
            Wide w = static_cast<Wide>(e.weight) * lambda.den() - static_cast<Wide>(lambda.num()) * e.tokens;
            if (dist[e.from] + w > dist[e.to]) {
                dist[e.to] = dist[e.from] + w;
                pred[e.to] = ei;
                last_updated = e.to;
            }
        }
        if (last_updated == n) return {};
    }
    // Walking back n predecessor links lands on the positive cycle.
    std::size_t v = last_updated;
    for (std::size_t i = 0; i < n; ++i) v = edges[pred[v]].from;
    std::vector<std::size_t> cycle;
    std::size_t u = v;
    do {
        cycle.push_back(pred[u]);
        u = edges[pred[u]].from;
    } while (u != v);
    return cycle;
}

} // namespace

Rational mcm_throughput(const Sdfg& graph) {
    if (graph.empty()) throw std::invalid_argument("cannot analyse an empty graph");
    const std::size_t n = graph.actors().size();
    std::vector<Edge> edges;
    for (const Channel& c : graph.channels()) {
        if (c.prod_rate != 1 || c.cons_rate != 1) {
            throw NotHomogeneous("channel '" + c.id + "' has a rate other than 1");
        }
        std::size_t s = graph.actor_position(c.src);
        edges.push_back({s, graph.actor_position(c.dst), graph.actors()[s].exec_time, c.initial_tokens});
    }
    if (!reaches_all(n, edges, false) || !reaches_all(n, edges, true)) {
        throw NotStronglyConnected("graph is not strongly connected");
    }
    if (edges.empty()) throw NotStronglyConnected("graph has no cycle");
    if (has_token_free_cycle(n, edges)) throw Deadlock("a cycle carries no initial tokens");

    Rational lambda(0);
    for (;;) {
        std::vector<std::size_t> cycle = find_better_cycle(n, edges, lambda);
        if (cycle.empty()) break;
        Int time = 0;
        Int tokens = 0;
        for (std::size_t ei : cycle) {
            time = checked_add(time, edges[ei].weight);
            tokens = checked_add(tokens, edges[ei].tokens);
        }
        lambda = Rational(time, tokens);
    }
    if (lambda.is_zero()) throw std::domain_error("every cycle has zero execution time; throughput is unbounded");
    return Rational(1) / lambda;
}

Rational frames_per_second(const ThroughputResult& result, const Rational& clock_hz) {
    if (clock_hz <= Rational(0)) throw std::invalid_argument("clock frequency must be positive");
    return result.iterations_per_cycle * clock_hz;
}

std::string to_frames_per_second(const ThroughputResult& result, const Rational& clock_hz, int precision) {
    return frames_per_second(result, clock_hz).to_decimal(precision);
}

} // namespace sdfmig
