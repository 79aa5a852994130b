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

// Generators and brute-force oracles shared by the unit, property and
// acceptance tests.

#ifndef SDFMIG_TESTS_SUPPORT_HPP
#define SDFMIG_TESTS_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sdfmig/analysis.hpp"
#include "sdfmig/graph.hpp"
#include "sdfmig/migration.hpp"
#include "sdfmig/platform.hpp"
#include "sdfmig/scenario_io.hpp"

namespace sdfmig::test {

using Rng = std::mt19937_64;

inline Int pick(Rng& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string fixture_path(const std::string& name) {
    return std::string(SDFMIG_SCENARIO_DIR) + "/" + name;
}

inline Scenario mjpeg() { return load_scenario(fixture_path("mjpeg_base.yaml")); }

inline std::string actor_name(int i) { return "a" + std::to_string(i); }

/// Homogeneous, strongly connected and live: actors sit on a random line,
/// edges going forward may be empty, edges going backward (and self-loops)
/// carry at least one token, so every cycle holds a token.
inline Sdfg random_live_hsdf(Rng& rng, int max_actors = 8, Int max_et = 20, Int max_tokens = 3) {
    const int n = static_cast<int>(pick(rng, 1, max_actors));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    Sdfg g;
    for (int i = 0; i < n; ++i) g.add_actor({actor_name(i), "", pick(rng, 1, max_et)});
    int next = 0;
    auto edge = [&](int u, int v) {
        const Int min_tokens = pos[v] <= pos[u] ? 1 : 0;
        g.add_channel({"c" + std::to_string(next++), actor_name(u), actor_name(v), 1, 1,
                       pick(rng, min_tokens, max_tokens), 0});
    };
    for (int i = 0; i + 1 < n; ++i) edge(order[i], order[i + 1]);
    edge(order[n - 1], order[0]);
    const Int extra = pick(rng, 0, n);
    for (Int k = 0; k < extra; ++k) edge(static_cast<int>(pick(rng, 0, n - 1)), static_cast<int>(pick(rng, 0, n - 1)));
    return g;
}

/// Consistent multirate application graph without buffers: a random tree plus
/// a few extra forward edges, rates derived from a hidden firing vector.
struct RandomApp {
    Sdfg graph;
    std::vector<Int> q; ///< balance solution (not necessarily minimal)
};

inline RandomApp random_application(Rng& rng, int max_actors = 6, Int max_q = 4, Int max_et = 20) {
    const int n = static_cast<int>(pick(rng, 1, max_actors));
    RandomApp app;
    for (int i = 0; i < n; ++i) {
        app.q.push_back(pick(rng, 1, max_q));
        app.graph.add_actor({actor_name(i), "", pick(rng, 1, max_et)});
    }
    int next = 0;
    auto edge = [&](int u, int v) {
        const Int g = std::gcd(app.q[u], app.q[v]);
        const Int k = pick(rng, 1, 2);
        app.graph.add_channel({"c" + std::to_string(next++), actor_name(u), actor_name(v), k * app.q[v] / g,
                               k * app.q[u] / g, pick(rng, 0, 2), pick(rng, 0, 64) * 16});
    };
    for (int v = 1; v < n; ++v) edge(static_cast<int>(pick(rng, 0, v - 1)), v);
    const Int extra = pick(rng, 0, 2);
    for (Int i = 0; i < extra && n > 1; ++i) {
        const int u = static_cast<int>(pick(rng, 0, n - 2));
        edge(u, static_cast<int>(pick(rng, u + 1, n - 1)));
    }
    return app;
}

/// Tokens one full iteration pushes through channel `c`.
inline Int iteration_tokens(const RandomApp& app, const Channel& c) {
    const int u = std::stoi(c.src.substr(1));
    return app.q[u] * c.prod_rate;
}

/// A random application made bounded and live: every channel gets a buffer
/// back-edge sized for one iteration, optional feedback edges carry an
/// iteration of tokens, and every actor gets a self-loop.
inline Sdfg random_live_sdf(Rng& rng, int max_actors = 6, Int max_et = 20) {
    RandomApp app = random_application(rng, max_actors, 4, max_et);
    Sdfg g = app.graph;
    int next = 0;
    for (const Channel& c : app.graph.channels()) {
        g.add_channel({"b" + std::to_string(next++), c.dst, c.src, c.cons_rate, c.prod_rate,
                       iteration_tokens(app, c) + c.initial_tokens, 0});
    }
    const int n = static_cast<int>(app.q.size());
    if (n > 1 && coin(rng, 0.3)) {
        const int v = static_cast<int>(pick(rng, 1, n - 1));
        const int u = static_cast<int>(pick(rng, 0, v - 1));
        const Int gq = std::gcd(app.q[u], app.q[v]);
        const Int cons = app.q[v] / gq;
        g.add_channel({"f0", actor_name(v), actor_name(u), app.q[u] / gq, cons, app.q[u] * cons, 0});
    }
    return disable_auto_concurrency(g);
}

/// Largest cycle mean by enumerating every simple cycle. Returns nullopt when
/// some cycle has no tokens.
inline std::optional<Rational> brute_force_max_cycle_mean(const Sdfg& g) {
    const auto& actors = g.actors();
    const int n = static_cast<int>(actors.size());
    std::vector<std::vector<const Channel*>> out(n);
    for (const Channel& c : g.channels()) out[g.actor_position(c.src)].push_back(&c);

    Rational best(0);
    bool token_free = false;
    std::vector<bool> on_path(n, false);
    // Cycles are enumerated from their smallest vertex to avoid repeats.
    std::function<void(int, int, Int, Int)> dfs = [&](int start, int v, Int et, Int tokens) {
        for (const Channel* c : out[v]) {
            const int w = static_cast<int>(g.actor_position(c->dst));
            if (w < start) continue;
            const Int t = tokens + c->initial_tokens;
            const Int e = et + actors[v].exec_time;
            if (w == start) {
                if (t == 0) {
                    token_free = true;
                } else {
                    best = std::max(best, Rational(e, t));
                }
            } else if (!on_path[w]) {
                on_path[w] = true;
                dfs(start, w, e, t);
                on_path[w] = false;
            }
        }
    };
    for (int s = 0; s < n; ++s) {
        on_path[s] = true;
        dfs(s, s, 0, 0);
        on_path[s] = false;
    }
    if (token_free) return std::nullopt;
    return best;
}

/// Smallest positive balance solution by exhaustive search over entries up to
/// `bound`; nullopt when none exists in range.
inline std::optional<std::map<ActorId, Int>> brute_force_repetition_vector(const Sdfg& g, Int bound) {
    const auto& actors = g.actors();
    const std::size_t n = actors.size();
    std::vector<Int> q(n, 1);
    std::optional<std::map<ActorId, Int>> best;
    Int best_sum = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            for (const Channel& c : g.channels()) {
                if (q[g.actor_position(c.src)] * c.prod_rate != q[g.actor_position(c.dst)] * c.cons_rate) return;
            }
            Int sum = std::accumulate(q.begin(), q.end(), Int{0});
            if (!best || sum < best_sum) {
                best_sum = sum;
                best.emplace();
                for (std::size_t k = 0; k < n; ++k) (*best)[actors[k].id] = q[k];
            }
            return;
        }
        for (Int v = 1; v <= bound; ++v) {
            q[i] = v;
            rec(i + 1);
        }
    };
    if (n > 0) rec(0);
    return best;
}

struct ScenarioOptions {
    int max_actors = 5;
    int max_tiles = 3;
    double hardware_share = 0.0; ///< chance an actor starts on its own hardware tile
    Int max_et = 40;
    bool coarse_timing = false; ///< wheels, slices and bandwidths on a coarse grid, for short transients
};

/// Random mapped scenario whose buffers hold at least one iteration, so the
/// baseline is live.
inline Scenario random_scenario(Rng& rng, const ScenarioOptions& opt = {}) {
    RandomApp app = random_application(rng, opt.max_actors, 3, opt.max_et);
    Scenario s;
    s.meta.name = "random_" + std::to_string(pick(rng, 0, 999999));
    s.meta.description = coin(rng) ? "" : "generated: a, b";
    s.meta.clock_hz = Rational(pick(rng, 1, 500) * 1'000'000);
    s.graph = app.graph;
    if (opt.coarse_timing) {
        // Speedups go up to 8; keep migrated execution times above zero.
        for (const Actor& a : app.graph.actors()) s.graph.actor(a.id).exec_time *= 8;
    }
    if (coin(rng, 0.3)) s.graph.set_reference_actor(actor_name(0));

    const int tiles = static_cast<int>(pick(rng, 1, opt.max_tiles));
    for (int t = 0; t < tiles; ++t) {
        const Int wheel = opt.coarse_timing ? 20 * pick(rng, 1, 3) : pick(rng, 100, 1000);
        s.platform.tiles.push_back({"P" + std::to_string(t), TileKind::processor, wheel, Rational(100'000'000)});
    }
    std::map<TileId, Int> used;
    for (const Actor& a : app.graph.actors()) {
        if (coin(rng, opt.hardware_share)) {
            const TileId id = "H_" + a.id;
            s.platform.tiles.push_back({id, TileKind::hardware_block, 0, Rational(100'000'000)});
            s.graph.actor(a.id).kind = ActorKind::hardware;
            s.mapping.actor_tile[a.id] = id;
            continue;
        }
        const int t = static_cast<int>(pick(rng, 0, tiles - 1));
        const Tile& tile = s.platform.tiles[t];
        s.mapping.actor_tile[a.id] = tile.id;
        const Int room = tile.tdma_wheel - used[tile.id];
        Int slice = pick(rng, 0, std::min<Int>(room, tile.tdma_wheel / opt.max_actors));
        if (opt.coarse_timing) slice -= slice % 5;
        used[tile.id] += slice;
        s.mapping.tdma_slice[a.id] = slice;
    }

    auto bandwidth = [&] {
        if (opt.coarse_timing) return Rational(1 << pick(rng, 0, 3), 2);
        return Rational(pick(rng, 1, 4000), 1000);
    };
    auto connection = [&](const TileId& src, const TileId& dst) {
        for (const NocConnection& c : s.platform.connections) {
            if (c.src_tile == src && c.dst_tile == dst) return c.id;
        }
        const ConnectionId id = "n" + std::to_string(s.platform.connections.size());
        s.platform.connections.push_back({id, src, dst, pick(rng, 0, 5), bandwidth()});
        return id;
    };
    for (const Channel& c : app.graph.channels()) {
        const TileId& st = s.mapping.actor_tile.at(c.src);
        const TileId& dt = s.mapping.actor_tile.at(c.dst);
        const Int iter = iteration_tokens(app, c);
        if (st == dt) {
            s.mapping.channel_binding[c.id] = LocalBinding{iter + c.initial_tokens};
        } else {
            RemoteBinding b;
            b.connection = connection(st, dt);
            b.alpha_src = iter;
            b.alpha_dst = iter + c.initial_tokens;
            if (coin(rng)) b.latency_bound = opt.coarse_timing ? 10 * pick(rng, 0, 6) : pick(rng, 0, 200);
            s.mapping.channel_binding[c.id] = b;
        }
    }

    s.defaults.speedup = Rational(pick(rng, 2, 8), pick(rng, 1, 2));
    s.defaults.prefetch_time = pick(rng, 0, 50);
    s.defaults.hw_connection.latency = pick(rng, 0, 5);
    s.defaults.hw_connection.bandwidth = bandwidth();
    s.defaults.hw_buffer_tokens = pick(rng, 1, 30);
    s.defaults.prefetch_tokens = pick(rng, 1, 3);
    if (coin(rng, 0.3)) s.defaults.hw_latency_bound = opt.coarse_timing ? 10 * pick(rng, 0, 6) : pick(rng, 0, 300);
    s.build.dst_edge = coin(rng) ? DstBufferEdge::to_send_actor : DstBufferEdge::to_slot_wait_actor;
    // A lone actor has no inputs, so it needs its self-loop.
    s.build.keep_auto_concurrency = s.graph.actors().size() > 1 && coin(rng, 0.2);
    return s;
}

} // namespace sdfmig::test

#endif // SDFMIG_TESTS_SUPPORT_HPP
