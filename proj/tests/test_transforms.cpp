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

#include <doctest.h>

#include <set>

#include "sdfmig/analysis.hpp"
#include "sdfmig/errors.hpp"
#include "sdfmig/transforms.hpp"
#include "support.hpp"

using namespace sdfmig;

namespace {

NocConnection conn(Int latency, const char* bandwidth) {
    return {"c", "T1", "T2", latency, Rational::parse(bandwidth)};
}

/// A -> B -> C with local buffers and no overlapping firings.
Sdfg pipeline(Int a, Int b, Int c, Int buffer) {
    Sdfg g;
    g.add_actor({"A", "", a});
    g.add_actor({"B", "", b});
    g.add_actor({"C", "", c});
    g.add_channel({"ab", "A", "B", 1, 1, 0, 8});
    g.add_channel({"bc", "B", "C", 1, 1, 0, 8});
    g = bind_local_channel(g, "ab", buffer);
    g = bind_local_channel(g, "bc", buffer);
    return g;
}

/// Actors and channels untouched by a rewrite of `touched`.
void check_preserved(const Sdfg& before, const Sdfg& after, const std::set<std::string>& touched_channels,
                     const std::set<ActorId>& touched_actors) {
    for (const Actor& a : before.actors()) {
        if (touched_actors.contains(a.id)) continue;
        REQUIRE(after.has_actor(a.id));
        CHECK(after.actor(a.id) == a);
    }
    for (const Channel& c : before.channels()) {
        if (touched_channels.contains(c.id) || touched_actors.contains(c.src) || touched_actors.contains(c.dst)) {
            continue;
        }
        REQUIRE(after.has_channel(c.id));
        CHECK(after.channel(c.id) == c);
    }
}

std::vector<ChannelId> forward_channels(const Sdfg& g) {
    std::vector<ChannelId> out;
    for (const Channel& c : g.channels()) {
        if (c.id[0] == 'c') out.push_back(c.id);
    }
    return out;
}

} // namespace

TEST_CASE("connection actor time truncates the transfer") {
    CHECK(connection_actor_time(1024, conn(3, "0.00406278")) == 252047);
    CHECK(connection_actor_time(512, conn(3, "0.00203139")) == 252047);
    CHECK(connection_actor_time(0, conn(7, "0.5")) == 7);
    CHECK(connection_actor_time(0, conn(7, "12345")) == 7);
    // Integer form of the same quotient: size * 10^8 / (bandwidth * 10^8).
    CHECK(connection_actor_time(1024, conn(3, "0.00406278")) == 3 + (Int{1024} * 100000000) / 406278);
    CHECK(connection_actor_time(3, conn(0, "2")) == 1);
    CHECK_THROWS(connection_actor_time(1, conn(0, "0")));
}

TEST_CASE("local binding adds a buffer back-edge") {
    Sdfg g;
    g.add_actor({"A", "", 1});
    g.add_actor({"B", "", 1});
    g.add_channel({"ab", "A", "B", 2, 3, 1, 16});
    Sdfg b = bind_local_channel(g, "ab", 7);
    REQUIRE(b.has_channel("ab.space"));
    const Channel& back = b.channel("ab.space");
    CHECK(back.src == "B");
    CHECK(back.dst == "A");
    CHECK(back.prod_rate == 3);
    CHECK(back.cons_rate == 2);
    CHECK(back.initial_tokens == 6);
    CHECK(b.channel("ab") == g.channel("ab"));

    CHECK(bind_local_channel(g, "ab", 1).channel("ab.space").initial_tokens == 0);
    CHECK_THROWS_AS(bind_local_channel(g, "ab", 0), BufferTooSmall);
}

TEST_CASE("a rate-1 channel with buffer 2 gets two free slots") {
    Sdfg g;
    g.add_actor({"A", "", 1});
    g.add_actor({"B", "", 1});
    g.add_channel({"ab", "A", "B"});
    CHECK(bind_local_channel(g, "ab", 2).channel("ab.space").initial_tokens == 2);
}

TEST_CASE("pipeline throughput grows with the buffer") {
    Rational prev(0);
    std::vector<Rational> seen;
    for (Int buffer = 1; buffer <= 5; ++buffer) {
        Sdfg g;
        g.add_actor({"A", "", 3});
        g.add_actor({"B", "", 4});
        g.add_channel({"ab", "A", "B"});
        g = disable_auto_concurrency(bind_local_channel(g, "ab", buffer));
        const Rational r = self_timed_throughput(g).iterations_per_cycle;
        CHECK(r >= prev);
        prev = r;
        seen.push_back(r);
    }
    // One slot serializes the two actors; two let them overlap.
    CHECK(seen[0] == Rational(1, 7));
    CHECK(seen[1] == Rational(1, 4));
}

TEST_CASE("buffer tokens plus tokens held by running firings stay constant") {
    test::Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        Sdfg g = test::random_live_sdf(rng);
        ThroughputResult r = self_timed_throughput(g);
        for (const Channel& back : g.channels()) {
            if (back.id[0] != 'b') continue;
            const ChannelId fwd_id = "c" + back.id.substr(1);
            const Channel& fwd = g.channel(fwd_id);
            const Int buffer = fwd.initial_tokens + back.initial_tokens;
            for (Int t = 0; t <= r.transient_cycles + r.period_cycles; t += 1 + r.period_cycles / 7) {
                ExecutionState s = execution_state_at(g, t);
                Int held = 0;
                for (const auto& [a, rem] : s.active_firings) {
                    if (g.actors()[a].id == fwd.src) held += fwd.prod_rate;
                    if (g.actors()[a].id == fwd.dst) held += fwd.cons_rate;
                }
                CHECK(s.channel_tokens[g.channel_position(fwd_id)] + s.channel_tokens[g.channel_position(back.id)] +
                          held ==
                      buffer);
            }
        }
    }
}

TEST_CASE("remote binding chain of the decoder") {
    Scenario s = test::mjpeg();
    Sdfg app = s.graph;
    for (const auto& [id, et] : compute_etam(s.graph, s.platform, s.mapping)) app.actor(id).exec_time = et;

    RemoteBindingParams p1{2, 2, 1024, *s.platform.find_connection("c1"), 100000};
    Sdfg g = bind_remote_channel(app, "izz_iq", p1, 90000);
    RemoteChain ids = remote_chain_ids("izz_iq");
    CHECK(g.actor(ids.send).exec_time == 252047);
    CHECK(g.actor(ids.latency).exec_time == 100000);
    CHECK(g.actor(ids.slot_wait).exec_time == 90000);
    for (const ActorId& id : {ids.send, ids.latency, ids.slot_wait}) {
        CHECK(g.actor(id).kind == ActorKind::infrastructure);
        CHECK(g.has_self_loop(id));
    }

    RemoteBindingParams p2{2, 2, 512, *s.platform.find_connection("c2"), 100000};
    Sdfg h = bind_remote_channel(app, "idct_cc", p2, 80000);
    CHECK(h.actor("idct_cc.send").exec_time == 252047);
    CHECK(h.actor("idct_cc.slot_wait").exec_time == 80000);

    Sdfg hw = bind_remote_channel(app, "idct_cc", p2, 0);
    CHECK(hw.actor("idct_cc.slot_wait").exec_time == 0);
}

TEST_CASE("remote binding edge layout") {
    Sdfg g;
    g.add_actor({"A", "", 1});
    g.add_actor({"B", "", 1});
    g.add_channel({"ab", "A", "B", 3, 2, 4, 64});
    RemoteBindingParams p{5, 6, 64, conn(1, "64"), 9};
    Sdfg r = bind_remote_channel(g, "ab", p, 11);
    const Channel& head = r.channel("ab");
    CHECK(head.src == "A");
    CHECK(head.dst == "ab.send");
    CHECK(head.prod_rate == 3);
    CHECK(head.cons_rate == 1);
    CHECK(head.initial_tokens == 0);
    const Channel& deliver = r.channel("ab.deliver");
    CHECK(deliver.src == "ab.slot_wait");
    CHECK(deliver.dst == "B");
    CHECK(deliver.cons_rate == 2);
    CHECK(deliver.initial_tokens == 4);
    CHECK(r.channel("ab.src_space").src == "ab.send");
    CHECK(r.channel("ab.src_space").dst == "A");
    CHECK(r.channel("ab.src_space").initial_tokens == 5);
    CHECK(r.channel("ab.dst_space").src == "B");
    CHECK(r.channel("ab.dst_space").dst == "ab.send");
    CHECK(r.channel("ab.dst_space").initial_tokens == 6);
    CHECK(r.actor("ab.send").exec_time == 2);
    CHECK(compute_repetition_vector(r)["ab.send"] == 6);

    Sdfg alt = bind_remote_channel(g, "ab", p, 11, DstBufferEdge::to_slot_wait_actor);
    CHECK(alt.channel("ab.dst_space").dst == "ab.slot_wait");

    g.add_channel({"aa", "A", "A", 1, 1, 1});
    CHECK_THROWS_AS(bind_remote_channel(g, "aa", p, 0), SameTile);
    p.alpha_src = 0;
    CHECK_THROWS(bind_remote_channel(g, "ab", p, 0));
}

TEST_CASE("a free connection leaves throughput unchanged") {
    test::Rng rng(42);
    for (int i = 0; i < 80; ++i) {
        Sdfg g = test::random_live_sdf(rng);
        std::vector<ChannelId> fwd = forward_channels(g);
        if (fwd.empty()) continue;
        const ChannelId cid = fwd[test::pick(rng, 0, static_cast<Int>(fwd.size()) - 1)];
        RemoteBindingParams p{1000, 1000, g.channel(cid).token_size, conn(0, "1000000"), 0};
        Sdfg r = bind_remote_channel(g, cid, p, 0);
        CHECK(self_timed_throughput(r).iterations_per_cycle == self_timed_throughput(g).iterations_per_cycle);
    }
}

TEST_CASE("memory-aware template of the decoder consumers") {
    Scenario s = test::mjpeg();
    Sdfg app = s.graph;
    for (const auto& [id, et] : compute_etam(s.graph, s.platform, s.mapping)) app.actor(id).exec_time = et;
    app.actor("IZZ").exec_time = 24791;

    MemoryAwareParams p{12, 10000, 252047, false, {}};
    Sdfg g = memory_aware_transform(app, "IZZ", p);
    MemoryAwareActors ids = memory_aware_ids("IZZ");
    CHECK(g.actor(ids.issue).exec_time == 10000);
    CHECK(g.actor(ids.exec).exec_time == 24791);
    CHECK(g.actor(ids.prefetch).exec_time == 262047);
    CHECK(g.actor(ids.gate_in).exec_time == 1);
    CHECK(g.actor(ids.gate_out).exec_time == 1);
    CHECK_FALSE(g.has_actor(ids.fetch));
    CHECK_FALSE(g.has_actor("IZZ"));
    CHECK(g.channel("vld_izz").dst == ids.gate_in);
    CHECK(g.channel("vld_izz").cons_rate == 12);
    CHECK(g.channel("izz_iq").src == ids.exec);

    RepetitionVector q = compute_repetition_vector(g);
    CHECK(q[ids.gate_in] == 1);
    CHECK(q[ids.gate_out] == 1);
    CHECK(q[ids.prefetch] == 12);
    CHECK(q[ids.issue] == 12);
    CHECK(q[ids.exec] == 12);

    Sdfg cc = memory_aware_transform(app, "CC", p);
    CHECK(cc.actor("CC.issue").exec_time == 10000);
    CHECK(cc.actor("CC.exec").exec_time == 154374);
    CHECK(cc.actor("CC.prefetch").exec_time == 262047);

    p.enable_fetch_path = true;
    Sdfg f = memory_aware_transform(app, "IZZ", p);
    CHECK(f.actor(ids.fetch).exec_time == 252047);
    CHECK(compute_repetition_vector(f)[ids.fetch] == 12);

    Sdfg ref = app;
    ref.set_reference_actor("IZZ");
    CHECK(memory_aware_transform(ref, "IZZ", p).reference_actor() == ids.exec);
    CHECK_THROWS_AS(memory_aware_transform(app, "NOPE", p), UnknownActor);
}

TEST_CASE("a free single-firing template keeps pipeline throughput") {
    Sdfg g = disable_auto_concurrency(pipeline(10, 2, 10, 2));
    Sdfg t = memory_aware_transform(g, "B", {1, 0, 0, false, {}});
    CHECK(self_timed_throughput(t).iterations_per_cycle == self_timed_throughput(g).iterations_per_cycle);
    CHECK(self_timed_throughput(g).iterations_per_cycle == Rational(1, 10));
}

TEST_CASE("transforms are local and keep graphs consistent") {
    test::Rng rng(43);
    for (int i = 0; i < 150; ++i) {
        Sdfg g = test::random_live_sdf(rng);
        std::vector<ChannelId> fwd = forward_channels(g);
        if (fwd.empty()) continue;
        const ChannelId cid = fwd[test::pick(rng, 0, static_cast<Int>(fwd.size()) - 1)];
        const Channel& c = g.channel(cid);

        Sdfg local = bind_local_channel(g, cid, c.initial_tokens + test::pick(rng, 0, 5));
        check_preserved(g, local, {}, {});
        CHECK_NOTHROW(compute_repetition_vector(local));

        RemoteBindingParams p{test::pick(rng, 1, 4), test::pick(rng, 1, 4), c.token_size, conn(2, "0.5"), 5};
        Sdfg remote = bind_remote_channel(g, cid, p, test::pick(rng, 0, 9));
        check_preserved(g, remote, {cid}, {});
        CHECK_NOTHROW(compute_repetition_vector(remote));

        const ActorId target = c.dst;
        MemoryAwareParams m{test::pick(rng, 1, 4), test::pick(rng, 0, 9), test::pick(rng, 0, 9), test::coin(rng), {}};
        Sdfg mem = memory_aware_transform(g, target, m);
        check_preserved(g, mem, {}, {target});
        CHECK_NOTHROW(compute_repetition_vector(mem));
        CHECK(mem.actor(target + ".exec").exec_time == g.actor(target).exec_time);
    }
}

TEST_CASE("analysis graph of the decoder") {
    Scenario s = test::mjpeg();
    Sdfg g = build_analysis_graph(s.graph, s.platform, s.mapping, s.build);
    CHECK(g.actor("VLD").exec_time == 2132463);
    CHECK(g.actor("izz_iq.send").exec_time == 252047);
    CHECK(g.actor("izz_iq.latency").exec_time == 100000);
    CHECK(g.actor("izz_iq.slot_wait").exec_time == 90000);
    CHECK(g.actor("idct_cc.send").exec_time == 252047);
    CHECK(g.actor("idct_cc.slot_wait").exec_time == 80000);
    CHECK(g.channel("vld_izz.space").initial_tokens == 13);
    for (const Actor& a : g.actors()) CHECK(g.has_self_loop(a.id));
    CHECK(g.actors().size() == 12);

    Mapping same = s.mapping;
    same.actor_tile["IQ"] = "T1";
    same.tdma_slice["IQ"] = 0;
    CHECK_THROWS_AS(build_analysis_graph(s.graph, s.platform, same, s.build), SameTile);
}
