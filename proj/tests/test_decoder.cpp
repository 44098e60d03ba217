#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qsurf/decoder.h"
#include "qsurf/rng.h"

using namespace qsurf;

namespace {

// Hand-built record: a set of data-qubit faults, each present from a given
// round onward, plus optional lone measurement flips.
struct FaultPlan {
    struct DataFault {
        Coord q;
        Pauli p;
        int from_round;
    };
    std::vector<DataFault> data;
    std::vector<std::pair<int, Coord>> meas_flips;  // (round, measure site)
};

ShotRecord make_shot(const ArrayLayout& l, const CycleSimContext& ctx, const FaultPlan& plan,
                     int rounds) {
    ShotRecord shot;
    shot.record.rounds = rounds + 1;  // appended perfect round
    shot.record.n_meas = int(ctx.measure_ids.size());
    shot.record.outcomes.assign(size_t(shot.record.rounds) * shot.record.n_meas, 0);
    shot.frame.resize(size_t(l.nrows) * l.ncols);
    for (const auto& f : plan.data) {
        if (f.p == Pauli::X || f.p == Pauli::Y) shot.frame.x[l.qubit_id(f.q)] ^= 1;
        if (f.p == Pauli::Z || f.p == Pauli::Y) shot.frame.z[l.qubit_id(f.q)] ^= 1;
    }
    // Stabilizer syndrome per round from the faults active at that round.
    int m = 0;
    for (const auto& st : l.stabilizers) {
        if (!st.active) continue;
        for (int t = 0; t < shot.record.rounds; ++t) {
            uint8_t bit = 0;
            for (const auto& f : plan.data) {
                if (f.from_round > t) continue;
                bool flips = st.kind == Pauli::Z ? (f.p == Pauli::X || f.p == Pauli::Y)
                                                 : (f.p == Pauli::Z || f.p == Pauli::Y);
                if (!flips) continue;
                for (const auto& nb : st.neighbors)
                    if (nb == f.q) bit ^= 1;
            }
            shot.record.outcomes[size_t(t) * shot.record.n_meas + m] = bit;
        }
        ++m;
    }
    for (const auto& [t, site] : plan.meas_flips) {
        int idx = -1;
        for (size_t i = 0; i < ctx.measure_coord.size(); ++i)
            if (ctx.measure_coord[i] == site) idx = int(i);
        REQUIRE(idx >= 0);
        shot.record.outcomes[size_t(t) * shot.record.n_meas + idx] ^= 1;
    }
    return shot;
}

long long recompute_weight(const MatchingGraph& g, const MatchResult& m) {
    long long w = 0;
    for (auto [u, v] : m.pairs) w += v == -1 ? g.bweight[u] : g.w(u, v);
    return w;
}

}  // namespace

TEST_CASE("matching equals the exhaustive oracle on random graphs") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        MatchingGraph g;
        g.n = 2 + int(rng.uniform_int(9));  // 2..10
        g.nodes.assign(g.n, {{0, 0}, 0});
        g.weights.assign(size_t(g.n) * g.n, 0);
        g.bweight.resize(g.n);
        g.bside.resize(g.n);
        for (int u = 0; u < g.n; ++u) {
            g.bweight[u] = 1 + int(rng.uniform_int(8));
            g.bside[u] = int(rng.uniform_int(2));
            for (int v = u + 1; v < g.n; ++v) {
                int w = rng.uniform() < 0.15 ? MatchingGraph::PRUNED : 1 + int(rng.uniform_int(20));
                g.weights[size_t(u) * g.n + v] = g.weights[size_t(v) * g.n + u] = w;
            }
        }
        auto exact = mwpm(g);
        auto oracle = brute_force_match(g);
        CHECK(exact.total_weight == oracle.total_weight);
        CHECK(recompute_weight(g, exact) == exact.total_weight);
        // Every node appears exactly once.
        std::vector<int> seen(g.n, 0);
        for (auto [u, v] : exact.pairs) {
            ++seen[u];
            if (v >= 0) ++seen[v];
        }
        CHECK(std::count(seen.begin(), seen.end(), 1) == g.n);
    }
}

TEST_CASE("all single data faults at d=3 are corrected") {
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    for (const auto& s : l.sites) {
        if (s.role != Role::Data) continue;
        for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Y})
            for (int t = 0; t < 3; ++t) {
                FaultPlan plan;
                plan.data.push_back({s.coord, p, t});
                auto shot = make_shot(l, ctx, plan, 3);
                CHECK(decode_and_judge(l, ctx, shot.record, shot.frame) ==
                      DecodeOutcome::Success);
                CHECK_FALSE(decode_xl_failure(l, ctx, shot.record, shot.frame));
            }
    }
}

TEST_CASE("single measurement flips decode as time-like pairs") {
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    for (size_t i = 0; i < ctx.measure_coord.size(); ++i)
        for (int t = 0; t < 3; ++t) {
            FaultPlan plan;
            plan.meas_flips.push_back({t, ctx.measure_coord[i]});
            auto shot = make_shot(l, ctx, plan, 3);
            CHECK(decode_and_judge(l, ctx, shot.record, shot.frame) == DecodeOutcome::Success);
        }
}

TEST_CASE("two well-separated faults are corrected at d=5") {
    auto l = build_planar(5);
    CycleSimContext ctx(l);
    FaultPlan plan;
    plan.data.push_back({{0, 0}, Pauli::X, 0});
    plan.data.push_back({{8, 8}, Pauli::X, 1});
    auto shot = make_shot(l, ctx, plan, 3);
    CHECK(decode_and_judge(l, ctx, shot.record, shot.frame) == DecodeOutcome::Success);
}

TEST_CASE("an undetectable logical chain is reported as failure") {
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    FaultPlan plan;  // X_L itself: X along the top row
    plan.data.push_back({{0, 0}, Pauli::X, 0});
    plan.data.push_back({{0, 2}, Pauli::X, 0});
    plan.data.push_back({{0, 4}, Pauli::X, 0});
    auto shot = make_shot(l, ctx, plan, 3);
    CHECK(detection_events(ctx, shot.record).empty());
    CHECK(decode_and_judge(l, ctx, shot.record, shot.frame) == DecodeOutcome::XLFailure);
    CHECK(decode_xl_failure(l, ctx, shot.record, shot.frame));
}

TEST_CASE("corrections close every detected syndrome") {
    auto l = build_planar(5);
    CycleSimContext ctx(l);
    auto model = ErrorModel::uniform(0.004);
    for (uint64_t s = 0; s < 120; ++s) {
        auto shot = run_rounds(ctx, model, 4, derive_seed(555, s), /*noiseless_final=*/true);
        auto events = detection_events(ctx, shot.record);
        int last = shot.record.rounds - 1;
        for (Pauli kind : {Pauli::Z, Pauli::X}) {
            auto g = build_graph(events, l, kind);
            auto m = mwpm(g);
            auto corr = correction_from_matching(g, m, l, kind);
            const auto& flips = kind == Pauli::Z ? corr.x_flips : corr.z_flips;
            std::vector<uint8_t> flip_bits(size_t(l.nrows) * l.ncols, 0);
            for (const auto& c : flips) flip_bits[l.qubit_id(c)] ^= 1;
            int mi = 0;
            for (const auto& st : l.stabilizers) {
                if (!st.active) continue;
                if (st.kind == kind) {
                    uint8_t parity = 0;
                    for (const auto& nb : st.neighbors) parity ^= flip_bits[l.qubit_id(nb)];
                    CHECK(parity == shot.record.at(last, mi));
                }
                ++mi;
            }
        }
    }
}

TEST_CASE("fast X-failure path agrees with the full judgment") {
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    auto model = ErrorModel::uniform(0.02);
    int failures = 0;
    for (uint64_t s = 0; s < 200; ++s) {
        auto shot = run_rounds(ctx, model, 3, derive_seed(808, s), /*noiseless_final=*/true);
        auto full = decode_and_judge(l, ctx, shot.record, shot.frame);
        bool xl_full =
            full == DecodeOutcome::XLFailure || full == DecodeOutcome::BothFailure;
        bool xl_fast = decode_xl_failure(l, ctx, shot.record, shot.frame);
        CHECK(xl_full == xl_fast);
        failures += xl_fast;
    }
    CHECK(failures > 0);  // the agreement check must exercise both verdicts
}

TEST_CASE("larger distance suppresses logical failures") {
    auto count_failures = [&](int d, double p, int shots) {
        auto l = build_planar(d);
        CycleSimContext ctx(l);
        auto model = ErrorModel::uniform(p);
        int f = 0;
        for (uint64_t s = 0; s < uint64_t(shots); ++s) {
            auto shot = run_rounds(ctx, model, d, derive_seed(900 + d, s), true);
            f += decode_xl_failure(l, ctx, shot.record, shot.frame);
        }
        return f;
    };
    // Below threshold (~0.57% per step) larger distance must win.
    int f3 = count_failures(3, 0.003, 1500);
    int f5 = count_failures(5, 0.003, 1500);
    CHECK(f3 > 0);
    CHECK(f5 < f3);
}
