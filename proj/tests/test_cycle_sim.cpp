#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qsurf/cycle_sim.h"

using namespace qsurf;

TEST_CASE("noiseless runs report the reference outcome everywhere") {
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    auto shot = run_rounds(ctx, ErrorModel{}, 5, 42, /*noiseless_final=*/true);
    CHECK(shot.record.rounds == 6);
    CHECK(shot.record.n_meas == l.measure_count());
    for (auto b : shot.record.outcomes) CHECK(b == 0);
    for (auto b : shot.frame.x) CHECK(b == 0);
    for (auto b : shot.frame.z) CHECK(b == 0);
    CHECK(detection_events(ctx, shot.record).empty());
}

TEST_CASE("same seed reproduces, different streams differ") {
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    auto model = ErrorModel::uniform(0.01);
    auto a = run_rounds(ctx, model, 8, derive_seed(7, 0));
    auto b = run_rounds(ctx, model, 8, derive_seed(7, 0));
    CHECK(a.record.outcomes == b.record.outcomes);
    CHECK(a.frame.x == b.frame.x);
    auto c = run_rounds(ctx, model, 8, derive_seed(7, 1));
    CHECK(a.record.outcomes != c.record.outcomes);
}

TEST_CASE("measure-qubit errors hook onto data through the CNOTs") {
    // Class-1 faults live on measure qubits, but the extraction circuit can
    // copy them onto data (hook errors): over many shots the truth frame must
    // pick up data flips even though p0 = p2 = 0.
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    ErrorModel model{0, 0.02, 0};
    int data_flips = 0;
    for (uint64_t s = 0; s < 50; ++s) {
        auto shot = run_rounds(ctx, model, 6, derive_seed(11, s), /*noiseless_final=*/true);
        for (int d : ctx.data_ids) data_flips += shot.frame.x[d] + shot.frame.z[d];
    }
    CHECK(data_flips > 0);
}

TEST_CASE("final noiseless round matches the syndrome of the truth frame") {
    // The last appended round is error-free, so its outcome must equal the
    // stabilizer parity of the accumulated data-qubit flips: X flips are seen
    // by measure-Z stabilizers, Z flips by measure-X.
    auto l = build_planar(5);
    CycleSimContext ctx(l);
    auto model = ErrorModel::uniform(0.005);
    for (uint64_t s = 0; s < 40; ++s) {
        auto shot = run_rounds(ctx, model, 4, derive_seed(23, s), /*noiseless_final=*/true);
        int last = shot.record.rounds - 1;
        int m = 0;
        for (const auto& st : l.stabilizers) {
            if (!st.active) continue;
            uint8_t parity = 0;
            for (const auto& nb : st.neighbors) {
                int q = l.qubit_id(nb);
                parity ^= st.kind == Pauli::Z ? shot.frame.x[q] : shot.frame.z[q];
            }
            CHECK(shot.record.at(last, m) == parity);
            ++m;
        }
    }
}

TEST_CASE("low-rate data errors fire the adjacent stabilizers") {
    // With only data-qubit depolarization at a tiny rate, almost every noisy
    // shot has at most one fault; its detection events must sit on measure
    // cells adjacent to a flipped data qubit.
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    ErrorModel model{1e-3, 0, 0};
    int nonempty = 0;
    for (uint64_t s = 0; s < 400; ++s) {
        auto shot = run_rounds(ctx, model, 1, derive_seed(31, s), /*noiseless_final=*/true);
        auto events = detection_events(ctx, shot.record);
        if (events.empty()) continue;
        ++nonempty;
        for (const auto& e : events) {
            bool adjacent = false;
            for (auto [dr, dc] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
                Coord nb{e.measure_coord.row + dr, e.measure_coord.col + dc};
                if (!l.in_grid(nb)) continue;
                int q = l.qubit_id(nb);
                if (shot.frame.x[q] || shot.frame.z[q]) adjacent = true;
            }
            CHECK(adjacent);
        }
    }
    CHECK(nonempty > 0);
}

TEST_CASE("event rate scales with the physical error rate") {
    auto l = build_planar(3);
    CycleSimContext ctx(l);
    auto count_events = [&](double p) {
        auto model = ErrorModel::uniform(p);
        long long total = 0;
        for (uint64_t s = 0; s < 200; ++s)
            total += (long long)detection_events(
                         ctx, run_rounds(ctx, model, 3, derive_seed(77, s)).record)
                         .size();
        return total;
    };
    long long lo = count_events(1e-3), hi = count_events(1e-2);
    CHECK(hi > 5 * lo);
}

TEST_CASE("events CSV format") {
    std::vector<std::pair<int, std::vector<DetectionEvent>>> shots;
    shots.push_back({0, {{{2, 1}, 3, Pauli::Z}, {{1, 2}, 0, Pauli::X}}});
    CHECK(events_csv(shots) == "shot,round,row,col,kind\n0,3,2,1,Z\n0,0,1,2,X\n");
}
