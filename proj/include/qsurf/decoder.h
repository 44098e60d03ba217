#pragma once
#include <utility>
#include <vector>

#include "qsurf/cycle_sim.h"
#include "qsurf/lattice.h"

namespace qsurf {

// Space-time matching graph over detection events of one stabilizer type,
// plus a virtual boundary of unbounded multiplicity.  Edge weights are
// space-time lattice distances in stabilizer-cell units.
struct MatchingGraph {
    struct Node {
        Coord coord;
        int round;
    };
    int n = 0;
    std::vector<Node> nodes;
    std::vector<int> weights;   // dense n x n, pruned entries hold PRUNED
    std::vector<int> bweight;   // per-node distance to the nearer boundary
    std::vector<int> bside;     // 0 = left/top boundary, 1 = right/bottom
    static constexpr int PRUNED = 1 << 20;

    int w(int u, int v) const { return weights[size_t(u) * n + v]; }
};

struct MatchResult {
    long long total_weight = 0;
    // Matched pairs (u < v) plus boundary matches (u, -1).
    std::vector<std::pair<int, int>> pairs;
};

// Build the graph from events of the given stabilizer kind.  Edge weight =
// |dr|/2 + |dc|/2 + |dt|; edges longer than 2*d are pruned.  The boundary
// weight is the lattice distance to the nearer matching boundary (left/right
// for measure-Z events, top/bottom for measure-X).
MatchingGraph build_graph(const std::vector<DetectionEvent>& events, const ArrayLayout& layout,
                          Pauli kind);

// Exact minimum-weight perfect matching (blossom, primal-dual), with the
// boundary absorbing any parity.  Deterministic.
MatchResult mwpm(const MatchingGraph& g);

// Exhaustive matcher, test oracle only (n <= 12).
MatchResult brute_force_match(const MatchingGraph& g);

enum class DecodeOutcome { Success, XLFailure, ZLFailure, BothFailure };

// Correction as explicit data-qubit flips.
struct Correction {
    std::vector<Coord> x_flips;  // from matching measure-Z events
    std::vector<Coord> z_flips;  // from matching measure-X events
};

// Data-qubit flips along the canonical (row-then-column) correction path of
// each matched pair; boundary matches walk straight to the chosen boundary.
Correction correction_from_matching(const MatchingGraph& g, const MatchResult& m,
                                    const ArrayLayout& layout, Pauli kind);

// Full decode of one shot: both graph types, explicit corrections, residual
// checked against the planar logical operators.
DecodeOutcome decode_and_judge(const ArrayLayout& layout, const CycleSimContext& ctx,
                               const SyndromeRecord& record, const PauliFrame& truth);

// Fast path used by the Monte Carlo harness: decodes only measure-Z events
// and reports a logical X failure via boundary-crossing parity.  Produces
// the same verdict as decode_and_judge's X_L component.
bool decode_xl_failure(const ArrayLayout& layout, const CycleSimContext& ctx,
                       const SyndromeRecord& record, const PauliFrame& truth);

}  // namespace qsurf
