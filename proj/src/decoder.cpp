#include "qsurf/decoder.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "qsurf/blossom.h"

namespace qsurf {

namespace {

// Minimum number of single circuit faults joining two detection events
// separated by (r, c, t) stabilizer-grid steps, for the measure-Z graph.
// Unit moves and their forced time shifts, from the in-cycle coupling order:
//   (0,0,+1)            measurement or init flip
//   (0,+1,0|+1)         data error; the east neighbor fires one round later
//                       when the error lands between the two couplings
//   (+1,0,0|+1)         data error; the south neighbor can fire later
//   (+1,+1,+1)          ancilla error mid-cycle landing on two data qubits
// plus the exact reverses.  The measure-X graph is the mirror image in the
// column axis, so callers negate c for it.
int fault_distance(int r, int c, int t) {
    if (r < 0 || (r == 0 && c < 0) || (r == 0 && c == 0 && t < 0)) {
        r = -r;
        c = -c;
        t = -t;
    }
    if (c >= 0) {
        // Aligned quadrant: diagonal moves cover a row and a column step in
        // one fault but force a +1 time shift each.
        if (t <= 0) return r + c - t;
        int hooks = std::min(std::min(r, c), t);
        int spatial = r + c - hooks;
        return t <= spatial ? spatial : t;
    }
    // Anti-diagonal: no single fault covers both axes; the +r moves absorb
    // positive time shifts, the -c moves absorb negative ones.
    int back = -c;
    return r + back + std::max(0, std::max(t - r, -t - back));
}

}  // namespace

MatchingGraph build_graph(const std::vector<DetectionEvent>& events, const ArrayLayout& layout,
                          Pauli kind) {
    MatchingGraph g;
    for (const auto& e : events)
        if (e.kind == kind) g.nodes.push_back({e.measure_coord, e.round});
    g.n = int(g.nodes.size());
    g.weights.assign(size_t(g.n) * g.n, 0);
    g.bweight.resize(g.n);
    g.bside.resize(g.n);
    int prune_above = 2 * layout.distance;
    for (int u = 0; u < g.n; ++u) {
        const auto& a = g.nodes[u];
        if (kind == Pauli::Z) {
            int left = (a.coord.col + 1) / 2;
            int right = (layout.ncols - a.coord.col) / 2;
            g.bweight[u] = std::min(left, right);
            g.bside[u] = left <= right ? 0 : 1;
        } else {
            int top = (a.coord.row + 1) / 2;
            int bottom = (layout.nrows - a.coord.row) / 2;
            g.bweight[u] = std::min(top, bottom);
            g.bside[u] = top <= bottom ? 0 : 1;
        }
        for (int v = u + 1; v < g.n; ++v) {
            const auto& b = g.nodes[v];
            // Weighting edges by the exact fault count keeps every single
            // fault a unit edge, which a boundary-boundary alternative can
            // never undercut, without over-crediting pairs that genuinely
            // need two faults.
            int dr = (b.coord.row - a.coord.row) / 2;
            int dc = (b.coord.col - a.coord.col) / 2;
            int dt = b.round - a.round;
            int w = fault_distance(dr, kind == Pauli::Z ? dc : -dc, dt);
            if (w > prune_above) w = MatchingGraph::PRUNED;
            g.weights[size_t(u) * g.n + v] = g.weights[size_t(v) * g.n + u] = w;
        }
    }
    return g;
}

namespace {

// Match one connected component exactly by pairing each real node with a
// mirror node: mirror-own edges carry the boundary weight, mirror-mirror
// edges are free, and minimization is flipped into maximization so the
// blossom solver applies.
void match_component(const MatchingGraph& g, const std::vector<int>& nodes, BlossomSolver& solver,
                     MatchResult& out) {
    int k = int(nodes.size());
    if (k == 1) {
        out.pairs.emplace_back(nodes[0], -1);
        out.total_weight += g.bweight[nodes[0]];
        return;
    }
    constexpr long long L = MatchingGraph::PRUNED;
    int N = 2 * k;
    std::vector<long long> w(size_t(N) * N, 1);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            int wij = g.w(nodes[i], nodes[j]);
            w[size_t(i) * N + j] = wij >= L ? 1 : L - wij + 1;
            w[size_t(i + k) * N + (j + k)] = L + 1;
        }
        w[size_t(i) * N + (i + k)] = w[size_t(i + k) * N + i] = L - g.bweight[nodes[i]] + 1;
        w[size_t(i) * N + i] = 0;
        w[size_t(i + k) * N + (i + k)] = 0;
    }
    const auto& match = solver.solve(N, w);
    for (int i = 0; i < k; ++i) {
        int m = match[i + 1] - 1;
        if (m == i + k) {
            out.pairs.emplace_back(nodes[i], -1);
            out.total_weight += g.bweight[nodes[i]];
        } else if (m > i && m < k) {
            out.pairs.emplace_back(nodes[i], nodes[m]);
            out.total_weight += g.w(nodes[i], nodes[m]);
        } else if (m < 0 || m >= k) {
            continue;  // i's mirror, handled above, or a mirror-mirror pair
        } else if (m < i) {
            continue;  // pair already emitted from the smaller index
        }
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

MatchResult mwpm(const MatchingGraph& g) {
    MatchResult out;
    if (g.n == 0) return out;
    // Two nodes can only be matched to each other in an optimal solution if
    // their edge beats sending both to the boundary; everything else splits
    // into independent components.
    UnionFind uf(g.n);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.w(u, v) < g.bweight[u] + g.bweight[v]) uf.unite(u, v);
    std::vector<std::vector<int>> comps(g.n);
    for (int u = 0; u < g.n; ++u) comps[uf.find(u)].push_back(u);
    BlossomSolver solver;
    for (const auto& comp : comps)
        if (!comp.empty()) match_component(g, comp, solver, out);
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

namespace {

void brute_rec(const MatchingGraph& g, std::vector<int>& assign, int from, long long cost,
               long long& best, std::vector<int>& best_assign) {
    if (cost >= best) return;
    int u = from;
    while (u < g.n && assign[u] != -2) ++u;
    if (u == g.n) {
        best = cost;
        best_assign = assign;
        return;
    }
    assign[u] = -1;  // boundary
    brute_rec(g, assign, u + 1, cost + g.bweight[u], best, best_assign);
    for (int v = u + 1; v < g.n; ++v) {
        if (assign[v] != -2 || g.w(u, v) >= MatchingGraph::PRUNED) continue;
        assign[u] = v;
        assign[v] = u;
        brute_rec(g, assign, u + 1, cost + g.w(u, v), best, best_assign);
        assign[v] = -2;
    }
    assign[u] = -2;
}

}  // namespace

MatchResult brute_force_match(const MatchingGraph& g) {
    if (g.n > 12) throw std::invalid_argument("brute_force_match: too many nodes");
    std::vector<int> assign(g.n, -2), best_assign;
    long long best = (1LL << 62);
    brute_rec(g, assign, 0, 0, best, best_assign);
    MatchResult out;
    out.total_weight = best;
    for (int u = 0; u < g.n; ++u) {
        if (best_assign[u] == -1)
            out.pairs.emplace_back(u, -1);
        else if (best_assign[u] > u)
            out.pairs.emplace_back(u, best_assign[u]);
    }
    return out;
}

namespace {

// Flip the data qubits on the canonical row-then-column path between two
// stabilizer cells (or straight out to a boundary).
void walk_pair(std::vector<Coord>& out, Coord a, Coord b) {
    int r = a.row;
    while (r != b.row) {
        int step = b.row > r ? 1 : -1;
        out.push_back({r + step, a.col});
        r += 2 * step;
    }
    int c = a.col;
    while (c != b.col) {
        int step = b.col > c ? 1 : -1;
        out.push_back({b.row, c + step});
        c += 2 * step;
    }
}

void walk_boundary(std::vector<Coord>& out, Coord a, Pauli kind, int side,
                   const ArrayLayout& layout) {
    if (kind == Pauli::Z) {
        if (side == 0)
            for (int c = a.col - 1; c >= 0; c -= 2) out.push_back({a.row, c});
        else
            for (int c = a.col + 1; c < layout.ncols; c += 2) out.push_back({a.row, c});
    } else {
        if (side == 0)
            for (int r = a.row - 1; r >= 0; r -= 2) out.push_back({r, a.col});
        else
            for (int r = a.row + 1; r < layout.nrows; r += 2) out.push_back({r, a.col});
    }
}

}  // namespace

Correction correction_from_matching(const MatchingGraph& g, const MatchResult& m,
                                    const ArrayLayout& layout, Pauli kind) {
    Correction corr;
    auto& flips = kind == Pauli::Z ? corr.x_flips : corr.z_flips;
    for (const auto& [u, v] : m.pairs) {
        if (v == -1)
            walk_boundary(flips, g.nodes[u].coord, kind, g.bside[u], layout);
        else
            walk_pair(flips, g.nodes[u].coord, g.nodes[v].coord);
    }
    return corr;
}

namespace {

// Parity of (truth XOR correction) over a logical operator's data support.
int residual_parity(const ArrayLayout& layout, const std::vector<uint8_t>& truth_bits,
                    const std::vector<Coord>& flips, bool column0) {
    std::vector<uint8_t> res = truth_bits;
    for (const auto& c : flips) res[layout.qubit_id(c)] ^= 1;
    int parity = 0;
    for (const auto& s : layout.sites) {
        if (s.role != Role::Data || !s.active) continue;
        if (column0 ? s.coord.col == 0 : s.coord.row == 0) parity ^= res[layout.qubit_id(s.coord)];
    }
    return parity;
}

}  // namespace

DecodeOutcome decode_and_judge(const ArrayLayout& layout, const CycleSimContext& ctx,
                               const SyndromeRecord& record, const PauliFrame& truth) {
    auto events = detection_events(ctx, record);
    Correction corr;
    for (Pauli kind : {Pauli::Z, Pauli::X}) {
        MatchingGraph g = build_graph(events, layout, kind);
        MatchResult m = mwpm(g);
        Correction c = correction_from_matching(g, m, layout, kind);
        auto& dst = kind == Pauli::Z ? corr.x_flips : corr.z_flips;
        auto& src = kind == Pauli::Z ? c.x_flips : c.z_flips;
        dst.insert(dst.end(), src.begin(), src.end());
    }
    // A logical X failure flips the Z_L parity (data column 0); a logical Z
    // failure flips the X_L parity (data row 0).
    int xl = residual_parity(layout, truth.x, corr.x_flips, /*column0=*/true);
    int zl = residual_parity(layout, truth.z, corr.z_flips, /*column0=*/false);
    if (xl && zl) return DecodeOutcome::BothFailure;
    if (xl) return DecodeOutcome::XLFailure;
    if (zl) return DecodeOutcome::ZLFailure;
    return DecodeOutcome::Success;
}

bool decode_xl_failure(const ArrayLayout& layout, const CycleSimContext& ctx,
                       const SyndromeRecord& record, const PauliFrame& truth) {
    auto events = detection_events(ctx, record);
    MatchingGraph g = build_graph(events, layout, Pauli::Z);
    MatchResult m = mwpm(g);
    // Only left-boundary walks cross data column 0; pair paths between
    // interior measure-Z columns never touch it.
    int parity = 0;
    for (const auto& [u, v] : m.pairs)
        if (v == -1 && g.bside[u] == 0) parity ^= 1;
    for (const auto& s : layout.sites)
        if (s.role == Role::Data && s.active && s.coord.col == 0)
            parity ^= truth.x[layout.qubit_id(s.coord)];
    return parity != 0;
}

}  // namespace qsurf
