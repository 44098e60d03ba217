#include "qsurf/lattice.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qsurf {

namespace {

Role role_at(Coord c) {
    bool re = (c.row % 2) == 0, ce = (c.col % 2) == 0;
    if (re == ce) return Role::Data;
    return re ? Role::MeasureZ : Role::MeasureX;  // (even,odd) -> Z, (odd,even) -> X
}

// Zig-zag data-neighbor order: measure-Z uses (N, W, E, S); measure-X uses
// (N, E, W, S).  This mirrored pair keeps every overlapping X/Z stabilizer
// pair commuting step by step during the cycle.
std::vector<Coord> neighbor_order(Coord m, Pauli kind) {
    Coord n{m.row - 1, m.col}, s{m.row + 1, m.col};
    Coord w{m.row, m.col - 1}, e{m.row, m.col + 1};
    if (kind == Pauli::Z) return {n, w, e, s};
    return {n, e, w, s};
}

}  // namespace

int ArrayLayout::data_count() const {
    int c = 0;
    for (const auto& s : sites)
        if (s.role == Role::Data && s.active) ++c;
    return c;
}

int ArrayLayout::measure_count() const {
    int c = 0;
    for (const auto& s : stabilizers)
        if (s.active) ++c;
    return c;
}

PauliString ArrayLayout::stabilizer_string(const StabilizerSpec& s) const {
    PauliString out;
    for (const auto& c : s.neighbors) out.support[qubit_id(c)] = s.kind;
    return out;
}

ArrayLayout build_planar(int d) {
    if (d < 2) throw std::invalid_argument("build_planar: d must be >= 2");
    ArrayLayout l;
    l.distance = d;
    l.nrows = l.ncols = 2 * d - 1;
    l.sites.resize(size_t(l.nrows) * l.ncols);
    for (int r = 0; r < l.nrows; ++r)
        for (int c = 0; c < l.ncols; ++c)
            l.site({r, c}) = Site{{r, c}, role_at({r, c}), true};
    for (const auto& s : l.sites) {
        if (s.role == Role::Data) continue;
        Pauli kind = s.role == Role::MeasureX ? Pauli::X : Pauli::Z;
        StabilizerSpec spec;
        spec.measure_site = s.coord;
        spec.kind = kind;
        for (const auto& nb : neighbor_order(s.coord, kind))
            if (l.in_grid(nb)) spec.neighbors.push_back(nb);
        l.stabilizers.push_back(std::move(spec));
    }
    return l;
}

ArrayLayout carve_holes(const ArrayLayout& layout, std::vector<HoleSpec> holes) {
    ArrayLayout l = layout;
    std::set<Coord> off;
    for (const auto& h : holes) {
        for (const auto& c : h.turned_off) {
            if (!l.in_grid(c) || l.site(c).role == Role::Data)
                throw std::invalid_argument("carve_holes: turned_off must be measure sites");
            // Holes may not clip the array edge (the cut must be interior).
            if (c.row == 0 || c.col == 0 || c.row == l.nrows - 1 || c.col == l.ncols - 1)
                throw std::invalid_argument("carve_holes: hole touches the array boundary");
            if (!off.insert(c).second)
                throw std::invalid_argument("carve_holes: overlapping holes");
        }
    }
    for (const auto& c : off) l.site(c).active = false;
    for (auto& s : l.stabilizers)
        if (off.count(s.measure_site)) s.active = false;

    // Interior data qubits of a multi-cell hole: data adjacent to a
    // turned-off stabilizer whose kind differs from the hole's kind are
    // measured out of the code.
    for (const auto& h : holes) {
        Pauli other = h.kind == Pauli::Z ? Pauli::X : Pauli::Z;
        for (const auto& c : h.turned_off) {
            Role r = l.site(c).role;
            Pauli kind = r == Role::MeasureX ? Pauli::X : Pauli::Z;
            if (kind != other) continue;
            for (const auto& nb : neighbor_order(c, kind))
                if (l.in_grid(nb)) l.site(nb).active = false;
        }
    }

    // Trim active stabilizers down to their active data neighbors.
    for (auto& s : l.stabilizers) {
        if (!s.active) continue;
        std::vector<Coord> kept;
        for (const auto& nb : s.neighbors)
            if (l.site(nb).active) kept.push_back(nb);
        s.neighbors = std::move(kept);
    }

    // Derive each hole's perimeter: active data adjacent to the hole's
    // turned-off cells of its own kind, ordered around the hole centroid.
    for (auto& h : holes) {
        std::set<Coord> ring;
        double cr = 0, cc = 0;
        int cnt = 0;
        for (const auto& c : h.turned_off) {
            Role r = l.site(c).role;
            Pauli kind = r == Role::MeasureX ? Pauli::X : Pauli::Z;
            if (kind != h.kind) continue;
            cr += c.row;
            cc += c.col;
            ++cnt;
            for (const auto& nb : neighbor_order(c, kind))
                if (l.in_grid(nb) && l.site(nb).active) ring.insert(nb);
        }
        if (cnt) { cr /= cnt; cc /= cnt; }
        std::vector<Coord> per(ring.begin(), ring.end());
        std::sort(per.begin(), per.end(), [&](Coord a, Coord b) {
            return std::atan2(a.row - cr, a.col - cc) < std::atan2(b.row - cr, b.col - cc);
        });
        h.perimeter = std::move(per);
        l.holes.push_back(h);
    }
    return l;
}

namespace {

// Cell graph for chains of the given error type.  X chains are detected by
// measure-Z stabilizers, so they live on the measure-Z cell graph with the
// X boundaries (left/right) as terminals; Z chains symmetrically on the
// measure-X graph with top/bottom terminals.  Node ids: cell id for measure
// sites, -1/-2 for the two boundaries, -(3+h) for hole h of the right kind.
struct CellGraph {
    const ArrayLayout& l;
    Pauli chain_type;  // Pauli::X or Pauli::Z chains
    Role cell_role;
    std::map<Coord, int> hole_of_cell;

    explicit CellGraph(const ArrayLayout& layout, Pauli type) : l(layout), chain_type(type) {
        cell_role = type == Pauli::X ? Role::MeasureZ : Role::MeasureX;
        Pauli cut = type == Pauli::X ? Pauli::Z : Pauli::X;
        for (size_t h = 0; h < l.holes.size(); ++h) {
            if (l.holes[h].kind != cut) continue;
            for (const auto& c : l.holes[h].turned_off)
                if ((l.site(c).role == Role::MeasureZ ? Pauli::Z : Pauli::X) == cut)
                    hole_of_cell[c] = int(h);
        }
    }

    int node_of(Coord cell) const {
        auto it = hole_of_cell.find(cell);
        if (it != hole_of_cell.end()) return -(3 + it->second);
        return l.qubit_id(cell);
    }

    // Neighbors of a cell node: (neighbor node id, data qubit on the edge).
    std::vector<std::pair<int, Coord>> edges(Coord cell) const {
        std::vector<std::pair<int, Coord>> out;
        const bool horiz = chain_type == Pauli::X;  // measure-Z cells: boundary is left/right
        for (auto [dr, dc] : {std::pair{-2, 0}, {2, 0}, {0, -2}, {0, 2}}) {
            Coord nb{cell.row + dr, cell.col + dc};
            Coord data{cell.row + dr / 2, cell.col + dc / 2};
            if (!l.in_grid(data) || !l.site(data).active) continue;
            if (!l.in_grid(nb)) {
                if (horiz && dr == 0) out.push_back({dc < 0 ? -1 : -2, data});
                if (!horiz && dc == 0) out.push_back({dr < 0 ? -1 : -2, data});
                continue;
            }
            if (l.site(nb).role != cell_role) continue;
            out.push_back({node_of(nb), data});
        }
        return out;
    }

    std::vector<Coord> cells() const {
        std::vector<Coord> out;
        for (const auto& s : l.sites)
            if (s.role == cell_role) out.push_back(s.coord);
        return out;
    }

    // BFS shortest chain (as a list of data qubits) between two terminal node
    // sets.  Terminals are node ids (< 0) or explicit cell lists.
    std::vector<Coord> shortest_chain(const std::vector<int>& sources,
                                      const std::vector<int>& targets) const {
        std::set<int> src(sources.begin(), sources.end());
        std::set<int> dst(targets.begin(), targets.end());
        std::map<int, std::pair<int, Coord>> parent;  // node -> (prev node, data)
        std::queue<int> q;
        for (int s : src) {
            parent[s] = {s, Coord{-1, -1}};
            q.push(s);
        }
        auto expand = [&](int node) {
            std::vector<std::pair<int, Coord>> out;
            if (node < 0) {
                // Virtual terminal: enumerate all cells mapping to it.
                for (const auto& cell : cells())
                    if (node_of(cell) == node)
                        for (auto& e : edges(cell)) out.push_back(e);
                if (node == -1 || node == -2) {
                    // Boundary: edges from boundary into adjacent cells.
                    for (const auto& cell : cells())
                        for (auto& [nb, data] : edges(cell))
                            if (nb == node) out.push_back({node_of(cell), data});
                }
            } else {
                for (auto& e : edges(l.coord_of(node))) out.push_back(e);
            }
            return out;
        };
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            if (dst.count(u) && !src.count(u)) break;
            for (auto& [v, data] : expand(u)) {
                if (parent.count(v)) continue;
                parent[v] = {u, data};
                q.push(v);
            }
        }
        for (int t : targets) {
            if (!parent.count(t) || src.count(t)) continue;
            std::vector<Coord> chain;
            int cur = t;
            while (parent[cur].first != cur) {
                chain.push_back(parent[cur].second);
                cur = parent[cur].first;
            }
            std::reverse(chain.begin(), chain.end());
            return chain;
        }
        throw std::runtime_error("lattice: no chain between the requested terminals");
    }
};

PauliString chain_string(const ArrayLayout& l, const std::vector<Coord>& data, Pauli p) {
    PauliString out;
    for (const auto& c : data) out.support[l.qubit_id(c)] = p;
    return out;
}

int hole_node(const ArrayLayout&, int h) { return -(3 + h); }

}  // namespace

PauliString logical_chain(const ArrayLayout& l, Pauli which, const LogicalQubit& q) {
    if (q.kind == LogicalQubit::Planar) {
        std::vector<Coord> data;
        if (which == Pauli::X) {
            for (int c = 0; c < l.ncols; c += 2) data.push_back({0, c});
        } else {
            for (int r = 0; r < l.nrows; r += 2) data.push_back({r, 0});
        }
        return chain_string(l, data, which);
    }
    // For a Z-cut qubit, Z_L is the loop around a hole and X_L the chain
    // linking the holes (or hole to boundary); for an X-cut qubit the roles
    // swap.
    if (which == q.cut) {
        const HoleSpec& h = l.holes.at(q.hole_a);
        return chain_string(l, h.perimeter, which);
    }
    CellGraph g(l, which);
    std::vector<int> src{hole_node(l, q.hole_a)};
    std::vector<int> dst;
    if (q.kind == LogicalQubit::HolePair)
        dst = {hole_node(l, q.hole_b)};
    else
        dst = {-1, -2};
    return chain_string(l, g.shortest_chain(src, dst), which);
}

int code_distance(const ArrayLayout& l, const LogicalQubit& q) {
    auto chain_len = [&](Pauli type, std::vector<int> src, std::vector<int> dst) -> int {
        CellGraph g(l, type);
        try {
            return int(g.shortest_chain(src, dst).size());
        } catch (const std::runtime_error&) {
            return 1 << 30;
        }
    };
    if (q.kind == LogicalQubit::Planar) {
        int dx = chain_len(Pauli::X, {-1}, {-2});
        int dz = chain_len(Pauli::Z, {-1}, {-2});
        return std::min(dx, dz);
    }
    Pauli link_type = q.cut == Pauli::Z ? Pauli::X : Pauli::Z;
    int a = hole_node(l, q.hole_a);
    int link;
    if (q.kind == LogicalQubit::HolePair) {
        int b = hole_node(l, q.hole_b);
        link = chain_len(link_type, {a}, {b});
        // Alternative representative routed through the matching boundaries.
        int via = chain_len(link_type, {a}, {-1, -2}) + chain_len(link_type, {b}, {-1, -2});
        link = std::min(link, via);
    } else {
        link = chain_len(link_type, {a}, {-1, -2});
    }
    int loop = int(l.holes.at(q.hole_a).perimeter.size());
    if (q.kind == LogicalQubit::HolePair)
        loop = std::min(loop, int(l.holes.at(q.hole_b).perimeter.size()));
    return std::min(link, loop);
}

std::string serialize_layout(const ArrayLayout& l) {
    std::ostringstream out;
    out << "d=" << l.distance << "\n";
    for (const auto& s : l.sites) {
        const char* role = s.role == Role::Data      ? "data"
                           : s.role == Role::MeasureX ? "measure_x"
                                                      : "measure_z";
        out << s.coord.row << " " << s.coord.col << " " << role << " " << (s.active ? 1 : 0)
            << "\n";
    }
    return out.str();
}

}  // namespace qsurf
