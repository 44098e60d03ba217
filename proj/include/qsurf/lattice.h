#pragma once
#include <string>
#include <vector>

#include "qsurf/pauli.h"

namespace qsurf {

struct Coord {
    int row = 0, col = 0;
    auto operator<=>(const Coord&) const = default;
};

enum class Role : unsigned char { Data, MeasureX, MeasureZ };

struct Site {
    Coord coord;
    Role role;
    bool active = true;
};

// One stabilizer: the measure site plus its data neighbors in the fixed
// zig-zag order.  Measure-Z stabilizers visit (N, W, E, S); measure-X visit
// (N, E, W, S).  Boundary stabilizers omit missing neighbors but keep the
// relative order.
struct StabilizerSpec {
    Coord measure_site;
    Pauli kind;  // Pauli::X or Pauli::Z
    std::vector<Coord> neighbors;
    bool active = true;
};

// A hole: a set of deactivated measure sites of one kind (plus, for
// multi-cell holes, interior sites of the other kind).
struct HoleSpec {
    Pauli kind;  // Z-cut (Pauli::Z) or X-cut (Pauli::X)
    std::vector<Coord> turned_off;
    std::vector<Coord> perimeter;  // derived: active data ring around the hole
};

// Identifies which logical qubit a chain/distance query refers to.
struct LogicalQubit {
    enum Kind { Planar, HolePair, HoleBoundary } kind = Planar;
    Pauli cut = Pauli::I;       // Z-cut or X-cut for hole qubits
    int hole_a = -1, hole_b = -1;  // indices into ArrayLayout::holes
};

// 2D surface-code array on a (2d-1) x (2d-1) grid.  Data qubits sit at
// (even,even) and (odd,odd); measure-Z at (even,odd); measure-X at
// (odd,even).  X boundaries are the left/right edges, Z boundaries the
// top/bottom edges.  Qubit ids for PauliString are row*ncols + col.
struct ArrayLayout {
    int distance = 0;
    int nrows = 0, ncols = 0;
    std::vector<Site> sites;  // row-major, one per grid point
    std::vector<StabilizerSpec> stabilizers;
    std::vector<HoleSpec> holes;

    int qubit_id(Coord c) const { return c.row * ncols + c.col; }
    Coord coord_of(int id) const { return {id / ncols, id % ncols}; }
    bool in_grid(Coord c) const {
        return c.row >= 0 && c.row < nrows && c.col >= 0 && c.col < ncols;
    }
    const Site& site(Coord c) const { return sites[qubit_id(c)]; }
    Site& site(Coord c) { return sites[qubit_id(c)]; }

    int data_count() const;
    int measure_count() const;  // active stabilizers
    // Stabilizer as a PauliString over data-qubit ids.
    PauliString stabilizer_string(const StabilizerSpec& s) const;
};

// Planar array of the given distance (d >= 2).
ArrayLayout build_planar(int d);

// Deactivate the given holes; trims adjacent stabilizers and deactivates
// interior data qubits of multi-cell holes.  Returns the new layout.
ArrayLayout carve_holes(const ArrayLayout& layout, std::vector<HoleSpec> holes);

// Canonical minimal logical operator chain.
PauliString logical_chain(const ArrayLayout& layout, Pauli which, const LogicalQubit& q);

// Minimum weight over all logically equivalent chains (exact, BFS-based).
int code_distance(const ArrayLayout& layout, const LogicalQubit& q);

// Line-oriented text dump: header "d=<int>", then "row col role active".
std::string serialize_layout(const ArrayLayout& layout);

}  // namespace qsurf
