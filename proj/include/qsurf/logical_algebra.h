#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qsurf/lattice.h"
#include "qsurf/pauli.h"

namespace qsurf {

// Abelian group of recorded stabilizer measurements: generators plus their
// stable +-1 outcomes.
struct StabilizerGroup {
    std::vector<PauliString> gens;
    std::vector<int> outcomes;

    void add(const PauliString& g, int outcome = +1);
    static StabilizerGroup from_layout(const ArrayLayout& layout);
};

// Result of a GF(2) membership test of a chain against the group.
struct Membership {
    enum Status { Member, NonMember, DetectableError } status = NonMember;
    int sign = +1;                // eigenvalue carried by the chain if Member
    std::vector<int> subset;      // generator indices whose product is the chain
};

// Decide whether the chain is a product of generators (symplectic GF(2)
// solve).  A chain that anticommutes with some generator is flagged as a
// detectable error chain instead.
Membership in_group(const PauliString& chain, const StabilizerGroup& g);

// chain' = chain x product(subset); returned sign is the product of the
// subset's recorded outcomes (the eigenvalue relation between chain' and
// chain on the quiescent state).
std::pair<PauliString, int> deform(const PauliString& chain, const std::vector<int>& subset,
                                   const StabilizerGroup& g);

// Pending logical bit/phase flips tracked in software; composition XORs.
struct ByproductRecord {
    int p_x = 0, p_z = 0;
    ByproductRecord& operator^=(const ByproductRecord& o) {
        p_x ^= o.p_x;
        p_z ^= o.p_z;
        return *this;
    }
    bool operator==(const ByproductRecord&) const = default;
};

// Measurement outcomes consumed by a hole move (all +-1; empty vectors mean
// all +1).  initial_stabs covers the cells the extension sweeps over,
// data_x the isolated data qubits, final_stabs the re-enabled cells.
struct MoveOutcomes {
    std::vector<int> initial_stabs, data_x, final_stabs;
};

struct MoveResult {
    ArrayLayout layout;       // hole relocated to the end of the path
    PauliString z_chain;      // transformed phase-flip chain
    PauliString x_chain;      // transformed bit-flip chain
    ByproductRecord byproduct;
    std::vector<std::string> script;
};

// Multi-cell move of a single-cell hole along a path of same-kind stabilizer
// cells (path.front() is the hole's current cell).  The Z-type chain is
// extended by the swept stabilizers and contracted onto the destination
// cell; the X-type chain is extended by the isolated data qubits measured
// along the way.  Byproduct powers come from the supplied outcomes.  Throws
// if the path is broken, occupied, of the wrong kind, or if the move lowers
// the code distance of the qubit.
MoveResult move_hole(const ArrayLayout& layout, int hole_index, const std::vector<Coord>& path,
                     const PauliString& z_chain, const PauliString& x_chain,
                     const LogicalQubit& qubit, const MoveOutcomes& outcomes);

// Two-qubit logical operator as a pair of per-qubit letters.
struct PairOp {
    Pauli q1 = Pauli::I, q2 = Pauli::I;
    bool operator==(const PairOp&) const = default;
};

struct BraidOutcomes {
    std::vector<int> ring_data_x;     // isolated data measured along the loop
    std::vector<int> enclosed_x_stabs;  // stabilizers used to contract the loop
    std::vector<int> z_stabs_initial, z_stabs_final;  // swept cells, both moves
    std::vector<int> detour_z_stabs;  // cells used to deform the crossed chain
};

struct BraidResult {
    PairOp out;
    ByproductRecord byproduct_q1, byproduct_q2;
    PauliString loop;  // the closed data-qubit loop traced by the move
};

// Drag the mover qubit's hole around the closed loop of same-kind stabilizer
// cells and compute the induced operator transformation by loop reduction:
// the traced loop is reduced modulo the active stabilizers, absorbing the
// target qubit's tight loop exactly when the path encloses the target hole.
// Throws if the loop is not closed or encloses a hole of the mover's kind.
BraidResult braid(const ArrayLayout& layout, const LogicalQubit& mover,
                  const LogicalQubit& target, const std::vector<Coord>& loop, PairOp in,
                  const BraidOutcomes& outcomes);

struct HadamardPatchResult {
    std::vector<std::string> script;
    PauliString x_before, z_before;  // canonical planar chains
    PauliString x_after, z_after;    // post-transform chains
    bool swap_ok = false;            // X and Z exchanged roles, algebra intact
};

// Patch-isolation Hadamard on a planar qubit of the given distance,
// verified symbolically: transversal H swaps chain letters and stabilizer
// kinds, the two swap steps shift the patch one cell, and the emitted script
// carries the stabilizer on/off schedule with its repeat counts.
HadamardPatchResult hadamard_patch(int d);

struct ScenarioResult {
    std::vector<std::string> transcript;  // "step <n>: <action>; asserts: <...>"
    bool all_ok = true;
};

// Exact tableau walkthroughs of initialization and measurement procedures
// on a small planar array: wide-cut ground-state initialization, single-cell
// eigenvalue inheritance, destructive chain measurement by per-qubit
// readout, and loop-preserving hole creation.
ScenarioResult init_measure_scenarios(uint64_t seed);

}  // namespace qsurf
