#pragma once
#include <vector>

#include "qsurf/pauli.h"
#include "qsurf/rng.h"

namespace qsurf {

// Heisenberg-picture Clifford simulator.  The state is represented by n
// commuting, independent stabilizer generators plus matching destabilizers
// (destab[i] anticommutes with gens[i] and commutes with every other
// generator), which make deterministic measurement outcomes computable.
struct StabilizerTableau {
    int n = 0;
    std::vector<PauliString> gens;
    std::vector<PauliString> destab;

    // |0...0>: generators Z_i, destabilizers X_i.
    static StabilizerTableau zero_state(int n);

    void apply_h(int q);
    void apply_cnot(int c, int t);
    // Conjugate by a Pauli (error injection): only signs change.
    void apply_pauli(const PauliString& p);

    // Measure a Pauli observable.  Deterministic (+-1, no state change) when
    // the observable commutes with every generator; otherwise the outcome is
    // a fair coin from rng and the tableau is updated.
    int measure(const PauliString& obs, Rng& rng);

    // True iff the observable commutes with all generators (measurement
    // would be deterministic).
    bool is_deterministic(const PauliString& obs) const;

    // Measure Z_q; if the outcome is -1, apply X_q so the qubit ends in |0>.
    void reset(int q, Rng& rng);
};

}  // namespace qsurf
