#pragma once
#include <complex>
#include <vector>

#include "qsurf/pauli.h"
#include "qsurf/rng.h"

namespace qsurf {

// Dense state-vector kernel for small non-Clifford circuits (n <= 14).
// Qubit q addresses bit (1 << q) of the amplitude index.
struct StateVector {
    int n = 0;
    std::vector<std::complex<double>> amp;

    static StateVector zero_state(int n);

    void apply_h(int q);
    void apply_x(int q);
    void apply_y(int q);  // real convention Y = Z*X
    void apply_z(int q);
    void apply_s(int q, bool dagger = false);
    void apply_t(int q, bool dagger = false);
    void apply_rz(int q, double theta);  // diag(1, e^{i theta})
    void apply_cnot(int c, int t);
    void apply_pauli(const PauliString& p);

    // Projective measurement; outcome +1 for |0> / |+>, -1 for |1> / |->.
    int measure_z(int q, Rng& rng);
    int measure_x(int q, Rng& rng);

    double norm() const;
    std::complex<double> overlap(const StateVector& other) const;
    // Projective distance 1 - |<a|b>| (global phase quotiented out).
    double projective_distance(const StateVector& other) const;
};

}  // namespace qsurf
