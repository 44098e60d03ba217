#include "qsurf/statevec.h"

#include <cmath>
#include <stdexcept>

namespace qsurf {

using cd = std::complex<double>;

StateVector StateVector::zero_state(int n) {
    if (n < 0 || n > 14) throw std::out_of_range("statevec: n must be in [0,14]");
    StateVector s;
    s.n = n;
    s.amp.assign(size_t{1} << n, cd(0.0));
    s.amp[0] = 1.0;
    return s;
}

namespace {
inline void check(int q, int n) {
    if (q < 0 || q >= n) throw std::out_of_range("statevec: qubit index");
}
}  // namespace

void StateVector::apply_h(int q) {
    check(q, n);
    const size_t bit = size_t{1} << q;
    const double r = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < amp.size(); ++i) {
        if (i & bit) continue;
        cd a = amp[i], b = amp[i | bit];
        amp[i] = r * (a + b);
        amp[i | bit] = r * (a - b);
    }
}

void StateVector::apply_x(int q) {
    check(q, n);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amp.size(); ++i)
        if (!(i & bit)) std::swap(amp[i], amp[i | bit]);
}

void StateVector::apply_z(int q) {
    check(q, n);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amp.size(); ++i)
        if (i & bit) amp[i] = -amp[i];
}

void StateVector::apply_y(int q) {
    // Y = Z*X: |0> -> -|1>, |1> -> |0>.
    check(q, n);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amp.size(); ++i) {
        if (i & bit) continue;
        cd a = amp[i], b = amp[i | bit];
        amp[i] = b;
        amp[i | bit] = -a;
    }
}

void StateVector::apply_s(int q, bool dagger) {
    check(q, n);
    const size_t bit = size_t{1} << q;
    const cd ph = dagger ? cd(0, -1) : cd(0, 1);
    for (size_t i = 0; i < amp.size(); ++i)
        if (i & bit) amp[i] *= ph;
}

void StateVector::apply_t(int q, bool dagger) {
    apply_rz(q, dagger ? -M_PI / 4 : M_PI / 4);
}

void StateVector::apply_rz(int q, double theta) {
    check(q, n);
    const size_t bit = size_t{1} << q;
    const cd ph = std::polar(1.0, theta);
    for (size_t i = 0; i < amp.size(); ++i)
        if (i & bit) amp[i] *= ph;
}

void StateVector::apply_cnot(int c, int t) {
    check(c, n);
    check(t, n);
    if (c == t) throw std::out_of_range("statevec: cnot needs distinct qubits");
    const size_t cb = size_t{1} << c, tb = size_t{1} << t;
    for (size_t i = 0; i < amp.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(amp[i], amp[i | tb]);
}

void StateVector::apply_pauli(const PauliString& p) {
    for (const auto& [q, op] : p.support) {
        switch (op) {
            case Pauli::X: apply_x(q); break;
            case Pauli::Y: apply_y(q); break;
            case Pauli::Z: apply_z(q); break;
            default: break;
        }
    }
    if (p.sign < 0)
        for (auto& a : amp) a = -a;
}

int StateVector::measure_z(int q, Rng& rng) {
    check(q, n);
    const size_t bit = size_t{1} << q;
    double p0 = 0.0;
    for (size_t i = 0; i < amp.size(); ++i)
        if (!(i & bit)) p0 += std::norm(amp[i]);
    int outcome = rng.uniform() < p0 ? +1 : -1;
    double keep = outcome > 0 ? p0 : 1.0 - p0;
    double scale = keep > 0 ? 1.0 / std::sqrt(keep) : 0.0;
    for (size_t i = 0; i < amp.size(); ++i) {
        bool one = (i & bit) != 0;
        if (one == (outcome > 0))
            amp[i] = 0.0;
        else
            amp[i] *= scale;
    }
    return outcome;
}

int StateVector::measure_x(int q, Rng& rng) {
    apply_h(q);
    int outcome = measure_z(q, rng);
    apply_h(q);
    return outcome;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

cd StateVector::overlap(const StateVector& other) const {
    if (n != other.n) throw std::invalid_argument("statevec: dimension mismatch");
    cd s = 0.0;
    for (size_t i = 0; i < amp.size(); ++i) s += std::conj(amp[i]) * other.amp[i];
    return s;
}

double StateVector::projective_distance(const StateVector& other) const {
    return 1.0 - std::abs(overlap(other));
}

}  // namespace qsurf
