#include "qsurf/gate_verify.h"

#include <array>
#include <cmath>
#include <complex>
#include <sstream>

#include "qsurf/tableau.h"

namespace qsurf {

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;
using Mat4 = std::array<cd, 16>;

const Mat2 kI2 = {1, 0, 0, 1};
const Mat2 kX2 = {0, 1, 1, 0};
const Mat2 kY2 = {0, 1, -1, 0};  // real convention Y = Z*X
const Mat2 kZ2 = {1, 0, 0, -1};
const Mat2 kH2 = {1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0),
                  -1 / std::sqrt(2.0)};
const Mat2 kS2 = {1, 0, 0, cd(0, 1)};
const Mat2 kT2 = {1, 0, 0, std::polar(1.0, M_PI / 4)};

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[2 * i + j] += a[2 * i + k] * b[2 * k + j];
    return r;
}

Mat4 mul(const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) r[4 * i + j] += a[4 * i + k] * b[4 * k + j];
    return r;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r[4 * (2 * i + k) + (2 * j + l)] = a[2 * i + j] * b[2 * k + l];
    return r;
}

Mat4 adjoint(const Mat4& a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[4 * i + j] = std::conj(a[4 * j + i]);
    return r;
}

template <typename M>
double max_diff(const M& a, const M& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Matrix distance up to a global phase.
template <typename M>
double phase_diff(const M& a, const M& b) {
    cd ph = 0;
    for (size_t i = 0; i < a.size(); ++i) ph += std::conj(a[i]) * b[i];
    if (std::abs(ph) < 1e-300) return 1.0;
    ph /= std::abs(ph);
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] * ph - b[i]));
    return m;
}

StateVector random_state(int n, Rng& rng) {
    StateVector st = StateVector::zero_state(n);
    double nn = 0;
    for (auto& a : st.amp) {
        a = cd(rng.uniform() - 0.5, rng.uniform() - 0.5);
        nn += std::norm(a);
    }
    for (auto& a : st.amp) a /= std::sqrt(nn);
    return st;
}

// Single-qubit state alpha|0> + beta|1> placed on qubit q of a fresh register.
StateVector product_state(int n, int q, cd alpha, cd beta) {
    StateVector st = StateVector::zero_state(n);
    st.amp[0] = alpha;
    st.amp[size_t(1) << q] = beta;
    return st;
}

// Joint two-data-qubit parity readout: qubits {0: X check, 1: a, 2: b,
// 3: Z check}, ancillas fresh |0>.  Correct coupling order finishes all
// X-check CNOTs before the Z-check collects; the interleaved order is the
// broken variant.  Returns (m_x, m_z).
std::pair<int, int> run_parity_circuit(StateVector& st, bool interleaved, Rng& rng) {
    st.apply_h(0);
    if (!interleaved) {
        st.apply_cnot(0, 1);
        st.apply_cnot(0, 2);
        st.apply_cnot(1, 3);
        st.apply_cnot(2, 3);
    } else {
        st.apply_cnot(0, 1);
        st.apply_cnot(1, 3);
        st.apply_cnot(2, 3);
        st.apply_cnot(0, 2);
    }
    st.apply_h(0);
    int m_x = st.measure_z(0, rng);
    int m_z = st.measure_z(3, rng);
    return {m_x, m_z};
}

// Reset the two check qubits of the parity circuit back to |0> so the
// circuit can be re-run on the surviving data state.
void reset_checks(StateVector& st, Rng& rng) {
    if (st.measure_z(0, rng) == -1) st.apply_x(0);
    if (st.measure_z(3, rng) == -1) st.apply_x(3);
}

// Deterministic phase-gate circuit: |psi> on qubit p controls two CNOTs onto
// the +i-phase ancilla y, with a Hadamard on y after each.
void run_s_circuit(StateVector& st, int p, int y) {
    st.apply_cnot(p, y);
    st.apply_h(y);
    st.apply_cnot(p, y);
    st.apply_h(y);
}

// Gate-teleportation circuit: phase ancilla (angle theta) on qubit 0
// controls a CNOT onto |psi> on qubit 1, which is then measured in Z.
// The output lands on qubit 0: X^{pz} Rz((-1)^{pz} theta)|psi>.
int run_teleport_rz(StateVector& st, Rng& rng) { /* st: |theta>_0 (x) |psi>_1 */
    st.apply_cnot(0, 1);
    return st.measure_z(1, rng);
}

StateVector phase_ancilla_state(double theta, cd alpha, cd beta) {
    StateVector st = StateVector::zero_state(2);
    double r = 1 / std::sqrt(2.0);
    cd ph = std::polar(1.0, theta);
    // qubit 0 = ancilla, qubit 1 = psi
    st.amp[0b00] = r * alpha;
    st.amp[0b01] = r * ph * alpha;
    st.amp[0b10] = r * beta;
    st.amp[0b11] = r * ph * beta;
    return st;
}

}  // namespace

void VerifyReport::add(const std::string& id, double measured, double expected, double tol) {
    bool pass = std::abs(measured - expected) <= tol;
    all_pass = all_pass && pass;
    std::ostringstream s;
    s.precision(10);
    s << (pass ? "PASS " : "FAIL ") << id << " " << measured << " " << expected << " " << tol;
    lines.push_back(s.str());
}

void VerifyReport::add_exact(const std::string& id, long long measured, long long expected) {
    bool pass = measured == expected;
    all_pass = all_pass && pass;
    std::ostringstream s;
    s << (pass ? "PASS " : "FAIL ") << id << " " << measured << " " << expected << " 0";
    lines.push_back(s.str());
}

void VerifyReport::merge(const VerifyReport& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
    all_pass = all_pass && other.all_pass;
}

std::string VerifyReport::text() const {
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += "\n";
    }
    return out;
}

VerifyReport verify_two_qubit_stabilizer(uint64_t seed) {
    VerifyReport rep;
    Rng rng(seed);
    auto idx = [](int x, int a, int b, int z) { return x + 2 * a + 4 * b + 8 * z; };

    // Singlet input projects to (-1,-1) every time and survives unchanged.
    int neg_both = 0;
    double max_dist = 0;
    const int kSingletRuns = 30;
    for (int t = 0; t < kSingletRuns; ++t) {
        StateVector st = StateVector::zero_state(4);
        st.amp[0] = 0;
        double r = 1 / std::sqrt(2.0);
        st.amp[idx(0, 0, 1, 0)] = r;
        st.amp[idx(0, 1, 0, 0)] = -r;
        auto [mx, mz] = run_parity_circuit(st, false, rng);
        if (mx == -1 && mz == -1) ++neg_both;
        StateVector expect = StateVector::zero_state(4);
        expect.amp.assign(16, 0);
        expect.amp[idx(1, 0, 1, 1)] = r;
        expect.amp[idx(1, 1, 0, 1)] = -r;
        max_dist = std::max(max_dist, st.projective_distance(expect));
    }
    rep.add_exact("parity-readout-singlet-outcomes", neg_both, kSingletRuns);
    rep.add("parity-readout-singlet-state", max_dist, 0.0, 1e-12);

    // |gg> input: Z parity always +1, X parity a fair coin.
    int mz_plus = 0, mx_sum = 0;
    const int kZeroRuns = 1000;
    for (int t = 0; t < kZeroRuns; ++t) {
        StateVector st = StateVector::zero_state(4);
        auto [mx, mz] = run_parity_circuit(st, false, rng);
        mz_plus += (mz == +1);
        mx_sum += mx;
    }
    rep.add_exact("parity-readout-zero-z-outcomes", mz_plus, kZeroRuns);
    rep.add("parity-readout-zero-x-balance", double(mx_sum) / kZeroRuns, 0.0, 0.16);

    // Exact Bell-projection probabilities for a random input A,B,C,D.
    {
        StateVector st = StateVector::zero_state(4);
        cd A(0.31, 0.2), B(-0.45, 0.11), C(0.52, -0.33), D(0.17, 0.46);
        double nn = std::sqrt(std::norm(A) + std::norm(B) + std::norm(C) + std::norm(D));
        A /= nn; B /= nn; C /= nn; D /= nn;
        st.amp[idx(0, 0, 0, 0)] = A;
        st.amp[idx(0, 0, 1, 0)] = B;
        st.amp[idx(0, 1, 0, 0)] = C;
        st.amp[idx(0, 1, 1, 0)] = D;
        st.apply_h(0);
        st.apply_cnot(0, 1);
        st.apply_cnot(0, 2);
        st.apply_cnot(1, 3);
        st.apply_cnot(2, 3);
        st.apply_h(0);
        double prob[2][2] = {{0, 0}, {0, 0}};  // [x bit][z bit]
        for (int i = 0; i < 16; ++i) prob[i & 1][(i >> 3) & 1] += std::norm(st.amp[i]);
        double diff = 0;
        diff = std::max(diff, std::abs(prob[0][0] - 0.5 * std::norm(A + D)));
        diff = std::max(diff, std::abs(prob[1][0] - 0.5 * std::norm(A - D)));
        diff = std::max(diff, std::abs(prob[0][1] - 0.5 * std::norm(B + C)));
        diff = std::max(diff, std::abs(prob[1][1] - 0.5 * std::norm(B - C)));
        rep.add("parity-readout-bell-probabilities", diff, 0.0, 1e-12);
    }

    // Re-measurement reproduces both the outcomes and the state.
    int repeat_mismatch = 0;
    double repeat_dist = 0;
    for (int t = 0; t < 20; ++t) {
        StateVector st = StateVector::zero_state(4);
        StateVector data = random_state(2, rng);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) st.amp[idx(0, a, b, 0)] = data.amp[2 * b + a];
        auto o1 = run_parity_circuit(st, false, rng);
        StateVector s1 = st;
        reset_checks(st, rng);
        auto o2 = run_parity_circuit(st, false, rng);
        if (o1 != o2) ++repeat_mismatch;
        repeat_dist = std::max(repeat_dist, st.projective_distance(s1));
    }
    rep.add_exact("parity-readout-repeat-outcomes", repeat_mismatch, 0);
    rep.add("parity-readout-repeat-state", repeat_dist, 0.0, 1e-12);

    // Interleaved coupling order: the effective four-body stabilizers
    // anticommute with the final single-qubit measurements, so a re-run
    // disagrees with the first run about 3/4 of the time.
    int differ = 0;
    const int kWrongRuns = 400;
    for (int t = 0; t < kWrongRuns; ++t) {
        StateVector st = StateVector::zero_state(4);
        st.amp[0] = 0;
        double r = 1 / std::sqrt(2.0);
        st.amp[idx(0, 0, 1, 0)] = r;
        st.amp[idx(0, 1, 0, 0)] = -r;
        auto o1 = run_parity_circuit(st, true, rng);
        reset_checks(st, rng);
        auto o2 = run_parity_circuit(st, true, rng);
        if (o1 != o2) ++differ;
    }
    rep.add("parity-readout-wrong-order-randomizes", double(differ) / kWrongRuns, 0.75, 0.1);

    // Clifford cross-check: the tableau backend agrees on the deterministic
    // singlet outcomes.
    {
        StabilizerTableau tab = StabilizerTableau::zero_state(4);
        tab.apply_h(1);
        tab.apply_cnot(1, 2);
        tab.apply_pauli(PauliString(2, Pauli::X));
        tab.apply_pauli(PauliString(1, Pauli::Z));  // (|01> - |10>)/sqrt(2) on a,b
        tab.apply_h(0);
        tab.apply_cnot(0, 1);
        tab.apply_cnot(0, 2);
        tab.apply_cnot(1, 3);
        tab.apply_cnot(2, 3);
        tab.apply_h(0);
        PauliString z0(0, Pauli::Z), z3(3, Pauli::Z);
        bool det = tab.is_deterministic(z0) && tab.is_deterministic(z3);
        int mx = tab.measure(z0, rng), mz = tab.measure(z3, rng);
        rep.add_exact("parity-readout-tableau-agrees", det && mx == -1 && mz == -1, 1);
    }
    return rep;
}

VerifyReport verify_cnot_heisenberg() {
    VerifyReport rep;
    Mat4 C{};  // CNOT, qubit order (control, target)
    C[4 * 0 + 0] = C[4 * 1 + 1] = C[4 * 2 + 3] = C[4 * 3 + 2] = 1;
    auto conj = [&](const Mat4& p) { return mul(mul(adjoint(C), p), C); };

    rep.add("cnot-conj-x-i", max_diff(conj(kron(kX2, kI2)), kron(kX2, kX2)), 0.0, 1e-12);
    rep.add("cnot-conj-i-x", max_diff(conj(kron(kI2, kX2)), kron(kI2, kX2)), 0.0, 1e-12);
    rep.add("cnot-conj-z-i", max_diff(conj(kron(kZ2, kI2)), kron(kZ2, kI2)), 0.0, 1e-12);
    rep.add("cnot-conj-i-z", max_diff(conj(kron(kI2, kZ2)), kron(kZ2, kZ2)), 0.0, 1e-12);
    rep.add("cnot-conj-x-z", max_diff(conj(kron(kX2, kZ2)), kron(kY2, kY2)), 0.0, 1e-12);
    rep.add("cnot-conj-y-i", max_diff(conj(kron(kY2, kI2)), kron(kY2, kX2)), 0.0, 1e-12);
    rep.add("cnot-conj-i-i", max_diff(conj(kron(kI2, kI2)), kron(kI2, kI2)), 0.0, 1e-12);

    // Closure: conjugation of any product equals the product of conjugations.
    const Mat2 paulis[4] = {kI2, kX2, kY2, kZ2};
    double worst = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Mat4 lhs = conj(mul(kron(paulis[a], kI2), kron(kI2, paulis[b])));
            Mat4 rhs = mul(conj(kron(paulis[a], kI2)), conj(kron(kI2, paulis[b])));
            worst = std::max(worst, max_diff(lhs, rhs));
        }
    rep.add("cnot-conj-closure-16-products", worst, 0.0, 1e-12);
    return rep;
}

namespace {

// Measurement-based CNOT with an opposite-type intermediary that is the
// *target* of every braid-CNOT.  Qubits: 0 control, 1 intermediary |0>,
// 2 target-out |+>, 3 target-in.  Output register: (0, 2).
std::pair<int, int> run_cnot_via_target_ancilla(StateVector& st, Rng& rng) {
    st.apply_h(2);
    st.apply_cnot(3, 1);
    st.apply_cnot(0, 1);
    st.apply_cnot(2, 1);
    int m_z = st.measure_z(1, rng);
    int m_x = st.measure_x(3, rng);
    // The Z byproduct from the target teleportation has already passed
    // through the CNOT, so it sits on control and target-out alike.
    if (m_x == -1) {
        st.apply_z(0);
        st.apply_z(2);
    }
    if (m_z == -1) st.apply_x(2);
    return {m_z, m_x};
}

// Dual orientation: the intermediary is the *control* of every braid-CNOT.
// Qubits: 0 control-in, 1 intermediary |+>, 2 control-out |0>, then targets.
// Output register: (2, targets).
std::pair<int, int> run_cnot_via_control_ancilla(StateVector& st, int n_targets, Rng& rng) {
    st.apply_h(1);
    st.apply_cnot(1, 0);
    st.apply_cnot(1, 2);
    for (int t = 0; t < n_targets; ++t) st.apply_cnot(1, 3 + t);
    int m_z = st.measure_z(0, rng);
    int m_x = st.measure_x(1, rng);
    // The X byproduct from the control teleportation fans out through the
    // CNOTs onto control-out and every target.
    if (m_z == -1) {
        st.apply_x(2);
        for (int t = 0; t < n_targets; ++t) st.apply_x(3 + t);
    }
    if (m_x == -1) st.apply_z(2);
    return {m_z, m_x};
}

}  // namespace

namespace {

// Add amplitude w on a basis pattern whose qubit qx was measured in X with
// outcome mx, i.e. collapsed to (|0> + mx|1>)/sqrt(2).
void add_with_x_eigen(StateVector& st, size_t base, int qx, int mx, cd w) {
    double r = 1 / std::sqrt(2.0);
    st.amp[base] += w * r;
    st.amp[base | (size_t(1) << qx)] += double(mx) * w * r;
}

}  // namespace

VerifyReport verify_same_type_cnot(uint64_t seed) {
    VerifyReport rep;
    Rng rng(seed);
    auto in_idx = [](int ctrl, int tgt) { return ctrl + 8 * tgt; };  // qubits 0 and 3

    // Basis-state truth table, both branches sampled across runs.
    int basis_bad = 0;
    bool seen[2][2] = {{false, false}, {false, false}};
    for (int t = 0; t < 80; ++t) {
        int c = rng.uniform_int(2), d = rng.uniform_int(2);
        StateVector st = StateVector::zero_state(4);
        st.amp[0] = 0;
        st.amp[in_idx(c, d)] = 1;
        auto [mz, mx] = run_cnot_via_target_ancilla(st, rng);
        seen[mz == -1][mx == -1] = true;
        // output on (0, 2); qubit 1 holds the Z outcome, qubit 3 collapsed
        // to the X eigenstate of its outcome
        StateVector expect = StateVector::zero_state(4);
        expect.amp[0] = 0;
        add_with_x_eigen(expect, c + 2 * (mz == -1 ? 1 : 0) + 4 * (d ^ c), 3, mx, 1.0);
        if (st.projective_distance(expect) > 1e-12) ++basis_bad;
    }
    rep.add_exact("teleported-cnot-basis-truth-table", basis_bad, 0);
    rep.add_exact("teleported-cnot-all-branches-seen",
                  seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1], 1);

    // Random entangled inputs: full state map equals CNOT on (control, target).
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        StateVector in = random_state(2, rng);  // in.amp[c + 2*d]
        StateVector st = StateVector::zero_state(4);
        st.amp[0] = 0;
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) st.amp[in_idx(c, d)] = in.amp[c + 2 * d];
        auto [mz, mx] = run_cnot_via_target_ancilla(st, rng);
        StateVector expect = StateVector::zero_state(4);
        expect.amp[0] = 0;
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d)
                add_with_x_eigen(expect, c + 2 * (mz == -1 ? 1 : 0) + 4 * (d ^ c), 3, mx,
                                 in.amp[c + 2 * d]);
        worst = std::max(worst, st.projective_distance(expect));
    }
    rep.add("teleported-cnot-random-states", worst, 0.0, 1e-12);

    // Dual orientation (intermediary controls, control state teleports).
    double worst_dual = 0;
    for (int t = 0; t < 20; ++t) {
        StateVector in = random_state(2, rng);  // in.amp[c + 2*d]
        StateVector st = StateVector::zero_state(4);
        st.amp[0] = 0;
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) st.amp[c + 8 * d] = in.amp[c + 2 * d];
        auto [mz, mx] = run_cnot_via_control_ancilla(st, 1, rng);
        StateVector expect = StateVector::zero_state(4);
        expect.amp[0] = 0;
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d)
                add_with_x_eigen(expect, (mz == -1 ? 1 : 0) + 4 * c + 8 * (d ^ c), 1, mx,
                                 in.amp[c + 2 * d]);
        worst_dual = std::max(worst_dual, st.projective_distance(expect));
    }
    rep.add("teleported-cnot-dual-orientation", worst_dual, 0.0, 1e-12);

    // One-control / three-target fan-out on six qubits.
    double worst_fan = 0;
    for (int t = 0; t < 10; ++t) {
        StateVector in = random_state(4, rng);  // in.amp[c + 2*t1 + 4*t2 + 8*t3]
        StateVector st = StateVector::zero_state(6);
        st.amp[0] = 0;
        for (int i = 0; i < 16; ++i) {
            int c = i & 1, ts = i >> 1;
            st.amp[c + 8 * ts] = in.amp[i];
        }
        auto [mz, mx] = run_cnot_via_control_ancilla(st, 3, rng);
        StateVector expect = StateVector::zero_state(6);
        expect.amp[0] = 0;
        for (int i = 0; i < 16; ++i) {
            int c = i & 1, ts = i >> 1;
            int flipped = c ? ts ^ 0b111 : ts;
            add_with_x_eigen(expect, (mz == -1 ? 1 : 0) + 4 * c + 8 * flipped, 1, mx, in.amp[i]);
        }
        worst_fan = std::max(worst_fan, st.projective_distance(expect));
    }
    rep.add("teleported-cnot-fanout-three-targets", worst_fan, 0.0, 1e-12);
    return rep;
}

VerifyReport verify_S_circuit(uint64_t seed) {
    VerifyReport rep;
    Rng rng(seed);

    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        StateVector in = random_state(1, rng);
        StateVector st = StateVector::zero_state(2);
        st.amp[0] = 0;
        double r = 1 / std::sqrt(2.0);
        // qubit 0 = psi, qubit 1 = ancilla (|0> + i|1>)/sqrt(2)
        st.amp[0b00] = r * in.amp[0];
        st.amp[0b10] = cd(0, r) * in.amp[0];
        st.amp[0b01] = r * in.amp[1];
        st.amp[0b11] = cd(0, r) * in.amp[1];
        run_s_circuit(st, 0, 1);
        StateVector expect = st;
        expect.amp[0b00] = r * in.amp[0];
        expect.amp[0b10] = cd(0, r) * in.amp[0];
        expect.amp[0b01] = r * cd(0, 1) * in.amp[1];
        expect.amp[0b11] = cd(0, r) * cd(0, 1) * in.amp[1];
        worst = std::max(worst, st.projective_distance(expect));
    }
    // Output factorizes as (S|psi>) (x) ancilla, ancilla unchanged.
    rep.add("phase-gate-circuit-random-inputs", worst, 0.0, 1e-12);

    // S-dagger is the same circuit with a Z byproduct: Z*S == S^-1.
    Mat2 sd = {1, 0, 0, cd(0, -1)};
    rep.add("phase-gate-dagger-is-z-s", max_diff(mul(kZ2, kS2), sd), 0.0, 1e-15);
    return rep;
}

VerifyReport verify_T_circuit(uint64_t seed) {
    VerifyReport rep;
    Rng rng(seed);

    const Mat2 kTd = {1, 0, 0, std::polar(1.0, -M_PI / 4)};
    const char* names[3] = {"plain", "z-byproduct", "x-byproduct"};
    // Expected output per (input byproduct, branch): rows of the outcome
    // table.  Branch index 0 is M_Z=+1, 1 is M_Z=-1.
    Mat2 expect_op[3][2] = {
        {kT2, mul(kX2, mul(kZ2, kT2))},
        {mul(kZ2, kT2), mul(kX2, kT2)},
        {mul(kX2, mul(kZ2, kT2)), kT2},
    };

    for (int v = 0; v < 3; ++v) {
        double worst[2] = {0, 0};
        bool seen[2] = {false, false};
        for (int t = 0; t < 60; ++t) {
            StateVector in = random_state(1, rng);
            cd a = in.amp[0], b = in.amp[1];
            if (v == 1) b = -b;                 // Z|psi>
            if (v == 2) std::swap(a, b);        // X|psi>
            StateVector st = phase_ancilla_state(M_PI / 4, a, b);
            int mz = run_teleport_rz(st, rng);
            // With an X byproduct on the input the readout sign is inverted,
            // so the software applies the recovery S on the opposite branch.
            bool apply_s = (v == 2) ? (mz == +1) : (mz == -1);
            if (apply_s) st.apply_s(0);
            int branch = mz == +1 ? 0 : 1;
            seen[branch] = true;
            Mat2 out = mul(expect_op[v][branch], Mat2{in.amp[0], 0, in.amp[1], 0});
            StateVector expect = product_state(2, 0, out[0], out[2]);
            if (mz == -1) expect.amp = {0, 0, expect.amp[0], expect.amp[1]};
            worst[branch] = std::max(worst[branch], st.projective_distance(expect));
        }
        std::string base = std::string("rotation-teleport-") + names[v];
        rep.add(base + "-branch-pos", worst[0], 0.0, 1e-12);
        rep.add(base + "-branch-neg", worst[1], 0.0, 1e-12);
        rep.add_exact(base + "-both-branches-seen", seen[0] && seen[1], 1);
    }

    // Commutation rules as matrix identities: S Z = Z S and S X = Z X S
    // (up to phase); the recovery chains behind the outcome table.
    rep.add("phase-commute-z", max_diff(mul(kS2, kZ2), mul(kZ2, kS2)), 0.0, 1e-15);
    rep.add("phase-commute-x", phase_diff(mul(kS2, kX2), mul(kZ2, mul(kX2, kS2))), 0.0, 1e-15);
    rep.add("recovery-z-input",
            phase_diff(mul(kS2, mul(kX2, mul(kTd, kZ2))), mul(kX2, kT2)), 0.0, 1e-15);
    rep.add("recovery-x-input", phase_diff(mul(kS2, mul(kX2, kTd)), mul(kX2, mul(kZ2, kT2))),
            0.0, 1e-15);
    return rep;
}

VerifyReport verify_gate_identities() {
    VerifyReport rep;
    rep.add("identity-t-squared-is-s", max_diff(mul(kT2, kT2), kS2), 0.0, 1e-15);
    rep.add("identity-s-squared-is-z", max_diff(mul(kS2, kS2), kZ2), 0.0, 1e-15);
    Mat2 s4 = mul(mul(kS2, kS2), mul(kS2, kS2));
    rep.add("identity-s-fourth-is-i", max_diff(s4, kI2), 0.0, 1e-15);
    rep.add("identity-hzh-is-x", max_diff(mul(kH2, mul(kZ2, kH2)), kX2), 0.0, 1e-12);
    Mat2 t7 = kI2;
    for (int i = 0; i < 7; ++i) t7 = mul(t7, kT2);
    const Mat2 kTd = {1, 0, 0, std::polar(1.0, -M_PI / 4)};
    rep.add("identity-t-seventh-is-t-dagger", max_diff(t7, kTd), 0.0, 1e-12);
    rep.add("identity-t-is-s-t-dagger", phase_diff(kT2, mul(kS2, kTd)), 0.0, 1e-12);
    rep.add("identity-t-dagger-is-z-s-t", phase_diff(kTd, mul(kZ2, mul(kS2, kT2))), 0.0, 1e-12);
    return rep;
}

VerifyReport verify_ancilla_sign_tables(uint64_t seed) {
    VerifyReport rep;
    Rng rng(seed);

    // Phase-gate consumption: ancilla |0> + e^{i theta}|1> teleports the
    // rotation onto |psi>, then M'_X reads the result.  With psi chosen so
    // S|psi> is a +1 X eigenstate, every deterministic table cell fixes
    // M'_X as a function of M'_Z.
    {
        // psi = S^dagger |+>: amplitudes (1, -i)/sqrt(2).
        cd a = 1 / std::sqrt(2.0), b = cd(0, -1) / std::sqrt(2.0);
        struct Case {
            const char* id;
            double theta;
            int sign_pos, sign_neg;  // expected M'_X at M'_Z = +1 / -1
        } cases[] = {
            {"s-ancilla-clean", M_PI / 2, +1, -1},
            {"s-ancilla-z-error", -M_PI / 2, -1, +1},
            {"s-ancilla-x-error", -M_PI / 2, -1, +1},
            {"s-ancilla-y-error", M_PI / 2, +1, -1},
        };
        for (const auto& c : cases) {
            int bad = 0;
            bool seen[2] = {false, false};
            for (int t = 0; t < 40; ++t) {
                StateVector st = phase_ancilla_state(c.theta, a, b);
                int mz = run_teleport_rz(st, rng);
                int mx = st.measure_x(0, rng);
                seen[mz == +1 ? 0 : 1] = true;
                if (mx != (mz == +1 ? c.sign_pos : c.sign_neg)) ++bad;
            }
            rep.add_exact(c.id, bad == 0 && seen[0] && seen[1], 1);
        }
        // Product rule: M_X[S|psi>] = M'_X * M'_Z for the clean ancilla.
        int bad = 0;
        for (int t = 0; t < 40; ++t) {
            StateVector st = phase_ancilla_state(M_PI / 2, a, b);
            int mz = run_teleport_rz(st, rng);
            int mx = st.measure_x(0, rng);
            if (mx * mz != +1) ++bad;
        }
        rep.add_exact("s-ancilla-product-rule", bad, 0);
    }

    // pi/8-gate consumption: same teleportation, recovery S on the M'_Z=+1
    // branch, then M'_X.  psi = T|+> so T^dagger|psi> is a +1 X eigenstate.
    {
        cd a = 1 / std::sqrt(2.0), b = std::polar(1 / std::sqrt(2.0), M_PI / 4);
        auto run = [&](double theta) {
            StateVector st = phase_ancilla_state(theta, a, b);
            int mz = run_teleport_rz(st, rng);
            if (mz == +1) st.apply_s(0);
            int mx = st.measure_x(0, rng);
            return std::pair<int, int>(mz, mx);
        };
        struct Case {
            const char* id;
            double theta;
            int sign_pos, sign_neg;
        } det_cases[] = {
            {"t-ancilla-clean", M_PI / 4, -1, +1},
            {"t-ancilla-z-error", -3 * M_PI / 4, +1, -1},
        };
        for (const auto& c : det_cases) {
            int bad = 0;
            bool seen[2] = {false, false};
            for (int t = 0; t < 40; ++t) {
                auto [mz, mx] = run(c.theta);
                seen[mz == +1 ? 0 : 1] = true;
                if (mx != (mz == +1 ? c.sign_pos : c.sign_neg)) ++bad;
            }
            rep.add_exact(c.id, bad == 0 && seen[0] && seen[1], 1);
        }
        // Product rule for the clean ancilla: M_X[T^dagger|psi>] = -M'_X M'_Z.
        int bad = 0;
        for (int t = 0; t < 40; ++t) {
            auto [mz, mx] = run(M_PI / 4);
            if (-mx * mz != +1) ++bad;
        }
        rep.add_exact("t-ancilla-product-rule", bad, 0);

        // X and Y ancilla errors give half-half outcomes in every branch.
        const int kShots = 10000;
        struct Half {
            const char* id;
            double theta;
        } half_cases[] = {
            {"t-ancilla-x-error-balance", -M_PI / 4},
            {"t-ancilla-y-error-balance", 3 * M_PI / 4},
        };
        for (const auto& c : half_cases) {
            long long sum[2] = {0, 0}, cnt[2] = {0, 0};
            for (int t = 0; t < kShots; ++t) {
                auto [mz, mx] = run(c.theta);
                int br = mz == +1 ? 0 : 1;
                sum[br] += mx;
                ++cnt[br];
            }
            // 3-sigma bound on each branch mean of +-1 outcomes.
            double worst = 0;
            double bound = 0;
            for (int br = 0; br < 2; ++br) {
                worst = std::max(worst, std::abs(double(sum[br]) / double(cnt[br])));
                bound = std::max(bound, 3.0 / std::sqrt(double(cnt[br])));
            }
            rep.add(c.id, worst, 0.0, bound);
        }
    }
    return rep;
}

CodeSpec steane7() {
    return {"steane-7", 7, {{3, 4, 5, 6}, {2, 5, 6, 7}, {1, 4, 6, 7}}, {1, 2, 3, 4, 5, 6, 7}};
}

CodeSpec reed_muller15() {
    return {"reed-muller-15",
            15,
            {{4, 5, 6, 7, 8, 9, 10, 11},
             {1, 2, 3, 4, 5, 6, 7, 15},
             {2, 3, 4, 5, 10, 11, 12, 13},
             {1, 2, 5, 6, 9, 10, 13, 14}},
            {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}};
}

namespace {

uint32_t set_mask(const std::vector<int>& qubits) {
    uint32_t m = 0;
    for (int q : qubits) m |= 1u << (q - 1);
    return m;
}

bool undetected(const CodeSpec& code, uint32_t err, const std::vector<uint32_t>& stab_masks) {
    (void)code;
    for (uint32_t s : stab_masks)
        if (__builtin_popcount(err & s) % 2) return false;
    return true;
}

}  // namespace

long long distillation_error_count(const CodeSpec& code, int weight) {
    std::vector<uint32_t> stab_masks;
    for (const auto& s : code.x_stabilizers) stab_masks.push_back(set_mask(s));
    uint32_t logical = set_mask(code.logical_rep);
    long long count = 0;
    for (uint32_t err = 0; err < (1u << code.n); ++err) {
        if (__builtin_popcount(err) != weight) continue;
        if (!undetected(code, err, stab_masks)) continue;
        if (__builtin_popcount(err & logical) % 2) ++count;
    }
    return count;
}

double distillation_success_rate(const CodeSpec& code, double p) {
    // Every single error flips at least one stabilizer for these codes, so
    // the leading-order acceptance is 1 - n*p.
    return 1.0 - code.n * p;
}

double distillation_success_monte_carlo(const CodeSpec& code, double p, long long shots,
                                        uint64_t seed) {
    std::vector<uint32_t> stab_masks;
    for (const auto& s : code.x_stabilizers) stab_masks.push_back(set_mask(s));
    Rng rng(seed);
    long long accepted = 0;
    for (long long s = 0; s < shots; ++s) {
        uint32_t err = 0;
        for (int q = 0; q < code.n; ++q)
            if (rng.bernoulli(p)) err |= 1u << q;
        bool ok = true;
        for (uint32_t m : stab_masks)
            if (__builtin_popcount(err & m) % 2) ok = false;
        if (ok) ++accepted;
    }
    return double(accepted) / double(shots);
}

VerifyReport verify_gates_all(uint64_t seed) {
    VerifyReport rep;
    rep.merge(verify_two_qubit_stabilizer(derive_seed(seed, 1)));
    rep.merge(verify_cnot_heisenberg());
    rep.merge(verify_same_type_cnot(derive_seed(seed, 2)));
    rep.merge(verify_S_circuit(derive_seed(seed, 3)));
    rep.merge(verify_T_circuit(derive_seed(seed, 4)));
    rep.merge(verify_gate_identities());
    rep.merge(verify_ancilla_sign_tables(derive_seed(seed, 5)));

    VerifyReport dist;
    dist.add_exact("distill-7-undetected-weight3", distillation_error_count(steane7(), 3), 7);
    dist.add_exact("distill-15-undetected-weight3",
                   distillation_error_count(reed_muller15(), 3), 35);
    dist.add_exact("distill-7-undetected-weight1", distillation_error_count(steane7(), 1), 0);
    dist.add_exact("distill-15-undetected-weight1",
                   distillation_error_count(reed_muller15(), 1), 0);
    rep.merge(dist);
    return rep;
}

}  // namespace qsurf
