#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qsurf/statevec.h"

namespace qsurf {

// Machine-readable verification report: one line per check,
// "PASS|FAIL <check-id> <measured> <expected> <tol>".
struct VerifyReport {
    std::vector<std::string> lines;
    bool all_pass = true;

    void add(const std::string& id, double measured, double expected, double tol);
    void add_exact(const std::string& id, long long measured, long long expected);
    void merge(const VerifyReport& other);
    std::string text() const;
};

// Joint two-qubit X- and Z-parity measurement circuit: two data qubits, one
// X-check ancilla coupled first, one Z-check ancilla coupled last.  Checks
// the Bell-basis projection probabilities, outcome reproducibility on
// re-measurement, and that the interleaved (wrong) coupling order destroys
// reproducibility.
VerifyReport verify_two_qubit_stabilizer(uint64_t seed);

// CNOT conjugation identities on 4x4 matrices: the four defining relations,
// the two derived mixed relations, and closure over all 16 Pauli pairs.
VerifyReport verify_cnot_heisenberg();

// Measurement-based CNOT constructions that work entirely through an
// opposite-type intermediary: the 4-qubit single-target circuits (both
// orientations) and the 6-qubit one-control/three-target fan-out, with
// classically conditioned X/Z corrections.
VerifyReport verify_same_type_cnot(uint64_t seed);

// Deterministic S gate from a +i-phase ancilla via CNOT/H/CNOT/H; ancilla is
// returned unchanged, and the same circuit realizes S-dagger up to a Z
// byproduct.
VerifyReport verify_S_circuit(uint64_t seed);

// Probabilistic T gate from a pi/4-phase ancilla: both measurement branches,
// the conditional-S recovery, byproduct commutation rules, and all six
// outcome-table rows for inputs |psi>, Z|psi>, X|psi>.
VerifyReport verify_T_circuit(uint64_t seed);

// Single-qubit gate identities checked as 2x2 matrices.
VerifyReport verify_gate_identities();

// Expanded ancilla-consumption sub-circuits (gate teleportation followed by
// an X measurement): sign tables for clean and corrupted ancilla states,
// including the probabilistic entries checked statistically.
VerifyReport verify_ancilla_sign_tables(uint64_t seed);

// CSS code data for distillation counting, qubit indices 1-based.
struct CodeSpec {
    std::string name;
    int n = 0;
    std::vector<std::vector<int>> x_stabilizers;
    std::vector<int> logical_rep;
};
CodeSpec steane7();
CodeSpec reed_muller15();

// Number of weight-w error subsets with trivial syndrome on every listed
// stabilizer and flipped logical parity (undetected harmful patterns).
long long distillation_error_count(const CodeSpec& code, int weight);

// Leading-order acceptance probability 1 - n*p (every single error is
// detected for these codes).
double distillation_success_rate(const CodeSpec& code, double p);

// Monte Carlo acceptance estimate: i.i.d. per-qubit errors at rate p,
// accept iff the syndrome is trivial.
double distillation_success_monte_carlo(const CodeSpec& code, double p, long long shots,
                                        uint64_t seed);

// Every gate-construction report in one pass.
VerifyReport verify_gates_all(uint64_t seed);

}  // namespace qsurf
