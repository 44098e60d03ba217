#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qsurf/lattice.h"
#include "qsurf/rng.h"

namespace qsurf {

// Per-step error rates of the three error classes:
//   class 0: data-qubit idle depolarization, X/Y/Z each p0/3 per idle step
//            (four idle steps per cycle for a bulk data qubit);
//   class 1: measure-qubit init flip (p1), Hadamard-adjoined X/Y/Z (p1/3
//            each), and measurement readout flip (p1) - four opportunities
//            per cycle on measure-X qubits, two on measure-Z (their two idle
//            steps inject nothing);
//   class 2: one of the 15 non-identity two-qubit Paulis, p2/15 each, after
//            every CNOT.
struct ErrorModel {
    double p0 = 0, p1 = 0, p2 = 0;
    static ErrorModel uniform(double p) { return {p, p, p}; }
};

// Classical record of accumulated X/Z flips per grid site.
struct PauliFrame {
    std::vector<uint8_t> x, z;
    void resize(size_t n) {
        x.assign(n, 0);
        z.assign(n, 0);
    }
};

// Measure-qubit outcomes per round, stored relative to the error-free
// reference run (bit 1 = outcome differs from the reference).
struct SyndromeRecord {
    int rounds = 0;
    int n_meas = 0;                // active stabilizer count
    std::vector<uint8_t> outcomes;  // rounds x n_meas
    uint8_t at(int round, int m) const { return outcomes[size_t(round) * n_meas + m]; }
};

struct DetectionEvent {
    Coord measure_coord;
    int round = 0;
    Pauli kind = Pauli::Z;  // stabilizer type that fired
    auto operator<=>(const DetectionEvent&) const = default;
};

// Precomputed simulation schedule for one layout (reused across shots).
struct CycleSimContext {
    const ArrayLayout* layout = nullptr;
    int n_sites = 0;
    std::vector<int> data_ids;                // active data qubits
    std::vector<int> measure_ids;             // one per active stabilizer
    std::vector<Pauli> measure_kind;          // parallel to measure_ids
    std::vector<Coord> measure_coord;         // parallel to measure_ids
    // CNOT schedule: four steps, each a list of (data id, measure id, is_z).
    struct Gate {
        int data, meas;
        bool z_kind;
    };
    std::vector<Gate> steps[4];
    // Per data qubit: bitmask of CNOT steps in which it is idle.
    std::vector<uint8_t> data_idle_mask;  // parallel to data_ids

    explicit CycleSimContext(const ArrayLayout& l);
};

struct ShotRecord {
    SyndromeRecord record;
    PauliFrame frame;  // data-qubit truth at the end of the run
};

// Simulate `rounds` noisy cycles (plus, when noiseless_final is set, one
// perfect readout round appended to the record) with the per-shot seed.
ShotRecord run_rounds(const CycleSimContext& ctx, const ErrorModel& model, int rounds,
                      uint64_t seed, bool noiseless_final = false);

// Convenience overload building a context on the fly.
ShotRecord run_rounds(const ArrayLayout& layout, const ErrorModel& model, int rounds,
                      uint64_t seed, bool noiseless_final = false);

// XOR of consecutive rounds per measure qubit (round 0 against the zero
// reference).
std::vector<DetectionEvent> detection_events(const CycleSimContext& ctx,
                                             const SyndromeRecord& record);

// CSV dump: header "shot,round,row,col,kind".
std::string events_csv(const std::vector<std::pair<int, std::vector<DetectionEvent>>>& shots);

}  // namespace qsurf
