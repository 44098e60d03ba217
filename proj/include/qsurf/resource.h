#pragma once
#include <string>
#include <utility>

namespace qsurf {

// Inputs of the factoring-machine footprint model.
struct FactoringParams {
    long long N = 2000;        // key size in bits
    double t_M = 100e-9;       // measurement time, seconds
    double cycle_time = 200e-9;  // surface-code cycle time, seconds
    double p = 1e-3;           // per-step physical error rate
    double p_I = 0.005;        // state-injection error rate
    // When set, code distances come from the closed-form budget inequalities
    // instead of the published operating-point anchors (see select_distance).
    bool formula_distances = false;
};

struct DistillationChain {
    double p_I = 0, p_1 = 0, p_2 = 0;  // per-stage ancilla error rates
    int d_1 = 0, d_2 = 0;              // per-stage code distances
};

struct ResourceReport {
    double exec_time = 0;        // seconds
    double a_state_count = 0;    // ancilla states consumed
    double P_A = 0;              // per-state error budget
    DistillationChain chain;
    long long q_d1 = 0, q_d2 = 0;      // physical qubits per logical qubit
    long long factory_qubits = 0;      // per factory
    long long factory_cycles = 0;      // per two output states
    long long factories = 0;
    double computational_qubits = 0;
    double total_qubits = 0;
    double computational_share = 0;    // fraction of the total
};

// Total exponentiation time, 120 * N^3 * t_M.
double exec_time(const FactoringParams& p);

// Ancilla budget: count = 280 * N^3, per-state budget P_A = 1/count.
std::pair<double, double> a_state_budget(long long N);

// Physical qubits per logical qubit with hole spacing and operating margin,
// 2.5 * 1.25 * (2d)^2, rounded to the nearest 50.
long long qubits_per_logical_spaced(int d);

// Smallest d whose stage budget inequality holds:
//   stage 2: multiplier * d * P_L(p, d) < target
//   stage 1: 35 * (multiplier * d * P_L(p, d))^3 < target  (cubed=true)
// using the closed-form P_L of the analysis module.
int select_distance(double p, double target_rate, double multiplier, bool cubed);

// Two-stage distillation chain.  By default the distances are the published
// operating-point anchors (d1=17, d2=34 at p=1e-3; d1=8, d2=16 at p=1e-4);
// with formula_distances the budget inequalities above are solved instead
// (they land at larger distances).
DistillationChain build_chain(const FactoringParams& params);

// Stage footprints and timing: factory qubits = 240 * q(d1); cycles =
// 10*d1 + 10*d2 per block of two output states.
struct FactoryFigures {
    long long qubits = 0;
    long long stage1_cycles = 0, stage2_cycles = 0;
    double states_per_second = 0;
};
FactoryFigures factory_report(const FactoringParams& params, const DistillationChain& chain);

ResourceReport total_report(const FactoringParams& params);

// Table of circuit trade-offs: (logical qubits, sequential Toffolis, total
// Toffolis) as strings; rows 3-4 are symbolic big-O forms.
struct TradeoffRow {
    std::string logical_qubits, sequential_toffolis, total_toffolis;
    double logical_qubits_value = 0, sequential_value = 0;  // rows 1-2 only
};
TradeoffRow table1_tradeoffs(long long N, int row);

// Plain `key = value` rendering for machine diffing.
std::string render_report(const ResourceReport& r);

}  // namespace qsurf
