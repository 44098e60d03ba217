#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qsurf/cycle_sim.h"

namespace qsurf {

// One Monte Carlo measurement: logical-X failure rate per surface-code cycle
// at distance d and per-step rate p, with a Wilson 95% interval.
struct RatePoint {
    int d = 0;
    double p = 0;
    long long shots = 0;
    long long failures = 0;
    double P_L = 0;
    double ci_lo = 0, ci_hi = 0;
};

struct ScalingFit {
    int d_e = 0;          // error dimension of the largest fitted distance
    double slope = 0;     // least-squares exponent of log P_L vs log p
    double p_th_estimate = 0;
};

// Error-suppression exponent: (d+1)/2 for odd d, d/2 (rounded down) for even.
int error_dimension(int d);

// Closed-form logical rate per cycle, 0.03 * (p / 0.0057)^{d_e}.
double empirical_PL(double p, int d);

// Combinatorial odd-d model: d * d! / ((d_e-1)! d_e!) * (8p)^{d_e}.
double statistical_PL(double p, int d);

// Per-class closed form, (p_j / p_th_j)^{d_e} * 0.03, with class thresholds
// 0.043 (class 0), 0.12 (class 1), 0.0125 (class 2).
double class_PL(double p_j, int error_class, int d);

// Physical qubits per logical qubit on a planar array, (2d-1)^2.
long long qubits_per_logical(int d);

// Wilson 95% interval for a binomial proportion.
std::pair<double, double> wilson_interval(long long failures, long long shots);

// Normalize raw counts into a RatePoint (per-cycle rates: divide by d).
RatePoint make_rate_point(int d, double p, long long shots, long long failures);

// Crossing of the two largest distances (log-linear interpolation in log p)
// plus the sub-threshold slope of the largest distance.  Requires >= 2
// distances and >= 4 p values; throws if the curves never cross.
ScalingFit estimate_threshold(const std::vector<RatePoint>& points);

// Least-squares slope of log P_L vs log p over the given distance's points
// restricted to [p_lo, p_hi] (zero-failure points are skipped).
double fit_slope(const std::vector<RatePoint>& points, int d, double p_lo, double p_hi);

// CSV rows "d,p,shots,failures,P_L,ci_lo,ci_hi" with header.
std::string rate_points_csv(const std::vector<RatePoint>& points);

// Monte Carlo harness: runs of d noisy rounds plus one perfect readout round,
// counting logical-X failures.  Deterministic in (master_seed) regardless of
// the thread count: shot s always uses derive_seed(master_seed, s).
RatePoint measure_logical_rate(int d, const ErrorModel& model, double p_label, long long shots,
                               uint64_t master_seed, int threads = 1);

}  // namespace qsurf
