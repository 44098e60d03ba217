// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Heavy Monte Carlo criteria stream progress to standard error.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qsurf/analysis.h"
#include "qsurf/cli.h"
#include "qsurf/decoder.h"
#include "qsurf/gate_verify.h"
#include "qsurf/resource.h"
#include "qsurf/rng.h"

using namespace qsurf;

namespace {

bool g_all = true;

void report(int n, bool ok, const std::string& detail) {
    std::printf("%s criterion-%d %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    g_all = g_all && ok;
}

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
    std::ostringstream o;
    o.precision(4);
    o << v;
    return o.str();
}

bool within(double value, double reference, double rel) {
    return std::abs(value - reference) <= rel * std::abs(reference);
}

// Monte Carlo sweep; cls < 0 enables all three error classes, otherwise the
// given class alone carries rate p.
std::vector<RatePoint> sweep(const std::vector<int>& ds, const std::vector<double>& ps, int cls,
                             long long shots, uint64_t seed) {
    std::vector<RatePoint> pts;
    int idx = 0;
    for (int d : ds) {
        for (double p : ps) {
            ErrorModel m{0, 0, 0};
            if (cls < 0)
                m = ErrorModel::uniform(p);
            else
                (cls == 0 ? m.p0 : cls == 1 ? m.p1 : m.p2) = p;
            std::fprintf(stderr, "  sweep cls=%d d=%d p=%g shots=%lld\n", cls, d, p,
                         (long long)shots);
            pts.push_back(measure_logical_rate(d, m, p, shots, derive_seed(seed, idx++), 1));
        }
    }
    return pts;
}

// ---- criteria 1 & 2: threshold crossing and scaling exponents ----

void criteria_threshold_and_slope() {
    const long long shots = 100000;
    std::vector<int> ds = {3, 5, 7};

    std::vector<double> grid = {0.002, 0.004, 0.005, 0.006, 0.007, 0.008, 0.010, 0.012};
    auto pts = sweep(ds, grid, -1, shots, 101);
    bool ok1 = false;
    std::string d1;
    try {
        ScalingFit fit = estimate_threshold(pts);
        ok1 = fit.p_th_estimate >= 0.004 && fit.p_th_estimate <= 0.008;
        d1 = "crossing=" + fmt(fit.p_th_estimate) + " window=[0.004,0.008] shots=100000";
    } catch (const std::exception& e) {
        d1 = std::string("crossing=unavailable (") + e.what() + ")";
    }
    report(1, ok1, d1);

    std::vector<double> sub = {0.0012, 0.0016, 0.0020, 0.0024, 0.0028};
    auto low = sweep(ds, sub, -1, shots, 202);
    bool ok2 = true;
    std::string d2 = "slopes";
    for (int d : ds) {
        double slope = fit_slope(low, d, 0.00114, 0.00285);
        double expect = error_dimension(d);
        ok2 = ok2 && std::abs(slope - expect) <= 0.5;
        d2 += " d" + std::to_string(d) + "=" + fmt(slope) + "(exp=" + fmt(expect) + ")";
    }
    report(2, ok2, d2 + " tol=0.5");
}

// ---- criterion 3: class-isolated thresholds and their ordering ----

void criterion_class_thresholds() {
    // Classes 2 and 0 cross within simulable rates; the d=5/d=7 pair keeps
    // the finite-size offset small.  Class-1 noise saturates (repeated flips
    // on the same measurement qubit compose toward a capped effective rate)
    // before its curves ever cross, so its threshold is established as a
    // strict lower bound: at p1 = 0.12 the distance-5 curve must still beat
    // distance-3 with non-overlapping 95% intervals.
    const long long shots = 10000;
    std::vector<int> ds = {5, 7};
    struct ClassRun {
        int cls;
        std::vector<double> ps;
        double lo, hi;  // acceptance window
    } runs[] = {
        {2, {0.008, 0.0105, 0.0125, 0.0145, 0.017}, 0.008, 0.017},
        {0, {0.030, 0.037, 0.043, 0.049, 0.055}, 0.03, 0.055},
    };
    double crossing[3] = {0, 0, 0};
    bool ok = true;
    std::string detail;
    for (const auto& r : runs) {
        std::string label = "p_th(" + std::to_string(r.cls) + ")";
        try {
            auto pts = sweep(ds, r.ps, r.cls, shots, 300 + r.cls);
            ScalingFit fit = estimate_threshold(pts);
            crossing[r.cls] = fit.p_th_estimate;
            ok = ok && fit.p_th_estimate >= r.lo && fit.p_th_estimate <= r.hi;
            detail += label + "=" + fmt(fit.p_th_estimate) + " ";
        } catch (const std::exception& e) {
            ok = false;
            detail += label + "=unavailable ";
        }
    }
    const double p1_bound = 0.12;
    auto c1 = sweep({3, 5}, {p1_bound}, 1, 40000, 301);
    bool class1_sub = c1[1].ci_hi < c1[0].ci_lo;  // d=5 strictly below d=3
    detail += "p_th(1)>" + fmt(p1_bound) + "(P3=" + fmt(c1[0].P_L) + ",P5=" + fmt(c1[1].P_L) +
              ") ";
    bool ordered = crossing[2] < crossing[0] && crossing[0] < p1_bound && class1_sub;
    ok = ok && ordered;
    detail += ordered ? "ordering=2<0<1" : "ordering=violated";
    report(3, ok, detail);
}

// ---- criterion 4: combinatorial closed form vs Monte Carlo ----

void criterion_statistical_model() {
    double closed = statistical_PL(1e-3, 3);
    bool exact = within(closed, 5.76e-4, 1e-12);

    const long long shots = 400000;
    std::fprintf(stderr, "  statistical-model MC d=3 p=1e-3 shots=%lld\n", (long long)shots);
    RatePoint mc = measure_logical_rate(3, ErrorModel::uniform(1e-3), 1e-3, shots, 404, 1);
    double ratio = mc.P_L / closed;
    bool factor4 = mc.failures > 0 && ratio >= 0.25 && ratio <= 4.0;
    report(4, exact && factor4,
           "closed_form=" + fmt(closed) + " mc=" + fmt(mc.P_L) + " ratio=" + fmt(ratio) +
               " window=[0.25,4]");
}

// ---- criterion 5: decoder correctness ----

struct FaultPlan {
    struct DataFault {
        Coord q;
        Pauli p;
        int from_round;
    };
    std::vector<DataFault> data;
    std::vector<std::pair<int, Coord>> meas_flips;
};

ShotRecord make_shot(const ArrayLayout& l, const CycleSimContext& ctx, const FaultPlan& plan,
                     int rounds) {
    ShotRecord shot;
    shot.record.rounds = rounds + 1;
    shot.record.n_meas = int(ctx.measure_ids.size());
    shot.record.outcomes.assign(size_t(shot.record.rounds) * shot.record.n_meas, 0);
    shot.frame.resize(size_t(l.nrows) * l.ncols);
    for (const auto& f : plan.data) {
        if (f.p == Pauli::X || f.p == Pauli::Y) shot.frame.x[l.qubit_id(f.q)] ^= 1;
        if (f.p == Pauli::Z || f.p == Pauli::Y) shot.frame.z[l.qubit_id(f.q)] ^= 1;
    }
    int m = 0;
    for (const auto& st : l.stabilizers) {
        if (!st.active) continue;
        for (int t = 0; t < shot.record.rounds; ++t) {
            uint8_t bit = 0;
            for (const auto& f : plan.data) {
                if (f.from_round > t) continue;
                bool flips = st.kind == Pauli::Z ? (f.p == Pauli::X || f.p == Pauli::Y)
                                                 : (f.p == Pauli::Z || f.p == Pauli::Y);
                if (!flips) continue;
                for (const auto& nb : st.neighbors)
                    if (nb == f.q) bit ^= 1;
            }
            shot.record.outcomes[size_t(t) * shot.record.n_meas + m] = bit;
        }
        ++m;
    }
    for (const auto& [t, site] : plan.meas_flips) {
        for (size_t i = 0; i < ctx.measure_coord.size(); ++i)
            if (ctx.measure_coord[i] == site)
                shot.record.outcomes[size_t(t) * shot.record.n_meas + i] ^= 1;
    }
    return shot;
}

// Noiseless cycle run with one fault injected at an exact intra-cycle
// timing: a two-qubit Pauli after a chosen CNOT, or a single-qubit Pauli on
// any site at a chosen step boundary.
struct TimedFault {
    bool two_qubit;
    int round, step, gate;     // CNOT slot for two-qubit faults
    int q, boundary;           // site and boundary (0..8) for single faults
    int pauli;                 // 1..15 two-qubit, 1..3 single
};

ShotRecord run_with_fault(const CycleSimContext& ctx, int rounds, const TimedFault& inj) {
    auto apply1 = [](PauliFrame& f, int q, int r) {
        if (r == 1 || r == 2) f.x[q] ^= 1;
        if (r == 2 || r == 3) f.z[q] ^= 1;
    };
    ShotRecord shot;
    shot.record.rounds = rounds + 1;
    shot.record.n_meas = int(ctx.measure_ids.size());
    shot.record.outcomes.assign(size_t(shot.record.rounds) * shot.record.n_meas, 0);
    PauliFrame& f = shot.frame;
    f.resize(ctx.n_sites);
    for (int t = 0; t < shot.record.rounds; ++t) {
        auto single = [&](int b) {
            if (!inj.two_qubit && t == inj.round && b == inj.boundary) apply1(f, inj.q, inj.pauli);
        };
        single(0);
        for (int m : ctx.measure_ids) f.x[m] = f.z[m] = 0;
        single(1);
        for (size_t i = 0; i < ctx.measure_ids.size(); ++i)
            if (ctx.measure_kind[i] == Pauli::X)
                std::swap(f.x[ctx.measure_ids[i]], f.z[ctx.measure_ids[i]]);
        single(2);
        for (int k = 0; k < 4; ++k) {
            for (size_t gi = 0; gi < ctx.steps[k].size(); ++gi) {
                const auto& g = ctx.steps[k][gi];
                if (g.z_kind) {
                    f.x[g.meas] ^= f.x[g.data];
                    f.z[g.data] ^= f.z[g.meas];
                } else {
                    f.x[g.data] ^= f.x[g.meas];
                    f.z[g.meas] ^= f.z[g.data];
                }
                if (inj.two_qubit && t == inj.round && k == inj.step && int(gi) == inj.gate) {
                    apply1(f, g.z_kind ? g.data : g.meas, inj.pauli >> 2);
                    apply1(f, g.z_kind ? g.meas : g.data, inj.pauli & 3);
                }
            }
            single(3 + k);
        }
        for (size_t i = 0; i < ctx.measure_ids.size(); ++i)
            if (ctx.measure_kind[i] == Pauli::X)
                std::swap(f.x[ctx.measure_ids[i]], f.z[ctx.measure_ids[i]]);
        single(7);
        for (size_t i = 0; i < ctx.measure_ids.size(); ++i)
            shot.record.outcomes[size_t(t) * shot.record.n_meas + i] = f.x[ctx.measure_ids[i]];
        single(8);
    }
    return shot;
}

void criterion_decoder() {
    double t0 = now_s();
    auto l = build_planar(3);
    CycleSimContext ctx(l);

    int fault_cases = 0, fault_failures = 0;
    // Every two-qubit Pauli after every CNOT of every round, and every
    // single-qubit Pauli on every active site at every intra-cycle boundary.
    for (int t = 0; t < 3; ++t) {
        for (int k = 0; k < 4; ++k)
            for (size_t gi = 0; gi < ctx.steps[k].size(); ++gi)
                for (int r = 1; r <= 15; ++r) {
                    auto shot = run_with_fault(ctx, 3, {true, t, k, int(gi), 0, 0, r});
                    ++fault_cases;
                    if (decode_and_judge(l, ctx, shot.record, shot.frame) !=
                        DecodeOutcome::Success)
                        ++fault_failures;
                }
        for (int b = 0; b <= 8; ++b)
            for (const auto& s : l.sites) {
                if (!s.active) continue;
                for (int r = 1; r <= 3; ++r) {
                    auto shot =
                        run_with_fault(ctx, 3, {false, t, 0, 0, l.qubit_id(s.coord), b, r});
                    ++fault_cases;
                    if (decode_and_judge(l, ctx, shot.record, shot.frame) !=
                        DecodeOutcome::Success)
                        ++fault_failures;
                }
            }
    }
    for (const auto& s : l.sites) {
        if (s.role != Role::Data) continue;
        for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Y}) {
            for (int t = 0; t < 3; ++t) {
                FaultPlan plan;
                plan.data.push_back({s.coord, p, t});
                auto shot = make_shot(l, ctx, plan, 3);
                ++fault_cases;
                if (decode_and_judge(l, ctx, shot.record, shot.frame) != DecodeOutcome::Success)
                    ++fault_failures;
            }
        }
    }
    for (size_t i = 0; i < ctx.measure_coord.size(); ++i) {
        for (int t = 0; t < 3; ++t) {
            FaultPlan plan;
            plan.meas_flips.push_back({t, ctx.measure_coord[i]});
            auto shot = make_shot(l, ctx, plan, 3);
            ++fault_cases;
            if (decode_and_judge(l, ctx, shot.record, shot.frame) != DecodeOutcome::Success)
                ++fault_failures;
        }
    }

    // Dual-route check: exact matcher vs the exhaustive oracle.
    Rng rng(505);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        MatchingGraph g;
        g.n = 2 + int(rng.uniform_int(9));
        g.nodes.assign(g.n, {{0, 0}, 0});
        g.weights.assign(size_t(g.n) * g.n, 0);
        g.bweight.resize(g.n);
        g.bside.resize(g.n);
        for (int u = 0; u < g.n; ++u) {
            g.bweight[u] = 1 + int(rng.uniform_int(8));
            g.bside[u] = int(rng.uniform_int(2));
            for (int v = u + 1; v < g.n; ++v) {
                int w = rng.uniform() < 0.15 ? MatchingGraph::PRUNED : 1 + int(rng.uniform_int(20));
                g.weights[size_t(u) * g.n + v] = g.weights[size_t(v) * g.n + u] = w;
            }
        }
        if (mwpm(g).total_weight != brute_force_match(g).total_weight) ++mismatches;
    }
    double elapsed = now_s() - t0;
    bool ok = fault_failures == 0 && mismatches == 0 && elapsed <= 120.0;
    report(5, ok,
           "single_faults=" + std::to_string(fault_cases) + " failures=" +
               std::to_string(fault_failures) + " graph_mismatches=" +
               std::to_string(mismatches) + "/1000 runtime=" + fmt(elapsed) + "s limit=120s");
}

// ---- criterion 6: exact gate algebra ----

void criterion_gates() {
    VerifyReport rep = verify_gates_all(2026);
    int fails = 0;
    for (const auto& line : rep.lines)
        if (line.rfind("PASS", 0) != 0) {
            ++fails;
            std::fprintf(stderr, "  %s\n", line.c_str());
        }
    report(6, rep.all_pass,
           "checks=" + std::to_string(rep.lines.size()) + " failed=" + std::to_string(fails));
}

// ---- criterion 7: distillation combinatorics ----

void criterion_distillation() {
    long long c7 = distillation_error_count(steane7(), 3);
    long long c35 = distillation_error_count(reed_muller15(), 3);
    const long long shots = 1000000;
    double p = 1e-3;
    double slope7 = (1.0 - distillation_success_monte_carlo(steane7(), p, shots, 707)) / p;
    double slope15 = (1.0 - distillation_success_monte_carlo(reed_muller15(), p, shots, 708)) / p;
    bool ok = c7 == 7 && c35 == 35 && within(slope7, 7.0, 0.05) && within(slope15, 15.0, 0.05);
    report(7, ok,
           "count7=" + std::to_string(c7) + " count35=" + std::to_string(c35) + " slope7=" +
               fmt(slope7) + " slope15=" + fmt(slope15) + " tol=5%");
}

// ---- criterion 8: logical algebra ----

void criterion_logical() {
    VerifyReport rep = cli::verify_logical_suite(2026);
    int fails = 0;
    for (const auto& line : rep.lines)
        if (line.rfind("PASS", 0) != 0) {
            ++fails;
            std::fprintf(stderr, "  %s\n", line.c_str());
        }
    report(8, rep.all_pass,
           "checks=" + std::to_string(rep.lines.size()) + " failed=" + std::to_string(fails));
}

// ---- criterion 9: resource round-trip ----

void criterion_resources() {
    FactoringParams hi;  // defaults: N=2000, t_M=100ns, cycle 200ns, p=1e-3
    ResourceReport r = total_report(hi);
    bool ok = true;
    std::string detail;
    auto check = [&](const char* name, double value, double ref, double rel) {
        bool c = within(value, ref, rel);
        ok = ok && c;
        if (!c) detail += std::string(" bad:") + name + "=" + fmt(value);
    };
    bool exact_d = r.chain.d_1 == 17 && r.chain.d_2 == 34;
    ok = ok && exact_d;
    check("exec_h", r.exec_time / 3600.0, 26.7, 0.10);
    check("q_d1", double(r.q_d1), 3600, 0.10);
    check("q_d2", double(r.q_d2), 14500, 0.10);
    check("factory_qubits", double(r.factory_qubits), 8e5, 0.10);
    check("factory_cycles", double(r.factory_cycles), 500, 0.10);
    check("factories", double(r.factories), 1200, 0.10);
    bool window_hi = r.total_qubits >= 0.9e9 && r.total_qubits <= 1.3e9;
    ok = ok && window_hi;

    FactoringParams lo = hi;
    lo.p = 1e-4;
    ResourceReport r2 = total_report(lo);
    bool window_lo = r2.total_qubits >= 1.1e8 && r2.total_qubits <= 1.5e8;
    ok = ok && window_lo;

    report(9, ok,
           "d1=" + std::to_string(r.chain.d_1) + " d2=" + std::to_string(r.chain.d_2) +
               " total_hi=" + fmt(r.total_qubits) + " total_lo=" + fmt(r2.total_qubits) + detail);
}

// ---- criterion 10: declared non-reproduction + combined monotonicity ----

void criterion_scope_and_monotonicity() {
    const long long shots = 150000;
    const int d = 5;
    double base_p = 0.004;
    auto failures_with = [&](double p0, double p1, double p2, uint64_t seed) {
        ErrorModel m{p0, p1, p2};
        std::fprintf(stderr, "  monotonicity d=5 p=(%g,%g,%g)\n", p0, p1, p2);
        return measure_logical_rate(d, m, base_p, shots, seed, 1).failures;
    };
    long long base = failures_with(base_p, base_p, base_p, 1001);
    long long up0 = failures_with(base_p * 1.5, base_p, base_p, 1002);
    long long up1 = failures_with(base_p, base_p * 1.5, base_p, 1003);
    long long up2 = failures_with(base_p, base_p, base_p * 1.5, 1004);
    bool mono = up0 > base && up1 > base && up2 > base;
    report(10, mono,
           "declared: d=25/55 curves and the full three-axis contour surface are out of "
           "desk-scale budget; monotonicity(d=5): base=" +
               std::to_string(base) + " up0=" + std::to_string(up0) + " up1=" +
               std::to_string(up1) + " up2=" + std::to_string(up2));
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    auto want = [&](int n) {
        return only.empty() || std::find(only.begin(), only.end(), n) != only.end();
    };

    double t0 = now_s();
    if (want(1) || want(2)) criteria_threshold_and_slope();
    if (want(3)) criterion_class_thresholds();
    if (want(4)) criterion_statistical_model();
    if (want(5)) criterion_decoder();
    if (want(6)) criterion_gates();
    if (want(7)) criterion_distillation();
    if (want(8)) criterion_logical();
    if (want(9)) criterion_resources();
    if (want(10)) criterion_scope_and_monotonicity();
    std::fprintf(stderr, "acceptance suite finished in %.1f s\n", now_s() - t0);
    return g_all ? 0 : 1;
}
