#include "qsurf/analysis.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsurf/decoder.h"

namespace qsurf {

int error_dimension(int d) {
    if (d < 2) throw std::invalid_argument("error_dimension: d must be >= 2");
    return d % 2 ? (d + 1) / 2 : d / 2;
}

double empirical_PL(double p, int d) { return 0.03 * std::pow(p / 0.0057, error_dimension(d)); }

double statistical_PL(double p, int d) {
    if (d % 2 == 0) throw std::invalid_argument("statistical_PL: model is derived for odd d");
    int de = error_dimension(d);
    double comb = 1.0;  // d! / ((d_e-1)! d_e!)
    for (int k = 1; k <= d; ++k) comb *= k;
    for (int k = 1; k <= de - 1; ++k) comb /= k;
    for (int k = 1; k <= de; ++k) comb /= k;
    return d * comb * std::pow(8 * p, de);
}

double class_PL(double p_j, int error_class, int d) {
    double p_th;
    switch (error_class) {
        case 0: p_th = 0.043; break;
        case 1: p_th = 0.12; break;
        case 2: p_th = 0.0125; break;
        default: throw std::invalid_argument("class_PL: unknown error class");
    }
    return 0.03 * std::pow(p_j / p_th, error_dimension(d));
}

long long qubits_per_logical(int d) {
    if (d < 1) throw std::invalid_argument("qubits_per_logical: d must be >= 1");
    return (2LL * d - 1) * (2LL * d - 1);
}

std::pair<double, double> wilson_interval(long long failures, long long shots) {
    if (shots <= 0) throw std::invalid_argument("wilson_interval: shots must be positive");
    const double z = 1.959963984540054;  // 95%
    double n = double(shots), phat = double(failures) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = failures == shots ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

RatePoint make_rate_point(int d, double p, long long shots, long long failures) {
    RatePoint pt;
    pt.d = d;
    pt.p = p;
    pt.shots = shots;
    pt.failures = failures;
    // A logical flip is a parity process: flips in two different cycles of
    // the d-round shot cancel, so the per-cycle rate follows from inverting
    // q = (1 - (1 - 2 P_L)^d) / 2 rather than dividing by d.  The two agree
    // to first order but the exact form stays unbiased near threshold where
    // the per-shot failure probability is no longer small.
    auto per_cycle = [d](double q) {
        return q >= 0.5 ? 0.5 : (1.0 - std::pow(1.0 - 2.0 * q, 1.0 / d)) / 2.0;
    };
    pt.P_L = per_cycle(double(failures) / double(shots));
    auto [lo, hi] = wilson_interval(failures, shots);
    pt.ci_lo = per_cycle(lo);
    pt.ci_hi = per_cycle(hi);
    return pt;
}

double fit_slope(const std::vector<RatePoint>& points, int d, double p_lo, double p_hi) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& pt : points)
        if (pt.d == d && pt.p >= p_lo && pt.p <= p_hi && pt.failures > 0)
            xy.push_back({std::log(pt.p), std::log(pt.P_L)});
    if (xy.size() < 2) throw std::invalid_argument("fit_slope: need >= 2 nonzero points in range");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(xy.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingFit estimate_threshold(const std::vector<RatePoint>& points) {
    std::map<int, std::map<double, const RatePoint*>> by_d;
    std::map<double, int> p_values;
    for (const auto& pt : points) {
        by_d[pt.d][pt.p] = &pt;
        ++p_values[pt.p];
    }
    if (by_d.size() < 2)
        throw std::invalid_argument("estimate_threshold: need >= 2 distances");
    if (p_values.size() < 4)
        throw std::invalid_argument("estimate_threshold: need >= 4 p values");
    // The two largest distances carry the smallest finite-size offsets.
    auto it = by_d.rbegin();
    const auto& large = it->second;
    int d_large = it->first;
    ++it;
    const auto& small = it->second;

    // Walk the shared p grid for a sign change of log(P_small) - log(P_large).
    std::vector<std::pair<double, double>> diff;  // (log p, log ratio)
    for (const auto& [p, pt_s] : small) {
        auto f = large.find(p);
        if (f == large.end()) continue;
        if (pt_s->failures == 0 || f->second->failures == 0) continue;
        diff.push_back({std::log(p), std::log(pt_s->P_L) - std::log(f->second->P_L)});
    }
    double log_pth = 0;
    bool found = false;
    for (size_t i = 0; i + 1 < diff.size(); ++i) {
        auto [x0, y0] = diff[i];
        auto [x1, y1] = diff[i + 1];
        if (y0 == 0) {
            log_pth = x0;
            found = true;
            break;
        }
        if ((y0 > 0) != (y1 > 0)) {
            log_pth = x0 + (x1 - x0) * (0 - y0) / (y1 - y0);
            found = true;
            break;
        }
    }
    if (!found && !diff.empty() && diff.back().second == 0) {
        log_pth = diff.back().first;
        found = true;
    }
    if (!found)
        throw std::runtime_error("estimate_threshold: curves do not cross in the sampled range");

    ScalingFit fit;
    fit.p_th_estimate = std::exp(log_pth);
    fit.d_e = error_dimension(d_large);
    // Sub-threshold slope of the largest distance.
    try {
        fit.slope = fit_slope(points, d_large, 0, fit.p_th_estimate * 0.75);
    } catch (const std::invalid_argument&) {
        fit.slope = std::nan("");
    }
    return fit;
}

std::string rate_points_csv(const std::vector<RatePoint>& points) {
    std::ostringstream s;
    s << "d,p,shots,failures,P_L,ci_lo,ci_hi\n";
    s.precision(10);
    for (const auto& pt : points)
        s << pt.d << "," << pt.p << "," << pt.shots << "," << pt.failures << "," << pt.P_L << ","
          << pt.ci_lo << "," << pt.ci_hi << "\n";
    return s.str();
}

RatePoint measure_logical_rate(int d, const ErrorModel& model, double p_label, long long shots,
                               uint64_t master_seed, int threads) {
    if (shots <= 0) throw std::invalid_argument("measure_logical_rate: shots must be positive");
    ArrayLayout layout = build_planar(d);
    if (threads < 1) threads = 1;
    std::vector<long long> fails(threads, 0);
    auto worker = [&](int t) {
        CycleSimContext ctx(layout);
        long long f = 0;
        for (long long s = t; s < shots; s += threads) {
            auto shot = run_rounds(ctx, model, d, derive_seed(master_seed, uint64_t(s)),
                                   /*noiseless_final=*/true);
            f += decode_xl_failure(layout, ctx, shot.record, shot.frame);
        }
        fails[t] = f;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    long long total = 0;
    for (long long f : fails) total += f;
    return make_rate_point(d, p_label, shots, total);
}

}  // namespace qsurf
