#include "qsurf/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qsurf/analysis.h"
#include "qsurf/lattice.h"
#include "qsurf/logical_algebra.h"
#include "qsurf/resource.h"
#include "qsurf/rng.h"

namespace qsurf::cli {

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("empty grid");
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(spec);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
            (in >> std::ws, !in.eof()))
            throw std::invalid_argument("grid must be start:stop:step");
        if (step <= 0 || stop < start)
            throw std::invalid_argument("grid needs step > 0 and stop >= start");
        // Inclusive endpoint with a half-step tolerance against rounding.
        for (double v = start; v <= stop + step * 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad grid value: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad integer: " + item);
        out.push_back(v);
    }
    return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument(path + ": empty key");
        kv[key] = value;
    }
    return kv;
}

std::string output_header(const std::string& command,
                          const std::map<std::string, std::string>& config) {
    std::ostringstream out;
    out << "# artifact_version = " << kArtifactVersion << "\n";
    out << "# command = " << command << "\n";
    for (const auto& [k, v] : config) out << "# " << k << " = " << v << "\n";
    return out.str();
}

namespace {

// Shared braiding fixture: a phase-cut pair on row 2, a bit-cut pair on
// row 7, and the braid loop around the first bit-cut hole.
struct TopologyFixture {
    ArrayLayout base = build_planar(7);
    ArrayLayout l;
    LogicalQubit mover{LogicalQubit::HolePair, Pauli::Z, 0, 1};
    LogicalQubit target{LogicalQubit::HolePair, Pauli::X, 2, 3};
    std::vector<Coord> loop = {{6, 5}, {6, 7}, {8, 7}, {8, 5}};

    TopologyFixture() {
        l = carve_holes(base, {HoleSpec{Pauli::Z, {{2, 5}}, {}}, HoleSpec{Pauli::Z, {{2, 9}}, {}},
                               HoleSpec{Pauli::X, {{7, 6}}, {}},
                               HoleSpec{Pauli::X, {{7, 10}}, {}}});
    }

    PairOp run(PairOp in) const { return braid(l, mover, target, loop, in, {}).out; }
};

long long code(PairOp op) { return static_cast<long long>(op.q1) * 10 + static_cast<long long>(op.q2); }

PauliString untrimmed_stab(const ArrayLayout& base, Coord cell) {
    for (const auto& s : base.stabilizers)
        if (s.measure_site == cell) return base.stabilizer_string(s);
    throw std::runtime_error("no stabilizer at cell");
}

}  // namespace

VerifyReport verify_logical_suite(uint64_t seed) {
    VerifyReport rep;

    ArrayLayout l5 = build_planar(5);
    rep.add_exact("layout-d5-data-count", l5.data_count(), 41);
    rep.add_exact("layout-d5-measure-count", l5.measure_count(), 40);

    TopologyFixture f;
    rep.add_exact("braid-bitflip-control", code(f.run({Pauli::X, Pauli::I})),
                  code({Pauli::X, Pauli::X}));
    rep.add_exact("braid-bitflip-target", code(f.run({Pauli::I, Pauli::X})),
                  code({Pauli::I, Pauli::X}));
    rep.add_exact("braid-phase-control", code(f.run({Pauli::Z, Pauli::I})),
                  code({Pauli::Z, Pauli::I}));
    rep.add_exact("braid-phase-target", code(f.run({Pauli::I, Pauli::Z})),
                  code({Pauli::Z, Pauli::Z}));

    bool double_id = true;
    for (PairOp in : {PairOp{Pauli::X, Pauli::I}, PairOp{Pauli::I, Pauli::X},
                      PairOp{Pauli::Z, Pauli::I}, PairOp{Pauli::I, Pauli::Z}})
        double_id = double_id && f.run(f.run(in)) == in;
    rep.add_exact("braid-double-is-identity", double_id ? 1 : 0, 1);

    std::vector<Coord> empty_loop = {{6, 1}, {6, 3}, {8, 3}, {8, 1}};
    bool empty_id = true;
    for (PairOp in : {PairOp{Pauli::X, Pauli::I}, PairOp{Pauli::I, Pauli::Z}})
        empty_id = empty_id && braid(f.l, f.mover, f.target, empty_loop, in, {}).out == in;
    rep.add_exact("braid-empty-loop-is-identity", empty_id ? 1 : 0, 1);

    // Hole move: loop chain contracts onto the destination, link chain grows
    // by the isolated data qubits, byproducts follow the outcome parities.
    {
        ArrayLayout lm = carve_holes(f.base, {HoleSpec{Pauli::Z, {{2, 3}}, {}},
                                              HoleSpec{Pauli::Z, {{2, 9}}, {}}});
        LogicalQubit q{LogicalQubit::HolePair, Pauli::Z, 0, 1};
        PauliString zl = logical_chain(lm, Pauli::Z, q);
        PauliString xl = logical_chain(lm, Pauli::X, q);
        MoveOutcomes mo;
        mo.initial_stabs = {-1, +1};
        mo.data_x = {-1, -1};
        mo.final_stabs = {+1, +1};
        MoveResult res = move_hole(lm, 0, {{2, 3}, {4, 3}, {6, 3}}, zl, xl, q, mo);
        rep.add_exact("hole-move-loop-contracts",
                      res.z_chain == untrimmed_stab(f.base, {6, 3}) ? 1 : 0, 1);
        PauliString grown =
            multiply(xl, pauli_on({lm.qubit_id({3, 3}), lm.qubit_id({5, 3})}, Pauli::X));
        rep.add_exact("hole-move-link-grows", res.x_chain == grown ? 1 : 0, 1);
        rep.add_exact("hole-move-byproducts", res.byproduct.p_x * 10 + res.byproduct.p_z, 1);
    }

    HadamardPatchResult h = hadamard_patch(7);
    rep.add_exact("hadamard-patch-swaps-chains", h.swap_ok ? 1 : 0, 1);
    rep.add_exact("hadamard-script-steps", (long long)h.script.size(), 11);
    long long scheduled = 0;
    for (const auto& s : h.script)
        scheduled += (s.find("repeat") != std::string::npos || s.find("wait") != std::string::npos);
    rep.add_exact("hadamard-script-repeats", scheduled, 4);

    ScenarioResult sc = init_measure_scenarios(seed);
    rep.add_exact("init-measure-scenarios-hold", sc.all_ok ? 1 : 0, 1);
    rep.add_exact("init-measure-scenario-steps", (long long)sc.transcript.size(), 9);

    ByproductRecord a{1, 0}, b{1, 1};
    ByproductRecord ab = a;
    ab ^= b;
    ab ^= b;
    rep.add_exact("byproduct-xor-composes", ab == a ? 1 : 0, 1);
    return rep;
}

namespace {

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        err << "error: cannot write " << path << "\n";
        return false;
    }
    out << content;
    return bool(out);
}

std::string fmt(double v) {
    std::ostringstream o;
    o << std::setprecision(10) << v;
    return o.str();
}

int cmd_threshold(const std::string& d_str, const std::string& p_str, long long shots,
                  uint64_t seed, int threads, const std::string& classes_str,
                  const std::string& out_path, std::ostream& out, std::ostream& err) {
    std::vector<int> ds;
    std::vector<double> ps;
    std::vector<int> classes;
    try {
        ds = parse_int_list(d_str);
        ps = parse_grid(p_str);
        classes = parse_int_list(classes_str);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (ds.empty()) {
        err << "error: need at least one distance\n";
        return 2;
    }
    for (int d : ds)
        if (d < 3 || d > 11) {
            err << "error: distances must lie in [3,11]\n";
            return 2;
        }
    for (double p : ps)
        if (p <= 0 || p > 0.02) {
            err << "error: p values must lie in (0, 0.02]\n";
            return 2;
        }
    if (shots < 1) {
        err << "error: shots must be positive\n";
        return 2;
    }
    if (threads < 1) {
        err << "error: threads must be positive\n";
        return 2;
    }
    bool has[3] = {false, false, false};
    if (classes.empty()) {
        err << "error: need at least one error class\n";
        return 2;
    }
    for (int c : classes) {
        if (c < 0 || c > 2) {
            err << "error: classes must be 0, 1 or 2\n";
            return 2;
        }
        has[c] = true;
    }

    std::vector<RatePoint> pts;
    int idx = 0;
    for (int d : ds) {
        for (double p : ps) {
            ErrorModel model{has[0] ? p : 0.0, has[1] ? p : 0.0, has[2] ? p : 0.0};
            err << "threshold: d=" << d << " p=" << fmt(p) << " shots=" << shots << "\n";
            pts.push_back(
                measure_logical_rate(d, model, p, shots, derive_seed(seed, 1000 + idx), threads));
            ++idx;
        }
    }

    std::map<std::string, std::string> cfg = {
        {"d", d_str},          {"p", p_str},
        {"shots", std::to_string(shots)}, {"seed", std::to_string(seed)},
        {"threads", std::to_string(threads)}, {"classes", classes_str},
    };
    std::string csv = output_header("threshold", cfg) + rate_points_csv(pts);

    std::ostringstream summary;
    double lo = *std::min_element(ps.begin(), ps.end());
    try {
        ScalingFit fit = estimate_threshold(pts);
        summary << "# crossing = " << fmt(fit.p_th_estimate) << "\n";
        for (int d : ds) {
            try {
                double s = fit_slope(pts, d, lo, fit.p_th_estimate);
                summary << "# slope_d" << d << " = " << fmt(s) << "\n";
            } catch (const std::exception&) {
                summary << "# slope_d" << d << " = unavailable\n";
            }
        }
    } catch (const std::exception& e) {
        summary << "# crossing = unavailable (" << e.what() << ")\n";
    }
    csv += summary.str();

    if (!out_path.empty()) {
        if (!write_file(out_path, csv, err)) return 2;
        err << "wrote " << out_path << "\n";
        out << summary.str();
    } else {
        out << csv;
    }
    return 0;
}

int cmd_verify(uint64_t seed, const std::string& only, bool emit_scripts,
               const std::string& out_dir, std::ostream& out, std::ostream& err) {
    VerifyReport rep = verify_gates_all(seed);
    rep.merge(verify_logical_suite(seed));

    std::vector<std::string> lines;
    for (const auto& line : rep.lines)
        if (only.empty() || line.find(only) != std::string::npos) lines.push_back(line);
    if (lines.empty()) {
        err << "error: --only '" << only << "' matches no checks\n";
        return 2;
    }
    bool all_pass = true;
    for (const auto& line : lines) {
        out << line << "\n";
        all_pass = all_pass && line.rfind("PASS", 0) == 0;
    }

    if (emit_scripts) {
        std::map<std::string, std::string> cfg = {{"seed", std::to_string(seed)}};
        std::string header = output_header("verify", cfg);
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (const auto& x : v) s += x + "\n";
            return s;
        };
        ScenarioResult sc = init_measure_scenarios(seed);
        TopologyFixture f;
        ArrayLayout lm = carve_holes(f.base, {HoleSpec{Pauli::Z, {{2, 3}}, {}},
                                              HoleSpec{Pauli::Z, {{2, 9}}, {}}});
        LogicalQubit q{LogicalQubit::HolePair, Pauli::Z, 0, 1};
        MoveResult mv = move_hole(lm, 0, {{2, 3}, {4, 3}, {6, 3}}, logical_chain(lm, Pauli::Z, q),
                                  logical_chain(lm, Pauli::X, q), q, {});
        std::string dir = out_dir.empty() ? "." : out_dir;
        struct Item {
            const char* name;
            std::string body;
        } items[] = {
            {"init_measure_scenarios.txt", join(sc.transcript)},
            {"hadamard_patch_script.txt", join(hadamard_patch(7).script)},
            {"hole_move_script.txt", join(mv.script)},
        };
        for (const auto& item : items) {
            std::string path = dir + "/" + item.name;
            if (!write_file(path, header + item.body, err)) return 2;
            err << "wrote " << path << "\n";
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_estimate(long long bits, double tmeas_ns, double cycle_ns, double p, double p_inject,
                 bool formula, int table1_row, std::ostream& out, std::ostream& err) {
    FactoringParams fp;
    fp.N = bits;
    fp.t_M = tmeas_ns * 1e-9;
    fp.cycle_time = cycle_ns * 1e-9;
    fp.p = p;
    fp.p_I = p_inject;
    fp.formula_distances = formula;
    std::map<std::string, std::string> cfg = {
        {"bits", std::to_string(bits)},   {"tmeas_ns", fmt(tmeas_ns)},
        {"cycle_ns", fmt(cycle_ns)},      {"p", fmt(p)},
        {"p_inject", fmt(p_inject)},      {"formula_distances", formula ? "1" : "0"},
    };
    try {
        ResourceReport rep = total_report(fp);
        out << output_header("estimate", cfg) << render_report(rep);
        if (table1_row > 0) {
            TradeoffRow row = table1_tradeoffs(bits, table1_row);
            out << "table1_row = " << table1_row << "\n";
            out << "table1_logical_qubits = " << row.logical_qubits << "\n";
            out << "table1_sequential_toffolis = " << row.sequential_toffolis << "\n";
            out << "table1_total_toffolis = " << row.total_toffolis << "\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_model_curves(const std::string& d_str, const std::string& p_str,
                     const std::string& targets_str, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
    std::vector<int> ds;
    std::vector<double> ps, targets;
    try {
        ds = parse_int_list(d_str);
        ps = parse_grid(p_str);
        if (!targets_str.empty()) targets = parse_grid(targets_str);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::map<std::string, std::string> cfg = {
        {"d", d_str}, {"p", p_str}, {"targets", targets_str}};
    std::ostringstream body;
    body << output_header("model-curves", cfg);
    if (!targets.empty()) {
        // Footprint curves: smallest odd distance meeting each target rate.
        body << "target,p,p_over_pth,d,n_q\n";
        for (double target : targets) {
            for (double p : ps) {
                int found = -1;
                for (int d = 3; d <= 399; d += 2) {
                    if (empirical_PL(p, d) <= target) {
                        found = d;
                        break;
                    }
                }
                if (found < 0) continue;  // above threshold: no finite distance works
                body << fmt(target) << "," << fmt(p) << "," << fmt(p / 0.0057) << "," << found
                     << "," << qubits_per_logical(found) << "\n";
            }
        }
    } else {
        body << "d,p,P_L_empirical,P_L_statistical,n_q\n";
        for (int d : ds) {
            for (double p : ps) {
                body << d << "," << fmt(p) << "," << fmt(empirical_PL(p, d)) << ",";
                if (d % 2 == 1) body << fmt(statistical_PL(p, d));
                body << "," << qubits_per_logical(d) << "\n";
            }
        }
    }
    if (!out_path.empty()) {
        if (!write_file(out_path, body.str(), err)) return 2;
        err << "wrote " << out_path << "\n";
    } else {
        out << body.str();
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Surface-code simulation, verification and resource estimation"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path, "Flat 'key = value' config file; flags override it");
    int dump_d = 0;
    app.add_option("--dump-layout", dump_d,
                   "Print the planar array layout for the given distance and exit");

    // threshold
    auto* th = app.add_subcommand("threshold", "Monte Carlo logical error rates over a p-grid");
    // Let app-level flags (--config, --dump-layout) appear after a subcommand.
    th->fallthrough();
    std::string th_d = "3,5,7", th_p = "0.002:0.012:0.001", th_classes = "0,1,2", th_out;
    long long th_shots = 100000;
    uint64_t th_seed = 7;
    int th_threads = 1;
    th->add_option("--d", th_d, "Comma-separated code distances in [3,11]")
        ->capture_default_str();
    th->add_option("--p", th_p, "Per-step error rates, inclusive start:stop:step or list")
        ->capture_default_str();
    th->add_option("--shots", th_shots, "Shots per (d, p) point")->capture_default_str();
    th->add_option("--seed", th_seed, "Master seed")->capture_default_str();
    th->add_option("--threads", th_threads, "Worker threads (result is thread-invariant)")
        ->capture_default_str();
    th->add_option("--classes", th_classes, "Error classes to enable (subset of 0,1,2)")
        ->capture_default_str();
    th->add_option("--out", th_out, "Write the CSV here instead of standard output");

    // verify
    auto* ve = app.add_subcommand("verify", "Run every exact gate/topology check");
    ve->fallthrough();
    std::string ve_only, ve_out;
    uint64_t ve_seed = 7;
    bool ve_emit = false;
    ve->add_option("--seed", ve_seed, "Seed for the statistical sub-checks")
        ->capture_default_str();
    ve->add_option("--only", ve_only, "Run only checks whose id contains this substring");
    ve->add_flag("--emit-scripts", ve_emit, "Write scenario transcripts and move scripts");
    ve->add_option("--out", ve_out, "Directory for emitted scripts (default .)");

    // estimate
    auto* es = app.add_subcommand("estimate", "Factoring-machine resource estimate");
    es->fallthrough();
    long long es_bits = 2000;
    double es_tmeas = 100, es_cycle = 200, es_p = 1e-3, es_pinj = 0.005;
    bool es_formula = false;
    int es_row = 0;
    es->add_option("--bits", es_bits, "Key size N in bits")->capture_default_str();
    es->add_option("--tmeas-ns", es_tmeas, "Measurement time in ns")->capture_default_str();
    es->add_option("--cycle-ns", es_cycle, "Surface-code cycle time in ns")
        ->capture_default_str();
    es->add_option("--p", es_p, "Per-step physical error rate")->capture_default_str();
    es->add_option("--p-inject", es_pinj, "State-injection error rate")->capture_default_str();
    es->add_flag("--formula-distances", es_formula,
                 "Solve the budget inequalities instead of the published anchors");
    es->add_option("--table1-row", es_row, "Also print the given circuit trade-off row (1-4)")
        ->capture_default_str();

    // model-curves
    auto* mc = app.add_subcommand("model-curves", "Closed-form P_L and footprint curves");
    mc->fallthrough();
    std::string mc_d = "3,7,11,25,55", mc_p = "0.0005:0.005:0.0005", mc_targets, mc_out;
    mc->add_option("--d", mc_d, "Comma-separated code distances (may be empty)")
        ->capture_default_str();
    mc->add_option("--p", mc_p, "Per-step error rates, inclusive start:stop:step or list")
        ->capture_default_str();
    mc->add_option("--targets", mc_targets,
                   "Target logical rates; emits the minimal-footprint curve instead");
    mc->add_option("--out", mc_out, "Write the CSV here instead of standard output");

    // Apply config-file values as defaults before parsing flags.
    // CLI11's vector overload consumes the arguments back to front.
    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        auto it = std::find(args.begin(), args.end(), "--config");
        if (it != args.end() && it + 1 != args.end()) {
            auto kv = load_config_file(*(it + 1));
            // Only the invoked subcommand takes config defaults; option names
            // may repeat across subcommands with different types.
            std::vector<CLI::App*> scopes = {&app};
            for (CLI::App* sub : {th, ve, es, mc})
                if (std::find(args.begin(), args.end(), sub->get_name()) != args.end())
                    scopes.push_back(sub);
            for (const auto& [key, value] : kv) {
                for (CLI::App* scope : scopes) {
                    CLI::Option* opt = scope->get_option_no_throw("--" + key);
                    if (opt && !opt->get_positional()) opt->default_val(value);
                }
            }
        }
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (dump_d > 0) {
        try {
            out << serialize_layout(build_planar(dump_d));
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
        if (app.get_subcommands().empty()) return 0;
    }

    if (th->parsed())
        return cmd_threshold(th_d, th_p, th_shots, th_seed, th_threads, th_classes, th_out, out,
                             err);
    if (ve->parsed()) return cmd_verify(ve_seed, ve_only, ve_emit, ve_out, out, err);
    if (es->parsed())
        return cmd_estimate(es_bits, es_tmeas, es_cycle, es_p, es_pinj, es_formula, es_row, out,
                            err);
    if (mc->parsed()) return cmd_model_curves(mc_d, mc_p, mc_targets, mc_out, out, err);

    if (dump_d > 0) return 0;
    err << app.help();
    return 2;
}

}  // namespace qsurf::cli
