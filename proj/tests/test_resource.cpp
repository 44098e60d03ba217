#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsurf/analysis.h"
#include "qsurf/resource.h"

using namespace qsurf;

TEST_CASE("execution time of the 2000-bit run") {
    FactoringParams p;  // defaults: N=2000, t_M=100ns
    double t = exec_time(p);
    CHECK(t == doctest::Approx(120.0 * 8e9 * 100e-9).epsilon(1e-12));
    CHECK(t / 3600.0 == doctest::Approx(26.67).epsilon(2e-3));
}

TEST_CASE("ancilla budget") {
    auto [count, P_A] = a_state_budget(2000);
    CHECK(count == doctest::Approx(2.24e12).epsilon(1e-9));
    CHECK(P_A == doctest::Approx(4.46e-13).epsilon(2e-3));
    CHECK_THROWS_AS(a_state_budget(0), std::invalid_argument);
}

TEST_CASE("physical qubits per spaced logical qubit") {
    // 2.5 * 1.25 * (2d)^2 rounded to the nearest 50.
    CHECK(qubits_per_logical_spaced(17) == 3600);
    CHECK(qubits_per_logical_spaced(34) == 14450);
    CHECK(qubits_per_logical_spaced(16) == 3200);
    CHECK(qubits_per_logical_spaced(8) == 800);
}

TEST_CASE("distillation chain error rates and anchor distances") {
    FactoringParams p;  // p=1e-3, p_I=0.005
    auto chain = build_chain(p);
    CHECK(chain.p_1 == doctest::Approx(35.0 * std::pow(0.005, 3)).epsilon(1e-12));
    CHECK(chain.p_1 == doctest::Approx(4.4e-6).epsilon(0.01));
    CHECK(chain.p_2 == doctest::Approx(35.0 * std::pow(chain.p_1, 3)).epsilon(1e-12));
    CHECK(chain.p_2 < 4.46e-13);  // below the per-state budget
    CHECK(chain.d_1 == 17);
    CHECK(chain.d_2 == 34);

    FactoringParams p4 = p;
    p4.p = 1e-4;
    auto chain4 = build_chain(p4);
    CHECK(chain4.d_1 == 8);
    CHECK(chain4.d_2 == 16);
}

TEST_CASE("formula-mode distances satisfy their budget inequalities") {
    FactoringParams p;
    p.formula_distances = true;
    auto chain = build_chain(p);
    auto [count, P_A] = a_state_budget(p.N);
    (void)count;
    CHECK(120.0 * chain.d_2 * empirical_PL(p.p, chain.d_2) < P_A);
    double s1 = 1800.0 * chain.d_1 * empirical_PL(p.p, chain.d_1);
    CHECK(35.0 * s1 * s1 * s1 < P_A);
    // Minimality: one distance step down violates the budget.
    CHECK(120.0 * (chain.d_2 - 1) * empirical_PL(p.p, chain.d_2 - 1) >= P_A);
    // The closed-form budget lands above the published operating distances.
    CHECK(chain.d_2 > 34);
    CHECK_THROWS_AS(select_distance(0.006, 1e-13, 120.0, false), std::invalid_argument);
}

TEST_CASE("factory footprint and rate") {
    FactoringParams p;
    auto chain = build_chain(p);
    auto f = factory_report(p, chain);
    CHECK(f.qubits == 240 * 3600);  // 864000
    CHECK(f.stage1_cycles == 170);
    CHECK(f.stage2_cycles == 340);
    // 510 cycles at 200 ns per two output states.
    CHECK(f.states_per_second == doctest::Approx(2.0 / (510 * 200e-9)).epsilon(1e-12));
}

TEST_CASE("full report at p=1e-3") {
    FactoringParams p;
    auto r = total_report(p);
    CHECK(r.factory_qubits == 864000);
    CHECK(r.factory_cycles == 510);
    CHECK(r.factories == 1190);
    CHECK(r.computational_qubits == doctest::Approx(2.0 * 2000 * 14450).epsilon(1e-12));
    CHECK(r.total_qubits > 0.9e9);
    CHECK(r.total_qubits < 1.3e9);
    CHECK(r.computational_share > 0.0);
    CHECK(r.computational_share < 0.1);
}

TEST_CASE("full report at p=1e-4") {
    FactoringParams p;
    p.p = 1e-4;
    auto r = total_report(p);
    CHECK(r.chain.d_1 == 8);
    CHECK(r.chain.d_2 == 16);
    CHECK(r.factory_qubits == 240 * 800);  // 192000
    CHECK(r.factory_cycles == 240);
    CHECK(r.factories == 560);
    CHECK(r.total_qubits > 1.1e8);
    CHECK(r.total_qubits < 1.5e8);
}

TEST_CASE("circuit trade-off table") {
    auto r1 = table1_tradeoffs(2000, 1);
    CHECK(r1.logical_qubits_value == doctest::Approx(4000));
    CHECK(r1.sequential_value == doctest::Approx(40.0 * 8e9));
    auto r2 = table1_tradeoffs(2000, 2);
    CHECK(r2.logical_qubits == "5N");
    CHECK(r2.logical_qubits_value == doctest::Approx(10000));
    auto r3 = table1_tradeoffs(2000, 3);
    CHECK(r3.logical_qubits_value == doctest::Approx(2.0 * 2000 * 2000));
    auto r4 = table1_tradeoffs(2000, 4);
    CHECK(r4.sequential_toffolis == "O(log^3 N)");
    CHECK_THROWS_AS(table1_tradeoffs(2000, 5), std::invalid_argument);
}

TEST_CASE("report rendering is key = value") {
    auto r = total_report(FactoringParams{});
    auto text = render_report(r);
    CHECK(text.find("d1 = 17\n") != std::string::npos);
    CHECK(text.find("d2 = 34\n") != std::string::npos);
    CHECK(text.find("factories = 1190\n") != std::string::npos);
    CHECK(text.find("factory_qubits = 864000\n") != std::string::npos);
}
