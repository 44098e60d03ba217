#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qsurf/lattice.h"

using namespace qsurf;

TEST_CASE("planar array counts and roles") {
    for (int d = 2; d <= 7; ++d) {
        auto l = build_planar(d);
        CHECK(l.nrows == 2 * d - 1);
        CHECK(l.ncols == 2 * d - 1);
        CHECK(l.data_count() == d * d + (d - 1) * (d - 1));
        CHECK(l.measure_count() == 2 * d * (d - 1));
        for (const auto& s : l.sites) {
            bool re = s.coord.row % 2 == 0, ce = s.coord.col % 2 == 0;
            if (re && ce) CHECK(s.role == Role::Data);
            if (!re && !ce) CHECK(s.role == Role::Data);
            if (re && !ce) CHECK(s.role == Role::MeasureZ);
            if (!re && ce) CHECK(s.role == Role::MeasureX);
        }
        // Boundary stabilizers are 3-terminal, interior 4-terminal.
        for (const auto& st : l.stabilizers) {
            bool edge = st.measure_site.row == 0 || st.measure_site.row == l.nrows - 1 ||
                        st.measure_site.col == 0 || st.measure_site.col == l.ncols - 1;
            CHECK(st.neighbors.size() == (edge ? 3u : 4u));
        }
    }
    CHECK_THROWS(build_planar(1));
}

TEST_CASE("interleaving order: measure-Z (N,W,E,S), measure-X (N,E,W,S)") {
    auto l = build_planar(3);
    for (const auto& st : l.stabilizers) {
        Coord m = st.measure_site;
        if (m.row == 0 || m.col == 0 || m.row == l.nrows - 1 || m.col == l.ncols - 1) continue;
        std::vector<Coord> want;
        if (st.kind == Pauli::Z)
            want = {{m.row - 1, m.col}, {m.row, m.col - 1}, {m.row, m.col + 1}, {m.row + 1, m.col}};
        else
            want = {{m.row - 1, m.col}, {m.row, m.col + 1}, {m.row, m.col - 1}, {m.row + 1, m.col}};
        CHECK(st.neighbors == want);
    }
}

TEST_CASE("stabilizers commute pairwise and with the logical operators") {
    auto l = build_planar(4);
    LogicalQubit planar;
    auto xl = logical_chain(l, Pauli::X, planar);
    auto zl = logical_chain(l, Pauli::Z, planar);
    CHECK(xl.weight() == 4);
    CHECK(zl.weight() == 4);
    CHECK_FALSE(commutes(xl, zl));
    for (size_t i = 0; i < l.stabilizers.size(); ++i) {
        auto si = l.stabilizer_string(l.stabilizers[i]);
        CHECK(commutes(si, xl));
        CHECK(commutes(si, zl));
        for (size_t j = i + 1; j < l.stabilizers.size(); ++j)
            CHECK(commutes(si, l.stabilizer_string(l.stabilizers[j])));
    }
}

TEST_CASE("planar code distance equals d") {
    for (int d = 2; d <= 6; ++d) {
        auto l = build_planar(d);
        CHECK(code_distance(l, LogicalQubit{}) == d);
    }
}

TEST_CASE("single-cell hole: no data lost, perimeter is the old stabilizer") {
    auto base = build_planar(5);
    HoleSpec h;
    h.kind = Pauli::Z;
    h.turned_off = {{4, 3}};  // interior measure-Z cell
    auto l = carve_holes(base, {h});
    CHECK(l.data_count() == base.data_count());
    CHECK(l.measure_count() == base.measure_count() - 1);
    REQUIRE(l.holes.size() == 1);
    CHECK(l.holes[0].perimeter.size() == 4);
}

TEST_CASE("multi-cell hole deactivates interior data") {
    // A plus-shaped Z-cut hole: four measure-Z cells around one measure-X
    // cell.  The measure-X cell's four data neighbors leave the code and the
    // perimeter becomes the 8-qubit ring.
    auto base = build_planar(7);
    HoleSpec h;
    h.kind = Pauli::Z;
    h.turned_off = {{4, 5}, {4, 7}, {6, 5}, {6, 7}, {5, 6}};
    auto l = carve_holes(base, {h});
    CHECK(l.data_count() == base.data_count() - 4);
    CHECK(l.measure_count() == base.measure_count() - 5);
    REQUIRE(l.holes.size() == 1);
    CHECK(l.holes[0].perimeter.size() == 8);
}

TEST_CASE("hole-pair logical qubit: chains, commutation, distance") {
    auto base = build_planar(7);
    HoleSpec a, b;
    a.kind = b.kind = Pauli::Z;
    a.turned_off = {{2, 3}};
    b.turned_off = {{10, 3}};
    auto l = carve_holes(base, {a, b});
    LogicalQubit q{LogicalQubit::HolePair, Pauli::Z, 0, 1};
    auto zl = logical_chain(l, Pauli::Z, q);
    auto xl = logical_chain(l, Pauli::X, q);
    CHECK(zl.weight() == 4);  // loop around hole a
    CHECK(xl.weight() == 4);  // chain linking the holes (4 data cells apart)
    CHECK_FALSE(commutes(xl, zl));
    for (const auto& st : l.stabilizers) {
        if (!st.active) continue;
        auto s = l.stabilizer_string(st);
        CHECK(commutes(s, xl));
        CHECK(commutes(s, zl));
    }
    CHECK(code_distance(l, q) == 4);
}

TEST_CASE("hole-boundary logical qubit distance") {
    auto base = build_planar(5);
    HoleSpec a;
    a.kind = Pauli::Z;
    a.turned_off = {{4, 3}};
    auto l = carve_holes(base, {a});
    LogicalQubit q{LogicalQubit::HoleBoundary, Pauli::Z, 0, -1};
    // Chain to the nearer X boundary (left, 2 data) beats the 4-qubit loop.
    CHECK(code_distance(l, q) == 2);
    auto xl = logical_chain(l, Pauli::X, q);
    CHECK(xl.weight() == 2);
}

TEST_CASE("carve_holes input validation") {
    auto base = build_planar(5);
    HoleSpec bad;
    bad.kind = Pauli::Z;
    bad.turned_off = {{0, 1}};  // touches the array edge
    CHECK_THROWS(carve_holes(base, {bad}));
    bad.turned_off = {{2, 2}};  // data site
    CHECK_THROWS(carve_holes(base, {bad}));
    HoleSpec h1, h2;
    h1.kind = h2.kind = Pauli::Z;
    h1.turned_off = {{2, 3}};
    h2.turned_off = {{2, 3}};  // overlap
    CHECK_THROWS(carve_holes(base, {h1, h2}));
}

TEST_CASE("layout serialization format") {
    auto l = build_planar(2);
    std::istringstream in(serialize_layout(l));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "d=2");
    int count = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int r, c, active;
        std::string role;
        REQUIRE((ls >> r >> c >> role >> active));
        CHECK((role == "data" || role == "measure_x" || role == "measure_z"));
        CHECK((active == 0 || active == 1));
        if (r == 0 && c == 1) CHECK(role == "measure_z");
        if (r == 1 && c == 0) CHECK(role == "measure_x");
        ++count;
    }
    CHECK(count == 9);
}
