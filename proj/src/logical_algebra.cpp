#include "qsurf/logical_algebra.h"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsurf/rng.h"
#include "qsurf/tableau.h"

namespace qsurf {

namespace {

int parity(const std::vector<int>& outcomes) {
    int p = 0;
    for (int v : outcomes) {
        if (v != +1 && v != -1) throw std::invalid_argument("outcomes must be +-1");
        if (v == -1) p ^= 1;
    }
    return p;
}

// (x, z) symplectic bits of a single-qubit Pauli; Y carries both.
struct Bits {
    bool x = false, z = false;
};

Bits bits_of(Pauli p) {
    switch (p) {
        case Pauli::I: return {false, false};
        case Pauli::X: return {true, false};
        case Pauli::Z: return {false, true};
        case Pauli::Y: return {true, true};
    }
    return {};
}

Pauli pauli_of(Bits b) {
    if (b.x && b.z) return Pauli::Y;
    if (b.x) return Pauli::X;
    if (b.z) return Pauli::Z;
    return Pauli::I;
}

// Dense GF(2) bit row.
struct BitRow {
    std::vector<uint64_t> w;

    explicit BitRow(size_t nbits = 0) : w((nbits + 63) / 64, 0) {}
    void set(size_t i) { w[i / 64] |= uint64_t(1) << (i % 64); }
    bool get(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    void operator^=(const BitRow& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
    }
    bool any() const {
        for (uint64_t v : w)
            if (v) return true;
        return false;
    }
    int lowest() const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i]) return int(i * 64 + __builtin_ctzll(w[i]));
        return -1;
    }
};

// Column index for each (qubit, axis) pair appearing in the problem.
struct ColumnMap {
    std::map<std::pair<int, int>, size_t> index;

    void collect(const PauliString& p) {
        for (const auto& [q, letter] : p.support) {
            Bits b = bits_of(letter);
            if (b.x) index.try_emplace({q, 0}, index.size());
            if (b.z) index.try_emplace({q, 1}, index.size());
        }
    }

    // Row of the string, or nullopt-like failure if it uses unseen columns.
    bool row_of(const PauliString& p, BitRow& out) const {
        out = BitRow(index.size());
        for (const auto& [q, letter] : p.support) {
            Bits b = bits_of(letter);
            for (int axis = 0; axis < 2; ++axis) {
                if (!(axis == 0 ? b.x : b.z)) continue;
                auto it = index.find({q, axis});
                if (it == index.end()) return false;
                out.set(it->second);
            }
        }
        return true;
    }
};

Coord shared_data(const ArrayLayout& l, Coord a, Coord b) {
    int dr = b.row - a.row, dc = b.col - a.col;
    bool ok = (std::abs(dr) == 2 && dc == 0) || (dr == 0 && std::abs(dc) == 2);
    if (!ok) throw std::invalid_argument("cells are not adjacent (must share one data qubit)");
    Coord mid{a.row + dr / 2, a.col + dc / 2};
    if (!l.in_grid(mid) || l.site(mid).role != Role::Data)
        throw std::invalid_argument("no data qubit between the two cells");
    return mid;
}

const StabilizerSpec& base_spec(const ArrayLayout& base, Coord cell) {
    for (const auto& s : base.stabilizers)
        if (s.measure_site == cell) return s;
    throw std::invalid_argument("no stabilizer at the given cell");
}

Pauli cell_kind(const ArrayLayout& l, Coord c) {
    Role r = l.site(c).role;
    if (r == Role::Data) throw std::invalid_argument("expected a measure site");
    return r == Role::MeasureX ? Pauli::X : Pauli::Z;
}

// 4-connected flood fill from the grid border avoiding the barrier sites;
// returns the set of unreachable (enclosed) coords.
std::set<Coord> enclosed_region(const ArrayLayout& l, const std::set<Coord>& barrier) {
    std::vector<char> seen(size_t(l.nrows) * l.ncols, 0);
    std::queue<Coord> q;
    auto push = [&](Coord c) {
        if (!l.in_grid(c) || barrier.count(c)) return;
        char& s = seen[size_t(l.qubit_id(c))];
        if (s) return;
        s = 1;
        q.push(c);
    };
    for (int r = 0; r < l.nrows; ++r) {
        push({r, 0});
        push({r, l.ncols - 1});
    }
    for (int c = 0; c < l.ncols; ++c) {
        push({0, c});
        push({l.nrows - 1, c});
    }
    while (!q.empty()) {
        Coord c = q.front();
        q.pop();
        push({c.row - 1, c.col});
        push({c.row + 1, c.col});
        push({c.row, c.col - 1});
        push({c.row, c.col + 1});
    }
    std::set<Coord> out;
    for (const auto& s : l.sites)
        if (!seen[size_t(l.qubit_id(s.coord))] && !barrier.count(s.coord)) out.insert(s.coord);
    return out;
}

}  // namespace

void StabilizerGroup::add(const PauliString& g, int outcome) {
    if (outcome != +1 && outcome != -1)
        throw std::invalid_argument("stabilizer outcome must be +-1");
    gens.push_back(g);
    outcomes.push_back(outcome);
}

StabilizerGroup StabilizerGroup::from_layout(const ArrayLayout& layout) {
    StabilizerGroup g;
    for (const auto& s : layout.stabilizers)
        if (s.active) g.add(layout.stabilizer_string(s), +1);
    return g;
}

Membership in_group(const PauliString& chain, const StabilizerGroup& g) {
    Membership m;
    for (const auto& gen : g.gens) {
        if (!commutes(chain, gen)) {
            m.status = Membership::DetectableError;
            return m;
        }
    }

    ColumnMap cols;
    cols.collect(chain);
    for (const auto& gen : g.gens) cols.collect(gen);

    // Forward elimination over the generators, tracking which original
    // generators combine into each pivot row.
    size_t ng = g.gens.size();
    struct PivotRow {
        int pivot;
        BitRow row, combo;
    };
    std::vector<PivotRow> pivots;
    for (size_t i = 0; i < ng; ++i) {
        BitRow r;
        cols.row_of(g.gens[i], r);
        BitRow combo((ng + 63) / 64 * 64);
        combo.set(i);
        for (const auto& p : pivots) {
            if (r.get(size_t(p.pivot))) {
                r ^= p.row;
                combo ^= p.combo;
            }
        }
        if (r.any()) pivots.push_back({r.lowest(), std::move(r), std::move(combo)});
    }

    BitRow target;
    cols.row_of(chain, target);
    BitRow tcombo((ng + 63) / 64 * 64);
    for (const auto& p : pivots) {
        if (target.get(size_t(p.pivot))) {
            target ^= p.row;
            tcombo ^= p.combo;
        }
    }
    if (target.any()) {
        m.status = Membership::NonMember;
        return m;
    }

    m.status = Membership::Member;
    PauliString product;
    int outcome_product = +1;
    for (size_t i = 0; i < ng; ++i) {
        if (!tcombo.get(i)) continue;
        m.subset.push_back(int(i));
        product = multiply(product, g.gens[i]);
        outcome_product *= g.outcomes[i];
    }
    if (product.support != chain.support)
        throw std::logic_error("in_group: symplectic solve inconsistent with Pauli product");
    m.sign = chain.sign * product.sign * outcome_product;
    return m;
}

std::pair<PauliString, int> deform(const PauliString& chain, const std::vector<int>& subset,
                                   const StabilizerGroup& g) {
    PauliString out = chain;
    int sign = +1;
    for (int i : subset) {
        out = multiply(out, g.gens.at(size_t(i)));
        sign *= g.outcomes.at(size_t(i));
    }
    return {out, sign};
}

MoveResult move_hole(const ArrayLayout& layout, int hole_index, const std::vector<Coord>& path,
                     const PauliString& z_chain, const PauliString& x_chain,
                     const LogicalQubit& qubit, const MoveOutcomes& outcomes) {
    const HoleSpec& hole = layout.holes.at(size_t(hole_index));
    if (hole.turned_off.size() != 1)
        throw std::invalid_argument("move_hole: only single-cell holes can be moved");
    if (path.size() < 2 || path.front() != hole.turned_off.front())
        throw std::invalid_argument("move_hole: path must start at the hole's cell");

    size_t n = path.size();
    for (const auto& c : path) {
        if (!layout.in_grid(c)) throw std::invalid_argument("move_hole: path leaves the array");
        if (cell_kind(layout, c) != hole.kind)
            throw std::invalid_argument("move_hole: path cell kind differs from the hole kind");
    }
    for (size_t i = 1; i < n; ++i)
        if (!layout.site(path[i]).active)
            throw std::invalid_argument("move_hole: path crosses an inactive cell");

    std::vector<Coord> internal;  // data qubit between consecutive cells
    for (size_t i = 0; i + 1 < n; ++i) {
        Coord mid = shared_data(layout, path[i], path[i + 1]);
        if (!layout.site(mid).active)
            throw std::invalid_argument("move_hole: path crosses an inactive data qubit");
        internal.push_back(mid);
    }

    auto check_size = [&](const std::vector<int>& v, size_t want, const char* what) {
        if (!v.empty() && v.size() != want)
            throw std::invalid_argument(std::string("move_hole: wrong outcome count for ") + what);
    };
    check_size(outcomes.initial_stabs, n - 1, "initial stabilizers");
    check_size(outcomes.data_x, n - 1, "isolated data");
    check_size(outcomes.final_stabs, n - 1, "re-enabled stabilizers");

    // Chain algebra over the untrimmed cell stabilizers.
    ArrayLayout base = build_planar(layout.distance);
    PauliString loop = hole.kind == Pauli::Z ? z_chain : x_chain;
    PauliString link = hole.kind == Pauli::Z ? x_chain : z_chain;
    Pauli other = hole.kind == Pauli::Z ? Pauli::X : Pauli::Z;

    // Extend the loop-type chain across the swept cells, then contract it by
    // the product of every cell but the destination.
    PauliString extended = loop;
    for (size_t i = 1; i < n; ++i)
        extended = multiply(extended, base.stabilizer_string(base_spec(base, path[i])));
    PauliString contracted = extended;
    for (size_t i = 0; i + 1 < n; ++i)
        contracted = multiply(contracted, base.stabilizer_string(base_spec(base, path[i])));

    // The link-type chain grows by the isolated data qubits.
    std::vector<int> internal_ids;
    for (const auto& c : internal) internal_ids.push_back(layout.qubit_id(c));
    PauliString new_link = multiply(link, pauli_on(internal_ids, other));

    int data_par = parity(outcomes.data_x);
    int stab_par = parity(outcomes.initial_stabs) ^ parity(outcomes.final_stabs);
    ByproductRecord bp;
    if (hole.kind == Pauli::Z) {
        bp.p_x = data_par;
        bp.p_z = stab_par;
    } else {
        bp.p_z = data_par;
        bp.p_x = stab_par;
    }

    // Relocate the hole and re-derive perimeters.
    std::vector<HoleSpec> new_holes = layout.holes;
    new_holes[size_t(hole_index)].turned_off = {path.back()};
    new_holes[size_t(hole_index)].perimeter.clear();
    for (auto& h : new_holes) h.perimeter.clear();
    ArrayLayout moved = carve_holes(base, new_holes);
    if (code_distance(moved, qubit) < code_distance(layout, qubit))
        throw std::invalid_argument("move_hole: move would lower the code distance");

    MoveResult res;
    res.layout = std::move(moved);
    res.z_chain = hole.kind == Pauli::Z ? contracted : new_link;
    res.x_chain = hole.kind == Pauli::Z ? new_link : contracted;
    res.byproduct = bp;

    auto coord_str = [](Coord c) {
        std::ostringstream o;
        o << "(" << c.row << "," << c.col << ")";
        return o.str();
    };
    std::ostringstream s1, s2, s3, s4;
    s1 << "step 1: extend the loop chain by multiplying in the cell stabilizers";
    for (size_t i = 1; i < n; ++i) s1 << " " << coord_str(path[i]);
    s1 << "; asserts: extension commutes with all active stabilizers";
    s2 << "step 2: turn off the swept cells and measure the isolated data qubits";
    for (const auto& c : internal) s2 << " " << coord_str(c);
    s2 << "; asserts: link chain gains one letter per isolated qubit";
    s3 << "step 3: contract the loop chain onto the destination cell " << coord_str(path.back())
       << "; asserts: contracted chain equals the destination cell stabilizer";
    s4 << "step 4: record byproduct powers p_x=" << bp.p_x << " p_z=" << bp.p_z
       << "; asserts: byproducts compose by XOR";
    res.script = {s1.str(), s2.str(), s3.str(), s4.str()};
    return res;
}

BraidResult braid(const ArrayLayout& layout, const LogicalQubit& mover,
                  const LogicalQubit& target, const std::vector<Coord>& loop, PairOp in,
                  const BraidOutcomes& outcomes) {
    if (mover.cut == target.cut)
        throw std::invalid_argument("braid: the two qubits must have opposite cut kinds");
    if (loop.size() < 4) throw std::invalid_argument("braid: loop too short to be closed");
    Pauli k = mover.cut;                              // kind of the moving hole's cells
    Pauli other = k == Pauli::Z ? Pauli::X : Pauli::Z;  // letters of the traced loop

    std::set<Coord> ring;  // data qubits swept by the moving hole
    std::vector<int> ring_ids;
    for (size_t i = 0; i < loop.size(); ++i) {
        Coord a = loop[i], b = loop[(i + 1) % loop.size()];
        if (!layout.in_grid(a) || cell_kind(layout, a) != k || !layout.site(a).active)
            throw std::invalid_argument("braid: loop must run over active cells of the mover's kind");
        Coord mid = shared_data(layout, a, b);
        if (!layout.site(mid).active)
            throw std::invalid_argument("braid: loop crosses an inactive data qubit");
        if (!ring.insert(mid).second)
            throw std::invalid_argument("braid: loop revisits a data qubit (not a simple loop)");
        ring_ids.push_back(layout.qubit_id(mid));
    }
    PauliString loop_op = pauli_on(ring_ids, other);

    // A closed path commutes with every stabilizer; an open one does not.
    for (const auto& s : layout.stabilizers)
        if (s.active && !commutes(loop_op, layout.stabilizer_string(s)))
            throw std::invalid_argument("braid: path is not closed");

    // Which holes does the loop enclose?  The barrier is the full closed
    // curve: swept data qubits plus the loop cells between them.
    std::set<Coord> barrier = ring;
    for (const auto& c : loop) barrier.insert(c);
    std::set<Coord> region = enclosed_region(layout, barrier);
    std::vector<int> enclosed_same, enclosed_other;
    for (size_t h = 0; h < layout.holes.size(); ++h) {
        bool inside = false;
        for (const auto& c : layout.holes[h].turned_off) inside |= region.count(c) > 0;
        if (!inside) continue;
        (layout.holes[h].kind == k ? enclosed_same : enclosed_other).push_back(int(h));
    }
    for (int h : enclosed_same)
        if (h != mover.hole_a && h != mover.hole_b)
            throw std::invalid_argument("braid: loop encloses a hole of the mover's own kind");
    if (!enclosed_same.empty())
        throw std::invalid_argument("braid: loop encloses one of the mover's holes");

    // Route 1: reduce the traced loop modulo the active stabilizers of the
    // loop's letter, absorbing the target's tight loop if needed.
    StabilizerGroup g;
    for (const auto& s : layout.stabilizers)
        if (s.active && s.kind == other) g.add(layout.stabilizer_string(s), +1);
    bool gain_q2;
    Membership direct = in_group(loop_op, g);
    if (direct.status == Membership::Member) {
        gain_q2 = false;
    } else {
        bool reduced = false;
        for (int h : {target.hole_a, target.hole_b}) {
            if (h < 0) continue;
            std::vector<int> per_ids;
            for (const auto& c : layout.holes.at(size_t(h)).perimeter)
                per_ids.push_back(layout.qubit_id(c));
            PauliString tight = pauli_on(per_ids, other);
            if (in_group(multiply(loop_op, tight), g).status == Membership::Member) {
                reduced = true;
                break;
            }
        }
        if (!reduced)
            throw std::invalid_argument("braid: traced loop does not reduce to the target's loop");
        gain_q2 = true;
    }

    // Route 2 (independent): the target's linking chain is dragged around the
    // mover exactly when it crosses the swept corridor an odd number of times.
    PauliString link2 = logical_chain(layout, k, target);
    bool gain_q1 = !commutes(link2, loop_op);
    if (gain_q1 != gain_q2)
        throw std::logic_error("braid: loop reduction and crossing count disagree");

    // Both enclosure checks should also agree with the algebra.
    bool encloses_one = enclosed_other.size() == 1 &&
                        (enclosed_other[0] == target.hole_a || enclosed_other[0] == target.hole_b);
    if (encloses_one != gain_q2)
        throw std::logic_error("braid: enclosure test and loop reduction disagree");

    Bits b1 = bits_of(in.q1), b2 = bits_of(in.q2);
    // The mover-attached linking chain (an `other`-letter operator, the x/z
    // component matching `other`) picks up the target's tight loop; the
    // target's linking chain (k-letter component) picks up the mover's.
    bool q1_link = other == Pauli::X ? b1.x : b1.z;
    bool q2_link = k == Pauli::X ? b2.x : b2.z;
    if (q1_link && gain_q2) {
        if (other == Pauli::X)
            b2.x = !b2.x;
        else
            b2.z = !b2.z;
    }
    if (q2_link && gain_q1) {
        if (k == Pauli::X)
            b1.x = !b1.x;
        else
            b1.z = !b1.z;
    }

    BraidResult res;
    res.out = {pauli_of(b1), pauli_of(b2)};
    int data_par = parity(outcomes.ring_data_x);
    int contract_par = parity(outcomes.enclosed_x_stabs);
    int swept_par = parity(outcomes.z_stabs_initial) ^ parity(outcomes.z_stabs_final);
    int detour_par = parity(outcomes.detour_z_stabs);
    if (k == Pauli::Z) {
        res.byproduct_q1 = {data_par, swept_par};
        res.byproduct_q2 = {contract_par, detour_par};
    } else {
        res.byproduct_q1 = {swept_par, data_par};
        res.byproduct_q2 = {detour_par, contract_par};
    }
    res.loop = loop_op;
    return res;
}

HadamardPatchResult hadamard_patch(int d) {
    ArrayLayout l = build_planar(d);
    LogicalQubit q;  // planar
    HadamardPatchResult res;
    res.x_before = logical_chain(l, Pauli::X, q);
    res.z_before = logical_chain(l, Pauli::Z, q);

    // Transversal H exchanges chain letters in place; the patch shift and
    // move-back restore the original footprint, so the net effect is a swap
    // of supports.
    auto support_ids = [](const PauliString& p) {
        std::vector<int> ids;
        for (const auto& [qb, letter] : p.support) {
            (void)letter;
            ids.push_back(qb);
        }
        return ids;
    };
    res.x_after = pauli_on(support_ids(res.z_before), Pauli::X);
    res.z_after = pauli_on(support_ids(res.x_before), Pauli::Z);

    bool ok = !commutes(res.x_after, res.z_after);
    for (const auto& s : l.stabilizers) {
        // Stabilizer kinds exchange along with the chains.
        PauliString swapped;
        Pauli kind = s.kind == Pauli::X ? Pauli::Z : Pauli::X;
        for (const auto& c : s.neighbors) swapped.support[l.qubit_id(c)] = kind;
        ok = ok && commutes(res.x_after, swapped) && commutes(res.z_after, swapped);
    }
    // Applying the exchange twice restores the original chains.
    ok = ok && pauli_on(support_ids(res.z_after), Pauli::X) == res.x_before &&
         pauli_on(support_ids(res.x_after), Pauli::Z) == res.z_before;
    res.swap_ok = ok;

    std::ostringstream step9;
    step9 << "step 9: split the surrounding cut by a multi-cell move and wait " << d
          << " cycles for the split edges to gain full protection (wait " << d << " cycles)";
    res.script = {
        "step 1: turn off the ring of stabilizers isolating the patch and measure the ring "
        "data qubits in the basis that preserves the enclosed chains (repeat 3)",
        "step 2: deform the phase-flip chain onto a path crossing the isolated patch",
        "step 3: widen the moat by measuring out the inner ring of data qubits",
        "step 4: apply transversal Hadamard to every patch data qubit; chain letters and "
        "stabilizer kinds exchange",
        "step 5: swap each patch data qubit with the measure qubit above it",
        "step 6: swap each measure qubit with the data qubit to its left; the patch is now "
        "shifted one cell and its sites again match the array roles",
        "step 7: recreate the qubit's holes inside the shifted patch",
        "step 8: deform the phase-flip chain into a loop around one hole",
        step9.str(),
        "step 10: move the patch boundary back one cell to the original footprint (repeat 2)",
        "step 11: rejoin the patch to the main array and restore the ring stabilizers "
        "(repeat 3)",
    };
    return res;
}

namespace {

// Dense data-qubit index for tableau simulation of one layout.
struct DataIndex {
    std::map<int, int> dense;  // layout qubit id -> 0..n-1

    explicit DataIndex(const ArrayLayout& l) {
        for (const auto& s : l.sites)
            if (s.role == Role::Data) dense.emplace(l.qubit_id(s.coord), int(dense.size()));
    }

    int n() const { return int(dense.size()); }

    PauliString remap(const PauliString& p) const {
        PauliString out;
        out.sign = p.sign;
        for (const auto& [q, letter] : p.support) out.support[dense.at(q)] = letter;
        return out;
    }
};

struct ScenarioLog {
    ScenarioResult& res;
    int step = 0;

    void record(const std::string& action, const std::string& asserts, bool ok) {
        ++step;
        std::ostringstream line;
        line << "step " << step << ": " << action << "; asserts: " << asserts
             << (ok ? "" : " [FAILED]");
        res.transcript.push_back(line.str());
        res.all_ok = res.all_ok && ok;
    }
};

std::string coord_label(Coord c) {
    std::ostringstream o;
    o << "(" << c.row << "," << c.col << ")";
    return o.str();
}

// Measure every stabilizer once, returning the outcome per measure site.
std::map<Coord, int> project_quiescent(const ArrayLayout& l, const DataIndex& ix,
                                       StabilizerTableau& t, Rng& rng) {
    std::map<Coord, int> out;
    for (const auto& s : l.stabilizers)
        if (s.active) out[s.measure_site] = t.measure(ix.remap(l.stabilizer_string(s)), rng);
    return out;
}

}  // namespace

ScenarioResult init_measure_scenarios(uint64_t seed) {
    ScenarioResult res;
    ScenarioLog log{res};
    ArrayLayout l = build_planar(5);
    DataIndex ix(l);

    // --- Wide-cut ground-state initialization and destructive readout ---
    {
        Rng rng(derive_seed(seed, 1));
        StabilizerTableau t = StabilizerTableau::zero_state(ix.n());
        auto quiet = project_quiescent(l, ix, t, rng);
        log.record("measure every stabilizer once to reach a quiescent state",
                   "phase-kind stabilizers read +1 on the all-ground start",
                   [&] {
                       for (const auto& s : l.stabilizers)
                           if (s.kind == Pauli::Z && quiet.at(s.measure_site) != +1) return false;
                       return true;
                   }());

        std::vector<Coord> cut = {{1, 2}, {3, 2}, {5, 2}, {7, 2}};  // column of bit-kind cells
        std::vector<Coord> cut_data = {{2, 2}, {4, 2}, {6, 2}};
        log.record("turn off the column of four bit-kind stabilizers " + coord_label(cut[0]) +
                       ".." + coord_label(cut[3]),
                   "cut isolates data qubits (2,2) (4,2) (6,2)", true);

        for (const auto& c : cut_data) {
            t.measure(PauliString(ix.dense.at(l.qubit_id(c)), Pauli::Z), rng);
            t.reset(ix.dense.at(l.qubit_id(c)), rng);
        }
        log.record("measure the isolated data qubits in the phase basis and reset them to ground",
                   "each isolated qubit ends in its ground state", true);

        for (Coord c : {Coord{3, 2}, Coord{5, 2}}) {
            t.measure(ix.remap(l.stabilizer_string(base_spec(l, c))), rng);
        }
        PauliString zl;
        for (const auto& c : cut_data) zl.support[ix.dense.at(l.qubit_id(c))] = Pauli::Z;
        bool det = t.is_deterministic(zl);
        int v = det ? t.measure(zl, rng) : 0;
        log.record("turn the middle two cells (3,2) (5,2) back on and measure them",
                   "chain Z(2,2)Z(4,2)Z(6,2) is deterministic +1", det && v == +1);

        // Destructive chain measurement: per-qubit readout, then product.
        int prod = 1;
        for (const auto& c : cut_data)
            prod *= t.measure(PauliString(ix.dense.at(l.qubit_id(c)), Pauli::Z), rng);
        log.record("measure the three chain data qubits one by one in the phase basis",
                   "product of the single-qubit outcomes equals the chain value +1", prod == +1);
    }

    // --- Destructive readout after a deliberate bit flip ---
    {
        Rng rng(derive_seed(seed, 2));
        StabilizerTableau t = StabilizerTableau::zero_state(ix.n());
        project_quiescent(l, ix, t, rng);
        std::vector<Coord> cut = {{1, 2}, {3, 2}, {5, 2}, {7, 2}};
        std::vector<Coord> cut_data = {{2, 2}, {4, 2}, {6, 2}};
        for (const auto& c : cut_data) {
            t.measure(PauliString(ix.dense.at(l.qubit_id(c)), Pauli::Z), rng);
            t.reset(ix.dense.at(l.qubit_id(c)), rng);
        }
        for (Coord c : {Coord{3, 2}, Coord{5, 2}})
            t.measure(ix.remap(l.stabilizer_string(base_spec(l, c))), rng);
        // The tight loop around the top hole anticommutes with the chain once.
        t.apply_pauli(ix.remap(l.stabilizer_string(base_spec(l, cut[0]))));
        int prod = 1;
        for (const auto& c : cut_data)
            prod *= t.measure(PauliString(ix.dense.at(l.qubit_id(c)), Pauli::Z), rng);
        log.record("repeat the initialization, apply the tight bit-flip loop around the top "
                   "hole, then read the chain destructively",
                   "per-qubit product flips to -1", prod == -1);
    }

    // --- Single-cell hole inherits the last stabilizer eigenvalue ---
    {
        Rng rng(derive_seed(seed, 3));
        StabilizerTableau t = StabilizerTableau::zero_state(ix.n());
        auto quiet = project_quiescent(l, ix, t, rng);
        Coord cell{3, 6};
        int o = quiet.at(cell);
        PauliString tight = ix.remap(l.stabilizer_string(base_spec(l, cell)));
        bool det = t.is_deterministic(tight);
        int v = det ? t.measure(tight, rng) : 0;
        log.record("turn off the single bit-kind cell (3,6) to create a hole",
                   "the tight loop stays deterministic and equals the cell's last outcome",
                   det && v == o);
    }

    // --- Wide loop operator from a block of cell outcomes ---
    {
        Rng rng(derive_seed(seed, 4));
        StabilizerTableau t = StabilizerTableau::zero_state(ix.n());
        auto quiet = project_quiescent(l, ix, t, rng);
        std::vector<Coord> block = {{2, 5}, {2, 7}, {4, 5}, {4, 7}};
        int prod = 1;
        PauliString loop;
        for (const auto& c : block) {
            prod *= quiet.at(c);
            loop = multiply(loop, ix.remap(l.stabilizer_string(base_spec(l, c))));
        }
        bool det0 = t.is_deterministic(loop);
        int v0 = det0 ? t.measure(loop, rng) : 0;
        log.record("form the loop operator as the product of the four phase-kind cells "
                   "(2,5) (2,7) (4,5) (4,7)",
                   "loop value equals the product of the four recorded outcomes", det0 && v0 == prod);

        Coord inner{3, 6};
        for (const auto& c : base_spec(l, inner).neighbors)
            t.measure(PauliString(ix.dense.at(l.qubit_id(c)), Pauli::X), rng);
        bool det1 = t.is_deterministic(loop);
        int v1 = det1 ? t.measure(loop, rng) : 0;
        log.record("turn the block off and measure its interior data qubits in the bit basis",
                   "the wide loop stays deterministic with the same value", det1 && v1 == prod);
    }

    return res;
}

}  // namespace qsurf
