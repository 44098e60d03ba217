#include "qsurf/cycle_sim.h"

#include <sstream>
#include <stdexcept>

namespace qsurf {

CycleSimContext::CycleSimContext(const ArrayLayout& l) : layout(&l) {
    n_sites = l.nrows * l.ncols;
    std::vector<int> data_pos(n_sites, -1);
    for (const auto& s : l.sites)
        if (s.role == Role::Data && s.active) {
            data_pos[l.qubit_id(s.coord)] = int(data_ids.size());
            data_ids.push_back(l.qubit_id(s.coord));
        }
    data_idle_mask.assign(data_ids.size(), 0x0f);
    for (const auto& st : l.stabilizers) {
        if (!st.active) continue;
        int m = l.qubit_id(st.measure_site);
        measure_ids.push_back(m);
        measure_kind.push_back(st.kind);
        measure_coord.push_back(st.measure_site);
        // Each neighbor couples in the CNOT step fixed by its compass
        // direction (zig-zag: measure-Z north,west,east,south; measure-X
        // north,east,west,south).  Boundary stabilizers keep their remaining
        // neighbors in those canonical slots and idle through the missing
        // steps, so no data qubit is ever touched twice in one step.
        for (const auto& nb : st.neighbors) {
            int dr = nb.row - st.measure_site.row;
            int dc = nb.col - st.measure_site.col;
            int k;
            if (dr == -1) k = 0;
            else if (dr == 1) k = 3;
            else if (dc == -1) k = st.kind == Pauli::Z ? 1 : 2;
            else k = st.kind == Pauli::Z ? 2 : 1;
            int d = l.qubit_id(nb);
            steps[k].push_back({d, m, st.kind == Pauli::Z});
            data_idle_mask[data_pos[d]] &= uint8_t(~(1u << k));
        }
    }
}

namespace {

// Inject X/Y/Z with probability p/3 each onto one site.
inline void inject_depol1(PauliFrame& f, int q, double p, Rng& rng) {
    double u = rng.uniform();
    if (u >= p) return;
    double third = p / 3;
    if (u < third) f.x[q] ^= 1;                      // X
    else if (u < 2 * third) { f.x[q] ^= 1; f.z[q] ^= 1; }  // Y
    else f.z[q] ^= 1;                                // Z
}

// Inject one of the 15 non-identity two-qubit Paulis with probability p.
inline void inject_depol2(PauliFrame& f, int a, int b, double p, Rng& rng) {
    if (rng.uniform() >= p) return;
    int r = int(rng.uniform_int(15)) + 1;  // 1..15, (pa,pb) != (I,I)
    int pa = r >> 2, pb = r & 3;           // 0=I,1=X,2=Y,3=Z
    if (pa == 1 || pa == 2) f.x[a] ^= 1;
    if (pa == 2 || pa == 3) f.z[a] ^= 1;
    if (pb == 1 || pb == 2) f.x[b] ^= 1;
    if (pb == 2 || pb == 3) f.z[b] ^= 1;
}

}  // namespace

ShotRecord run_rounds(const CycleSimContext& ctx, const ErrorModel& model, int rounds,
                      uint64_t seed, bool noiseless_final) {
    if (rounds < 1) throw std::invalid_argument("run_rounds: rounds must be >= 1");
    Rng rng(seed);
    ShotRecord shot;
    int total_rounds = rounds + (noiseless_final ? 1 : 0);
    shot.record.rounds = total_rounds;
    shot.record.n_meas = int(ctx.measure_ids.size());
    shot.record.outcomes.assign(size_t(total_rounds) * shot.record.n_meas, 0);
    PauliFrame f;
    f.resize(ctx.n_sites);

    for (int t = 0; t < total_rounds; ++t) {
        bool noisy = t < rounds;
        double p0 = noisy ? model.p0 : 0.0;
        double p1 = noisy ? model.p1 : 0.0;
        double p2 = noisy ? model.p2 : 0.0;

        // Step 1: measure-qubit init (reset clears the frame; init errors
        // flip the prepared state).  Data qubits idle.
        for (size_t i = 0; i < ctx.measure_ids.size(); ++i) {
            int m = ctx.measure_ids[i];
            f.x[m] = f.z[m] = 0;
            if (p1 > 0 && rng.bernoulli(p1)) f.x[m] ^= 1;
        }
        if (p0 > 0)
            for (int d : ctx.data_ids) inject_depol1(f, d, p0, rng);

        // Step 2: Hadamard on measure-X qubits (swap X/Z frame bits), with a
        // class-1 error adjoined.  Measure-Z qubits idle with no injection.
        for (size_t i = 0; i < ctx.measure_ids.size(); ++i) {
            if (ctx.measure_kind[i] != Pauli::X) continue;
            int m = ctx.measure_ids[i];
            std::swap(f.x[m], f.z[m]);
            if (p1 > 0) inject_depol1(f, m, p1, rng);
        }
        if (p0 > 0)
            for (int d : ctx.data_ids) inject_depol1(f, d, p0, rng);

        // Steps 3-6: the four zig-zag CNOT steps.
        for (int k = 0; k < 4; ++k) {
            for (const auto& g : ctx.steps[k]) {
                if (g.z_kind) {
                    // data controls, measure target
                    f.x[g.meas] ^= f.x[g.data];
                    f.z[g.data] ^= f.z[g.meas];
                } else {
                    // measure controls, data target
                    f.x[g.data] ^= f.x[g.meas];
                    f.z[g.meas] ^= f.z[g.data];
                }
                if (p2 > 0) {
                    int a = g.z_kind ? g.data : g.meas;  // control first
                    int b = g.z_kind ? g.meas : g.data;
                    inject_depol2(f, a, b, p2, rng);
                }
            }
            if (p0 > 0)
                for (size_t i = 0; i < ctx.data_ids.size(); ++i)
                    if (ctx.data_idle_mask[i] & (1u << k))
                        inject_depol1(f, ctx.data_ids[i], p0, rng);
        }

        // Step 7: second Hadamard on measure-X qubits.
        for (size_t i = 0; i < ctx.measure_ids.size(); ++i) {
            if (ctx.measure_kind[i] != Pauli::X) continue;
            int m = ctx.measure_ids[i];
            std::swap(f.x[m], f.z[m]);
            if (p1 > 0) inject_depol1(f, m, p1, rng);
        }
        if (p0 > 0)
            for (int d : ctx.data_ids) inject_depol1(f, d, p0, rng);

        // Step 8: measurement.  The reported bit (relative to the error-free
        // reference) is the accumulated X frame on the measure qubit, XOR a
        // classical readout flip.
        for (size_t i = 0; i < ctx.measure_ids.size(); ++i) {
            uint8_t bit = f.x[ctx.measure_ids[i]];
            if (p1 > 0 && rng.bernoulli(p1)) bit ^= 1;
            shot.record.outcomes[size_t(t) * shot.record.n_meas + i] = bit;
        }
        if (p0 > 0)
            for (int d : ctx.data_ids) inject_depol1(f, d, p0, rng);
    }
    shot.frame = std::move(f);
    return shot;
}

ShotRecord run_rounds(const ArrayLayout& layout, const ErrorModel& model, int rounds,
                      uint64_t seed, bool noiseless_final) {
    CycleSimContext ctx(layout);
    return run_rounds(ctx, model, rounds, seed, noiseless_final);
}

std::vector<DetectionEvent> detection_events(const CycleSimContext& ctx,
                                             const SyndromeRecord& record) {
    std::vector<DetectionEvent> out;
    for (int t = 0; t < record.rounds; ++t)
        for (int m = 0; m < record.n_meas; ++m) {
            uint8_t prev = t > 0 ? record.at(t - 1, m) : 0;
            if (record.at(t, m) != prev)
                out.push_back({ctx.measure_coord[m], t, ctx.measure_kind[m]});
        }
    return out;
}

std::string events_csv(const std::vector<std::pair<int, std::vector<DetectionEvent>>>& shots) {
    std::ostringstream s;
    s << "shot,round,row,col,kind\n";
    for (const auto& [shot, events] : shots)
        for (const auto& e : events)
            s << shot << "," << e.round << "," << e.measure_coord.row << ","
              << e.measure_coord.col << "," << (e.kind == Pauli::X ? 'X' : 'Z') << "\n";
    return s.str();
}

}  // namespace qsurf
