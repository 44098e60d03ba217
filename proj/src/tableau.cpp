#include "qsurf/tableau.h"

#include <stdexcept>

namespace qsurf {

StabilizerTableau StabilizerTableau::zero_state(int n) {
    StabilizerTableau t;
    t.n = n;
    t.gens.reserve(n);
    t.destab.reserve(n);
    for (int q = 0; q < n; ++q) {
        t.gens.emplace_back(q, Pauli::Z);
        t.destab.emplace_back(q, Pauli::X);
    }
    return t;
}

namespace {

// Image of the single-qubit letter at q under H: X<->Z, Y -> -Y.
void h_row(PauliString& row, int q) {
    auto it = row.support.find(q);
    if (it == row.support.end()) return;
    switch (it->second) {
        case Pauli::X: it->second = Pauli::Z; break;
        case Pauli::Z: it->second = Pauli::X; break;
        case Pauli::Y: row.sign = -row.sign; break;
        default: break;
    }
}

struct CnotImage {
    int sign;
    Pauli pc, pt;
};

// Conjugation table for the two-qubit letter pair (control, target) under
// CNOT, built once from the generator images X_c -> X_c X_t, Z_t -> Z_c Z_t.
const CnotImage& cnot_image(Pauli pc, Pauli pt) {
    static const auto table = [] {
        std::array<CnotImage, 16> tab{};
        const int C = 0, T = 1;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                // Write the pair in canonical per-qubit form Z^z X^x and map
                // each factor: X_c -> X_c X_t, Z_c -> Z_c, X_t -> X_t,
                // Z_t -> Z_c Z_t.  Multiply images in the same order.
                auto letter = [](int p) { return static_cast<Pauli>(p); };
                PauliString img;  // +identity
                auto mul_in = [&img](const PauliString& f) { img = multiply(img, f); };
                auto map_letter = [&](int qubit, Pauli p) {
                    bool z = (p == Pauli::Z || p == Pauli::Y);
                    bool x = (p == Pauli::X || p == Pauli::Y);
                    if (z) {  // Z factor first (Y = Z*X)
                        if (qubit == C) mul_in(PauliString(C, Pauli::Z));
                        else mul_in(multiply(PauliString(C, Pauli::Z), PauliString(T, Pauli::Z)));
                    }
                    if (x) {
                        if (qubit == C) mul_in(multiply(PauliString(C, Pauli::X), PauliString(T, Pauli::X)));
                        else mul_in(PauliString(T, Pauli::X));
                    }
                };
                map_letter(C, letter(a));
                map_letter(T, letter(b));
                tab[a * 4 + b] = {img.sign, img.at(C), img.at(T)};
            }
        }
        return tab;
    }();
    return table[static_cast<int>(pc) * 4 + static_cast<int>(pt)];
}

void cnot_row(PauliString& row, int c, int t) {
    Pauli pc = row.at(c), pt = row.at(t);
    if (pc == Pauli::I && pt == Pauli::I) return;
    const CnotImage& im = cnot_image(pc, pt);
    row.sign *= im.sign;
    auto set = [&row](int q, Pauli p) {
        if (p == Pauli::I) row.support.erase(q);
        else row.support[q] = p;
    };
    set(c, im.pc);
    set(t, im.pt);
}

}  // namespace

void StabilizerTableau::apply_h(int q) {
    if (q < 0 || q >= n) throw std::out_of_range("tableau: qubit index");
    for (auto& g : gens) h_row(g, q);
    for (auto& d : destab) h_row(d, q);
}

void StabilizerTableau::apply_cnot(int c, int t) {
    if (c < 0 || c >= n || t < 0 || t >= n || c == t)
        throw std::out_of_range("tableau: qubit index");
    for (auto& g : gens) cnot_row(g, c, t);
    for (auto& d : destab) cnot_row(d, c, t);
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
    for (auto& g : gens)
        if (!commutes(g, p)) g.sign = -g.sign;
    for (auto& d : destab)
        if (!commutes(d, p)) d.sign = -d.sign;
}

bool StabilizerTableau::is_deterministic(const PauliString& obs) const {
    for (const auto& g : gens)
        if (!commutes(g, obs)) return false;
    return true;
}

int StabilizerTableau::measure(const PauliString& obs, Rng& rng) {
    int p = -1;
    for (int i = 0; i < n; ++i) {
        if (!commutes(gens[i], obs)) { p = i; break; }
    }
    if (p >= 0) {
        // Random outcome: replace one anticommuting generator by the signed
        // observable; fix every other anticommuting row by multiplying in the
        // old generator (generators commute pairwise, so the order is safe).
        int outcome = rng.pm1();
        PauliString old = gens[p];
        for (int i = 0; i < n; ++i) {
            if (i != p && !commutes(gens[i], obs)) gens[i] = multiply(gens[i], old);
            if (!commutes(destab[i], obs) && i != p) destab[i] = multiply(destab[i], old);
        }
        destab[p] = old;
        gens[p] = obs;
        gens[p].sign *= outcome;
        return outcome;
    }
    // Deterministic: obs = +-(product of generators whose destabilizers
    // anticommute with it); the outcome is the relative sign.
    PauliString acc;
    for (int i = 0; i < n; ++i)
        if (!commutes(destab[i], obs)) acc = multiply(acc, gens[i]);
    if (acc.support != obs.support)
        throw std::logic_error("tableau: observable not in the stabilizer span");
    return acc.sign * obs.sign;
}

void StabilizerTableau::reset(int q, Rng& rng) {
    int outcome = measure(PauliString(q, Pauli::Z), rng);
    if (outcome < 0) apply_pauli(PauliString(q, Pauli::X));
}

}  // namespace qsurf
