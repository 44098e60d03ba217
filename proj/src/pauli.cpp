#include "qsurf/pauli.h"

namespace qsurf {

// Products in the real-Y convention (Y = Z*X):
//   X*Z = -Y   Z*X = +Y
//   X*Y = -Z   Y*X = +Z
//   Z*Y = +X   Y*Z = -X
//   X*X = I    Z*Z = I    Y*Y = -I
std::pair<int, Pauli> mul1(Pauli a, Pauli b) {
    if (a == Pauli::I) return {+1, b};
    if (b == Pauli::I) return {+1, a};
    if (a == b) return {a == Pauli::Y ? -1 : +1, Pauli::I};
    switch (a) {
        case Pauli::X:
            return b == Pauli::Z ? std::pair{-1, Pauli::Y} : std::pair{-1, Pauli::Z};
        case Pauli::Y:
            return b == Pauli::X ? std::pair{+1, Pauli::Z} : std::pair{-1, Pauli::X};
        case Pauli::Z:
            return b == Pauli::X ? std::pair{+1, Pauli::Y} : std::pair{+1, Pauli::X};
        default:
            return {+1, Pauli::I};
    }
}

bool anticommute1(Pauli a, Pauli b) {
    return a != Pauli::I && b != Pauli::I && a != b;
}

std::string PauliString::str() const {
    std::string out = sign < 0 ? "-" : "+";
    if (support.empty()) return out + "I";
    static const char* names = "IXYZ";
    for (const auto& [q, p] : support) {
        out += names[static_cast<int>(p)];
        out += std::to_string(q);
        out += ' ';
    }
    if (out.back() == ' ') out.pop_back();
    return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    PauliString out;
    out.sign = a.sign * b.sign;
    out.support = a.support;
    for (const auto& [q, pb] : b.support) {
        auto it = out.support.find(q);
        if (it == out.support.end()) {
            out.support[q] = pb;
        } else {
            auto [s, p] = mul1(it->second, pb);
            out.sign *= s;
            if (p == Pauli::I)
                out.support.erase(it);
            else
                it->second = p;
        }
    }
    return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
    // Walk the smaller support for speed.
    const PauliString& small = a.weight() <= b.weight() ? a : b;
    const PauliString& big = a.weight() <= b.weight() ? b : a;
    int anti = 0;
    for (const auto& [q, p] : small.support)
        if (anticommute1(p, big.at(q))) anti ^= 1;
    return anti == 0;
}

PauliString pauli_on(const std::vector<int>& qubits, Pauli p, int sign) {
    PauliString out;
    out.sign = sign;
    for (int q : qubits) out.support[q] = p;
    return out;
}

}  // namespace qsurf
