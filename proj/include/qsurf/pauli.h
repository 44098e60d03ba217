#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qsurf {

// Single-qubit Pauli operator.  Y uses the real convention Y = Z*X (a real
// matrix), so X^2 = Z^2 = I but Y^2 = -I.  With this convention the group
// generated by signed Pauli products only ever needs signs +1/-1, never +-i.
enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

// Product of two single-qubit Paulis: returns (sign, result).
std::pair<int, Pauli> mul1(Pauli a, Pauli b);

// True iff the two single-qubit Paulis anticommute.
bool anticommute1(Pauli a, Pauli b);

// Signed tensor product of single-qubit Paulis over named qubits.
// Identity entries are absent from the support map; sign is +1 or -1.
struct PauliString {
    std::map<int, Pauli> support;
    int sign = +1;

    PauliString() = default;
    PauliString(int qubit, Pauli p, int sgn = +1) : sign(sgn) {
        if (p != Pauli::I) support[qubit] = p;
    }

    Pauli at(int qubit) const {
        auto it = support.find(qubit);
        return it == support.end() ? Pauli::I : it->second;
    }

    bool is_identity() const { return support.empty(); }
    int weight() const { return static_cast<int>(support.size()); }

    bool operator==(const PauliString& o) const {
        return sign == o.sign && support == o.support;
    }

    std::string str() const;
};

// Group product a*b with the accumulated sign.
PauliString multiply(const PauliString& a, const PauliString& b);

// True iff a and b commute (even number of anticommuting overlaps).
bool commutes(const PauliString& a, const PauliString& b);

// Convenience: build an all-same-letter string on the given qubits.
PauliString pauli_on(const std::vector<int>& qubits, Pauli p, int sign = +1);

}  // namespace qsurf
