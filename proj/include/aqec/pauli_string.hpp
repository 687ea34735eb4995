#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "aqec/operator_sum.hpp"

namespace aqec {

// Symplectic representation of a 9-qubit Pauli operator on the memory grid:
//   i^phase_pow * prod_j X^{x_j} Z^{z_j},
// bit j = 3*(row-1) + (col-1).  Y = i X Z, so a Y factor sets both bits and
// bumps the phase.
struct PauliString {
    uint16_t x_bits = 0;
    uint16_t z_bits = 0;
    uint8_t phase_pow = 0;  // exponent of i, mod 4

    static constexpr int n_qubits = 9;

    static PauliString identity() { return {}; }
    static PauliString single(int row, int col, Pauli p);

    PauliString operator*(const PauliString& o) const;
    bool operator==(const PauliString&) const = default;

    bool commutes_with(const PauliString& o) const;
    bool is_identity_up_to_phase() const { return x_bits == 0 && z_bits == 0; }

    PauliString inverse() const;

    // Exact conversion to/from the tensor-operator representation.  The
    // OperatorSum must be a single Pauli-string term with coefficient in
    // {1, i, -1, -i} supported on memory sites.
    OperatorSum to_operator_sum(const SiteSpace& space) const;
    static PauliString from_operator_sum(const OperatorSum& os);

    std::string str() const;  // e.g. "+X.Z......Y"
};

// Stabilizer eigenvalue string, ordered (Z-gen 1, Z-gen 2, X-gen 1, X-gen 2).
struct SyndromeVector {
    std::array<int, 4> a{1, 1, 1, 1};
    bool operator==(const SyndromeVector&) const = default;
    std::string str() const;
};

}  // namespace aqec
