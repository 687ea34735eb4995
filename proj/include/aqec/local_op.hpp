#pragma once

#include <array>
#include <complex>
#include <string>

namespace aqec {

using cplx = std::complex<double>;

// A 2x2 operator on a single site, row-major.  Memory sites use the Pauli
// constructors; relay sites use the |+>/|-> basis with |+> = basis state 0,
// so proj_plus = |+><+|, sigma_pm = |+><-|, etc.
struct LocalOp {
    std::array<cplx, 4> m{};  // m[0]=a00 m[1]=a01 m[2]=a10 m[3]=a11

    static LocalOp identity() { return {{1, 0, 0, 1}}; }
    static LocalOp pauli_x() { return {{0, 1, 1, 0}}; }
    static LocalOp pauli_y() { return {{0, cplx(0, -1), cplx(0, 1), 0}}; }
    static LocalOp pauli_z() { return {{1, 0, 0, -1}}; }
    static LocalOp proj_plus() { return {{1, 0, 0, 0}}; }
    static LocalOp proj_minus() { return {{0, 0, 0, 1}}; }
    static LocalOp sigma_pm() { return {{0, 1, 0, 0}}; }  // |+><-|
    static LocalOp sigma_mp() { return {{0, 0, 1, 0}}; }  // |-><+|

    LocalOp mul(const LocalOp& o) const {
        return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                 m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
    }
    LocalOp dagger() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }

    // Coefficients (cI, cX, cY, cZ) of the unique Pauli-basis expansion.
    std::array<cplx, 4> pauli_coeffs() const {
        const cplx i(0, 1);
        return {(m[0] + m[3]) * 0.5, (m[1] + m[2]) * 0.5,
                i * (m[1] - m[2]) * 0.5, (m[0] - m[3]) * 0.5};
    }
};

// Canonical single-site basis used by OperatorSum terms (identity factors
// are dropped from terms, so only X, Y, Z appear).
enum class Pauli : uint8_t { X = 1, Y = 2, Z = 3 };

inline const char* pauli_name(Pauli p) {
    switch (p) {
        case Pauli::X: return "X";
        case Pauli::Y: return "Y";
        default: return "Z";
    }
}

inline LocalOp pauli_local(Pauli p) {
    switch (p) {
        case Pauli::X: return LocalOp::pauli_x();
        case Pauli::Y: return LocalOp::pauli_y();
        default: return LocalOp::pauli_z();
    }
}

// Product of two canonical Paulis: P a * P b = phase * P c, or phase * I
// when a == b (c reported as 0).
struct PauliProduct {
    uint8_t out;  // 0 = identity, else Pauli code
    cplx phase;
};

inline PauliProduct pauli_mul(Pauli a, Pauli b) {
    if (a == b) return {0, cplx(1, 0)};
    const int ia = static_cast<int>(a), ib = static_cast<int>(b);
    // XY=iZ, YZ=iX, ZX=iY; reversed order picks up the conjugate phase.
    const int ic = 6 - ia - ib;
    const bool cyclic = (ib - ia + 3) % 3 == 1;
    return {static_cast<uint8_t>(ic), cyclic ? cplx(0, 1) : cplx(0, -1)};
}

}  // namespace aqec
