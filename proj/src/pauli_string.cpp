#include "aqec/pauli_string.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace aqec {

namespace {
const cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

PauliString PauliString::single(int row, int col, Pauli p) {
    if (row < 1 || row > 3 || col < 1 || col > 3)
        throw std::out_of_range("PauliString::single: grid position out of range");
    const uint16_t bit = uint16_t{1} << (3 * (row - 1) + (col - 1));
    PauliString s;
    if (p == Pauli::X || p == Pauli::Y) s.x_bits = bit;
    if (p == Pauli::Z || p == Pauli::Y) s.z_bits = bit;
    if (p == Pauli::Y) s.phase_pow = 1;
    return s;
}

PauliString PauliString::operator*(const PauliString& o) const {
    PauliString r;
    // Z^a X^b = (-1)^(ab) X^b Z^a site by site.
    r.phase_pow = static_cast<uint8_t>(
        (phase_pow + o.phase_pow + 2 * std::popcount(uint16_t(z_bits & o.x_bits))) % 4);
    r.x_bits = x_bits ^ o.x_bits;
    r.z_bits = z_bits ^ o.z_bits;
    return r;
}

bool PauliString::commutes_with(const PauliString& o) const {
    return ((std::popcount(uint16_t(x_bits & o.z_bits)) +
             std::popcount(uint16_t(z_bits & o.x_bits))) &
            1) == 0;
}

PauliString PauliString::inverse() const {
    // (i^p X Z)^-1 = i^{-p} Z X = i^{-p} (-1)^{|x&z|} X Z
    PauliString r = *this;
    r.phase_pow = static_cast<uint8_t>(
        ((4 - phase_pow) + 2 * std::popcount(uint16_t(x_bits & z_bits))) % 4);
    return r;
}

OperatorSum PauliString::to_operator_sum(const SiteSpace& space) const {
    cplx coeff = kPhase[phase_pow];
    std::vector<std::pair<int, Pauli>> factors;
    for (int q = 0; q < n_qubits; ++q) {
        const bool x = (x_bits >> q) & 1, z = (z_bits >> q) & 1;
        if (!x && !z) continue;
        const int site = space.index_of(SiteLabel::memory(1 + q / 3, 1 + q % 3));
        if (x && z) {
            factors.emplace_back(site, Pauli::Y);
            coeff *= cplx(0, -1);  // XZ = -iY
        } else {
            factors.emplace_back(site, x ? Pauli::X : Pauli::Z);
        }
    }
    TensorTerm t;
    t.coeff = coeff;
    for (const auto& [site, p] : factors) t.factors.emplace_back(site, pauli_local(p));
    return OperatorSum(space, {t});
}

PauliString PauliString::from_operator_sum(const OperatorSum& os) {
    if (os.n_terms() != 1)
        throw std::invalid_argument("PauliString::from_operator_sum: not a single term");
    const CanonicalTerm& t = os.terms().front();
    PauliString r;
    cplx coeff = t.coeff;
    for (const auto& [site, p] : t.factors) {
        const SiteLabel l = os.space().label(site);
        if (l.kind != SiteLabel::Kind::Memory)
            throw std::invalid_argument("PauliString::from_operator_sum: relay-site factor");
        const uint16_t bit = uint16_t{1} << (3 * (l.a - 1) + (l.b - 1));
        if (p == Pauli::X || p == Pauli::Y) r.x_bits |= bit;
        if (p == Pauli::Z || p == Pauli::Y) r.z_bits |= bit;
        if (p == Pauli::Y) coeff *= cplx(0, 1);  // Y = i XZ
    }
    for (int k = 0; k < 4; ++k) {
        if (std::abs(coeff - kPhase[k]) < 1e-9) {
            r.phase_pow = static_cast<uint8_t>(k);
            return r;
        }
    }
    throw std::invalid_argument(
        "PauliString::from_operator_sum: coefficient is not a power of i");
}

std::string PauliString::str() const {
    static const char* sign[4] = {"+", "+i", "-", "-i"};
    // Report the conventional phase of the Pauli-letter form: each Y absorbs
    // one factor of i from XZ.
    const int y_count = std::popcount(uint16_t(x_bits & z_bits));
    std::string s = sign[(phase_pow + 3 * y_count) % 4];
    for (int q = 0; q < n_qubits; ++q) {
        const bool x = (x_bits >> q) & 1, z = (z_bits >> q) & 1;
        s += x && z ? 'Y' : x ? 'X' : z ? 'Z' : '.';
    }
    return s;
}

std::string SyndromeVector::str() const {
    std::string s = "(";
    for (int k = 0; k < 4; ++k) s += (a[k] > 0 ? "+1" : "-1") + std::string(k < 3 ? "," : ")");
    return s;
}

}  // namespace aqec
