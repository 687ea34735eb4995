#pragma once

#include <string>
#include <vector>

#include "aqec/operator_sum.hpp"

namespace aqec {

// An open quantum optical device: scattering matrix S (operator-valued,
// n x n row-major), coupling vector L, internal Hamiltonian H.
struct SLHTriple {
    SiteSpace space;
    int n = 0;
    std::vector<OperatorSum> S;
    std::vector<OperatorSum> L;
    OperatorSum H;
    std::string name;

    const OperatorSum& s(int i, int j) const { return S[i * n + j]; }
    OperatorSum& s(int i, int j) { return S[i * n + j]; }

    static SLHTriple identity(const SiteSpace& space, int n, std::string name = "");

    // Throws unless H is Hermitian and shapes are consistent.
    void validate() const;
};

// Feed the outputs of g1 into the inputs of g2 (the series product).
// Channel counts must match exactly; there is no implicit padding.
SLHTriple series(const SLHTriple& g2, const SLHTriple& g1);

// Parallel aggregation; a's channels come first.
SLHTriple concat(const SLHTriple& a, const SLHTriple& b);

// Reorder channels: new channel k is old channel out_perm[k] on the output
// side and old in_perm[k] on the input side.  Both must be bijections.
SLHTriple permute_channels(const SLHTriple& g, const std::vector<int>& out_perm,
                           const std::vector<int>& in_perm);
SLHTriple permute_channels(const SLHTriple& g, const std::vector<int>& perm);

// Embed g into an n_total-channel device with g's channels at `positions`
// (ascending) and identity pass-through channels elsewhere.  This realizes
// the padding operation as concatenation followed by a channel permutation.
SLHTriple pad_into(const SLHTriple& g, int n_total, const std::vector<int>& positions);

// Hermitian Hamiltonian plus Lindblad collapse operators.
struct MasterEquation {
    SiteSpace space;
    OperatorSum H;
    std::vector<OperatorSum> collapse;

    int n_channels() const { return static_cast<int>(collapse.size()); }
    void validate() const;
};

// Vacuum-input closed-loop dynamics read off a fully composed triple; the
// scattering matrix drops out.
MasterEquation extract_master_equation(const SLHTriple& g);

// Deviations from the two unitarity identities
//   sum_k S_ik S_jk^dag = delta_ij I,  sum_k S_ki^dag S_kj = delta_ij I,
// reported as the largest l1 coefficient norm over entries (an upper bound
// on the operator-norm deviation).
struct UnitarityReport {
    double residual = 0;
    int worst_i = 0, worst_j = 0;
};
UnitarityReport check_unitary(const std::vector<OperatorSum>& S, int n,
                              const SiteSpace& space);
inline UnitarityReport check_unitary(const SLHTriple& g) {
    return check_unitary(g.S, g.n, g.space);
}

}  // namespace aqec
