#include "aqec/slh.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqec {

SLHTriple SLHTriple::identity(const SiteSpace& space, int n, std::string name) {
    SLHTriple g;
    g.space = space;
    g.n = n;
    g.name = name.empty() ? "I" + std::to_string(n) : std::move(name);
    g.S.assign(n * n, OperatorSum::zero(space));
    for (int i = 0; i < n; ++i) g.s(i, i) = OperatorSum::identity(space);
    g.L.assign(n, OperatorSum::zero(space));
    g.H = OperatorSum::zero(space);
    return g;
}

void SLHTriple::validate() const {
    if (n < 0 || S.size() != static_cast<size_t>(n) * n || L.size() != static_cast<size_t>(n))
        throw std::logic_error("SLHTriple '" + name + "': inconsistent shapes");
    if (!H.is_hermitian())
        throw std::logic_error("SLHTriple '" + name + "': Hamiltonian is not Hermitian");
}

SLHTriple series(const SLHTriple& g2, const SLHTriple& g1) {
    if (g1.n != g2.n)
        throw std::invalid_argument(
            "series: channel count mismatch composing '" + g2.name + "' (" +
            std::to_string(g2.n) + " channels) after '" + g1.name + "' (" +
            std::to_string(g1.n) + " channels)");
    if (!(g1.space == g2.space))
        throw std::invalid_argument("series: operands live on different site spaces");
    const int n = g1.n;
    SLHTriple r;
    r.space = g1.space;
    r.n = n;
    r.name = g2.name + "<" + g1.name;
    r.S.assign(n * n, OperatorSum::zero(r.space));
    r.L.assign(n, OperatorSum::zero(r.space));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            OperatorSum acc = OperatorSum::zero(r.space);
            for (int k = 0; k < n; ++k) acc += g2.s(i, k) * g1.s(k, j);
            r.s(i, j) = std::move(acc);
        }
        OperatorSum l = g2.L[i];
        for (int k = 0; k < n; ++k) l += g2.s(i, k) * g1.L[k];
        r.L[i] = std::move(l);
    }
    OperatorSum cross = OperatorSum::zero(r.space);  // L2^dag S2 L1
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cross += g2.L[i].adjoint() * g2.s(i, j) * g1.L[j];
    r.H = g1.H + g2.H + cross.im_part();
    return r;
}

SLHTriple concat(const SLHTriple& a, const SLHTriple& b) {
    if (!(a.space == b.space))
        throw std::invalid_argument("concat: operands live on different site spaces");
    SLHTriple r;
    r.space = a.space;
    r.n = a.n + b.n;
    r.name = a.name + "+" + b.name;
    r.S.assign(r.n * r.n, OperatorSum::zero(r.space));
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.s(i, j) = a.s(i, j);
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) r.s(a.n + i, a.n + j) = b.s(i, j);
    r.L = a.L;
    r.L.insert(r.L.end(), b.L.begin(), b.L.end());
    r.H = a.H + b.H;
    return r;
}

namespace {
void check_perm(const std::vector<int>& p, int n, const char* which) {
    if (static_cast<int>(p.size()) != n)
        throw std::invalid_argument(std::string("permute_channels: ") + which +
                                    " permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument(std::string("permute_channels: ") + which +
                                        " permutation is not a bijection");
        seen[v] = true;
    }
}
}  // namespace

SLHTriple permute_channels(const SLHTriple& g, const std::vector<int>& out_perm,
                           const std::vector<int>& in_perm) {
    check_perm(out_perm, g.n, "output");
    check_perm(in_perm, g.n, "input");
    SLHTriple r;
    r.space = g.space;
    r.n = g.n;
    r.name = g.name + "/perm";
    r.S.assign(g.n * g.n, OperatorSum::zero(r.space));
    r.L.assign(g.n, OperatorSum::zero(r.space));
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) r.s(i, j) = g.s(out_perm[i], in_perm[j]);
        r.L[i] = g.L[out_perm[i]];
    }
    r.H = g.H;
    return r;
}

SLHTriple permute_channels(const SLHTriple& g, const std::vector<int>& perm) {
    return permute_channels(g, perm, perm);
}

SLHTriple pad_into(const SLHTriple& g, int n_total, const std::vector<int>& positions) {
    if (static_cast<int>(positions.size()) != g.n)
        throw std::invalid_argument("pad_into: need one position per channel of g");
    if (!std::is_sorted(positions.begin(), positions.end()))
        throw std::invalid_argument("pad_into: positions must be ascending");
    SLHTriple wide = concat(g, SLHTriple::identity(g.space, n_total - g.n));
    // new channel positions[i] <- old i; remaining new channels take the
    // identity channels g.n, g.n+1, ... in order.
    std::vector<int> perm(n_total, -1);
    for (int i = 0; i < g.n; ++i) perm[positions[i]] = i;
    int next = g.n;
    for (int k = 0; k < n_total; ++k)
        if (perm[k] < 0) perm[k] = next++;
    SLHTriple r = permute_channels(wide, perm);
    r.name = g.name + "/pad";
    return r;
}

MasterEquation extract_master_equation(const SLHTriple& g) {
    MasterEquation me{g.space, g.H, g.L};
    me.validate();
    return me;
}

void MasterEquation::validate() const {
    if (!H.is_hermitian())
        throw std::logic_error("MasterEquation: Hamiltonian is not Hermitian");
}

UnitarityReport check_unitary(const std::vector<OperatorSum>& S, int n,
                              const SiteSpace& space) {
    UnitarityReport rep;
    const OperatorSum id = OperatorSum::identity(space);
    auto probe = [&](const OperatorSum& d, int i, int j) {
        const double r = d.coeff_l1();
        if (r > rep.residual) {
            rep.residual = r;
            rep.worst_i = i;
            rep.worst_j = j;
        }
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            OperatorSum row = OperatorSum::zero(space);   // sum_k S_ik S_jk^dag
            OperatorSum colm = OperatorSum::zero(space);  // sum_k S_ki^dag S_kj
            for (int k = 0; k < n; ++k) {
                row += S[i * n + k] * S[j * n + k].adjoint();
                colm += S[k * n + i].adjoint() * S[k * n + j];
            }
            if (i == j) {
                row = row - id;
                colm = colm - id;
            }
            probe(row, i, j);
            probe(colm, i, j);
        }
    }
    return rep;
}

}  // namespace aqec
