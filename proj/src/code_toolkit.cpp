#include "aqec/code_toolkit.hpp"

#include <cmath>
#include <stdexcept>

#include "aqec/sparse_matrix.hpp"

namespace aqec {

namespace {

PauliString row_of(Pauli p, int row) {
    PauliString s;
    for (int c = 1; c <= 3; ++c) s = s * PauliString::single(row, c, p);
    return s;
}

PauliString col_of(Pauli p, int col) {
    PauliString s;
    for (int r = 1; r <= 3; ++r) s = s * PauliString::single(r, col, p);
    return s;
}

PauliString domino_x(int row, int col) {  // X_{row,col} X_{row+1,col}
    return PauliString::single(row, col, Pauli::X) *
           PauliString::single(row + 1, col, Pauli::X);
}

PauliString domino_z(int row, int col) {  // Z_{row,col} Z_{row,col+1}
    return PauliString::single(row, col, Pauli::Z) *
           PauliString::single(row, col + 1, Pauli::Z);
}

// Apply the projector (1 + G)/2 for each commuting constraint G in turn.
Vec project_joint_plus_one(const SiteSpace& space, const std::vector<OperatorSum>& gens,
                           Vec v) {
    Vec gv(v.size());
    for (const OperatorSum& g : gens) {
        const SparseMatrix m = to_matrix(g, space);
        kernels::spmv(m, v, gv, /*parallel=*/false);
        for (size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + gv[i]);
    }
    const double n2 = kernels::norm2_serial(v);
    if (n2 < 1e-12)
        throw std::logic_error("project_joint_plus_one: seed state annihilated");
    kernels::scale_serial(cplx(1.0 / std::sqrt(n2), 0), v);
    return v;
}

SiteSpace memory_space() {
    std::vector<SiteLabel> l;
    for (int r = 1; r <= 3; ++r)
        for (int c = 1; c <= 3; ++c) l.push_back(SiteLabel::memory(r, c));
    return SiteSpace(std::move(l));
}

}  // namespace

std::array<PauliString, 4> stabilizer_generators() {
    return {col_of(Pauli::Z, 1) * col_of(Pauli::Z, 2),
            col_of(Pauli::Z, 2) * col_of(Pauli::Z, 3),
            row_of(Pauli::X, 1) * row_of(Pauli::X, 2),
            row_of(Pauli::X, 2) * row_of(Pauli::X, 3)};
}

std::vector<PauliString> gauge_group_generators() {
    std::vector<PauliString> g;
    for (int c = 1; c <= 3; ++c)
        for (int r = 1; r <= 2; ++r) g.push_back(domino_x(r, c));
    for (int r = 1; r <= 3; ++r)
        for (int c = 1; c <= 2; ++c) g.push_back(domino_z(r, c));
    return g;
}

CodeFrame code_frame() {
    CodeFrame f;
    f.x_logical = row_of(Pauli::X, 1);
    f.z_logical = col_of(Pauli::Z, 1);
    PauliString i_phase;
    i_phase.phase_pow = 1;
    f.y_logical = i_phase * f.x_logical * f.z_logical;  // Y_L = i X_L Z_L
    f.x_gauge = {domino_x(1, 1), domino_x(2, 1), domino_x(1, 3), domino_x(2, 3)};
    f.z_gauge = {domino_z(1, 1), domino_z(3, 1), domino_z(1, 2), domino_z(3, 2)};
    validate_code_frame(f);
    return f;
}

void validate_code_frame(const CodeFrame& f) {
    const auto stab = stabilizer_generators();
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("code frame validation: ") + what);
    };
    require(!f.x_logical.commutes_with(f.z_logical), "X_L and Z_L must anticommute");
    for (const PauliString& s : stab) {
        require(f.x_logical.commutes_with(s), "X_L must commute with the stabilizer");
        require(f.z_logical.commutes_with(s), "Z_L must commute with the stabilizer");
        for (int k = 0; k < 4; ++k) {
            require(f.x_gauge[k].commutes_with(s), "gauge X must commute with the stabilizer");
            require(f.z_gauge[k].commutes_with(s), "gauge Z must commute with the stabilizer");
        }
    }
    for (int k = 0; k < 4; ++k) {
        require(!f.x_gauge[k].commutes_with(f.z_gauge[k]), "gauge pair must anticommute");
        require(f.x_gauge[k].commutes_with(f.x_logical), "gauge X vs X_L");
        require(f.x_gauge[k].commutes_with(f.z_logical), "gauge X vs Z_L");
        require(f.z_gauge[k].commutes_with(f.x_logical), "gauge Z vs X_L");
        require(f.z_gauge[k].commutes_with(f.z_logical), "gauge Z vs Z_L");
        for (int l = 0; l < 4; ++l) {
            if (l == k) continue;
            require(f.x_gauge[k].commutes_with(f.z_gauge[l]), "distinct gauge pairs");
            require(f.x_gauge[k].commutes_with(f.x_gauge[l]), "gauge X pair");
            require(f.z_gauge[k].commutes_with(f.z_gauge[l]), "gauge Z pair");
        }
    }
}

SyndromeVector syndrome_of(const PauliString& e) {
    const auto stab = stabilizer_generators();
    SyndromeVector s;
    for (int k = 0; k < 4; ++k) s.a[k] = e.commutes_with(stab[k]) ? 1 : -1;
    return s;
}

PauliString decode_recovery(const SyndromeVector& s) {
    PauliString r;
    // A bit-flip anticommuting with Z(1&2)/Z(2&3) localizes to a column;
    // any row-3 X in that column restores the syndrome.
    if (s.a[0] < 0 && s.a[1] > 0) r = r * PauliString::single(3, 1, Pauli::X);
    if (s.a[0] < 0 && s.a[1] < 0) r = r * PauliString::single(3, 2, Pauli::X);
    if (s.a[0] > 0 && s.a[1] < 0) r = r * PauliString::single(3, 3, Pauli::X);
    // Phase flips localize to a row; recover with column-1 Z.
    if (s.a[2] < 0 && s.a[3] > 0) r = r * PauliString::single(1, 1, Pauli::Z);
    if (s.a[2] < 0 && s.a[3] < 0) r = r * PauliString::single(2, 1, Pauli::Z);
    if (s.a[2] > 0 && s.a[3] < 0) r = r * PauliString::single(3, 1, Pauli::Z);
    return r;
}

std::vector<DecoderCase> audit_decoder() {
    const CodeFrame f = code_frame();
    const auto stab = stabilizer_generators();
    std::vector<PauliString> errors{PauliString::identity()};
    for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Y})
        for (int r = 1; r <= 3; ++r)
            for (int c = 1; c <= 3; ++c) errors.push_back(PauliString::single(r, c, p));

    std::vector<DecoderCase> cases;
    for (const PauliString& e : errors) {
        DecoderCase dc;
        dc.error = e;
        dc.syndrome = syndrome_of(e);
        dc.recovery = decode_recovery(dc.syndrome);
        const PauliString net = dc.recovery * e;
        dc.pass = net.commutes_with(f.x_logical) && net.commutes_with(f.z_logical);
        for (const PauliString& s : stab) dc.pass = dc.pass && net.commutes_with(s);
        cases.push_back(dc);
    }
    return cases;
}

Vec memory_codeword() {
    const SiteSpace space = memory_space();
    const CodeFrame f = code_frame();
    std::vector<OperatorSum> gens;
    for (const PauliString& s : stabilizer_generators())
        gens.push_back(s.to_operator_sum(space));
    gens.push_back(f.y_logical.to_operator_sum(space));
    for (const PauliString& z : f.z_gauge) gens.push_back(z.to_operator_sum(space));

    Vec seed(space.dim(), cplx(0, 0));
    seed[0] = 1.0;  // |0...0>: already +1 under every Z-type constraint
    return project_joint_plus_one(space, gens, std::move(seed));
}

Vec initial_state() {
    const Vec mem = memory_codeword();
    Vec full(mem.size() * 16, cplx(0, 0));
    // Relay sites are the low four bits; |+> is relay basis state 0.
    for (size_t m = 0; m < mem.size(); ++m) full[m * 16] = mem[m];
    return full;
}

OperatorSum fidelity_operator() {
    const SiteSpace space = SiteSpace::network();
    const CodeFrame f = code_frame();
    const OperatorSum one = OperatorSum::identity(space);
    OperatorSum proj = one;
    for (const PauliString& s : stabilizer_generators())
        proj = proj * ((one + s.to_operator_sum(space)) * cplx(0.5, 0));
    proj = proj * ((one + f.y_logical.to_operator_sum(space)) * cplx(0.5, 0));
    return proj;
}

double fidelity_dual_construction_residual() {
    const SiteSpace space = memory_space();
    const CodeFrame f = code_frame();
    const int64_t dim = space.dim();
    const Vec psi = memory_codeword();

    // rho = |psi><psi| with the four gauge qubits depolarized, times 2^4.
    std::vector<cplx> rho(dim * dim);
    for (int64_t i = 0; i < dim; ++i)
        for (int64_t j = 0; j < dim; ++j) rho[i * dim + j] = psi[i] * std::conj(psi[j]);
    std::vector<cplx> tmp(dim * dim), acc(dim * dim);
    for (int k = 0; k < 4; ++k) {
        PauliString i_phase;
        i_phase.phase_pow = 1;
        const PauliString ops[3] = {f.x_gauge[k], f.z_gauge[k],
                                    i_phase * f.x_gauge[k] * f.z_gauge[k]};
        acc = rho;
        for (const PauliString& p : ops) {
            const SparseMatrix m = to_matrix(p.to_operator_sum(space), space);
            kernels::spmm_left(m, rho.data(), tmp.data(), dim, false, true);
            kernels::spmm_right_adj(tmp.data(), m, acc.data(), dim, true, true);
        }
        for (cplx& v : acc) v *= 0.25;
        rho = acc;
    }
    for (cplx& v : rho) v *= 16.0;

    // Projector form on the memory factor.
    const OperatorSum one = OperatorSum::identity(space);
    OperatorSum proj = one;
    for (const PauliString& s : stabilizer_generators())
        proj = proj * ((one + s.to_operator_sum(space)) * cplx(0.5, 0));
    proj = proj * ((one + f.y_logical.to_operator_sum(space)) * cplx(0.5, 0));
    const SparseMatrix pm = to_matrix(proj, space);

    double dev = 0;
    for (int64_t i = 0; i < dim; ++i) {
        int64_t k = pm.row_ptr[i];
        for (int64_t j = 0; j < dim; ++j) {
            cplx pv(0, 0);
            if (k < pm.row_ptr[i + 1] && pm.col[k] == j) pv = pm.val[k++];
            dev = std::max(dev, std::abs(pv - rho[i * dim + j]));
        }
    }
    return dev;
}

double bare_qubit_fidelity(double gamma, double t) {
    return 0.5 * (1.0 + std::exp(-4.0 * gamma * t));
}

Vec column_model_initial_state() {
    const SiteSpace space = SiteSpace::column_model();
    auto zz = [&](int r1, int r2) {
        return OperatorSum::pauli(space, r1 - 1, Pauli::Z) *
               OperatorSum::pauli(space, r2 - 1, Pauli::Z);
    };
    const OperatorSum y_l = OperatorSum::pauli(space, 0, Pauli::Y) *
                            OperatorSum::pauli(space, 1, Pauli::X) *
                            OperatorSum::pauli(space, 2, Pauli::X);
    // Memory factor: joint +1 state of Z1Z2, Z2Z3, Y_L; relays in |+> are
    // already basis state 0 of the seed.
    Vec seed(space.dim(), cplx(0, 0));
    seed[0] = 1.0;
    return project_joint_plus_one(space, {zz(1, 2), zz(2, 3), y_l}, std::move(seed));
}

OperatorSum column_model_fidelity_operator() {
    const SiteSpace space = SiteSpace::column_model();
    const OperatorSum one = OperatorSum::identity(space);
    auto zz = [&](int r1, int r2) {
        return OperatorSum::pauli(space, r1 - 1, Pauli::Z) *
               OperatorSum::pauli(space, r2 - 1, Pauli::Z);
    };
    const OperatorSum y_l = OperatorSum::pauli(space, 0, Pauli::Y) *
                            OperatorSum::pauli(space, 1, Pauli::X) *
                            OperatorSum::pauli(space, 2, Pauli::X);
    return ((one + zz(1, 2)) * cplx(0.5, 0)) * ((one + zz(2, 3)) * cplx(0.5, 0)) *
           ((one + y_l) * cplx(0.5, 0));
}

}  // namespace aqec
