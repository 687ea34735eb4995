#include "aqec/integrate.hpp"

#include <cmath>

#include "aqec/dense.hpp"
#include "aqec/errors.hpp"

namespace aqec {

namespace {

struct DenseLindblad {
    const CompiledGenerator& gen;
    int64_t n;
    bool parallel;
    std::vector<cplx> t1, t2;

    DenseLindblad(const CompiledGenerator& g, bool par)
        : gen(g), n(g.dim), parallel(par), t1(n * n), t2(n * n) {}

    // out = -i[H, rho] - {K, rho}/2 + sum_j L_j rho L_j^dag
    void operator()(const std::vector<cplx>& rho, std::vector<cplx>& out) {
        kernels::spmm_left(gen.H, rho.data(), t1.data(), n, false, parallel);
        kernels::spmm_right_adj(rho.data(), gen.H, t2.data(), n, false, parallel);
        const cplx mi(0, -1);
        for (int64_t i = 0; i < n * n; ++i) out[i] = mi * (t1[i] - t2[i]);
        kernels::spmm_left(gen.K, rho.data(), t1.data(), n, false, parallel);
        kernels::spmm_right_adj(rho.data(), gen.K, t2.data(), n, false, parallel);
        for (int64_t i = 0; i < n * n; ++i) out[i] -= 0.5 * (t1[i] + t2[i]);
        for (const SparseMatrix& l : gen.jump_ops) {
            if (l.nnz() == 0) continue;
            kernels::spmm_left(l, rho.data(), t1.data(), n, false, parallel);
            kernels::spmm_right_adj(t1.data(), l, out.data(), n, true, parallel);
        }
    }
};

}  // namespace

std::vector<cplx> pure_density(const Vec& psi) {
    const int64_t n = static_cast<int64_t>(psi.size());
    std::vector<cplx> rho(n * n);
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = 0; j < n; ++j) rho[i * n + j] = psi[i] * std::conj(psi[j]);
    return rho;
}

DenseIntegrationResult integrate_dense(const MasterEquation& me,
                                       const std::vector<cplx>& rho0, const TimeGrid& grid,
                                       double dt, const std::vector<Observable>& observables,
                                       bool parallel) {
    const CompiledGenerator gen = CompiledGenerator::compile(me);
    const int64_t n = gen.dim;
    if (n > 1024)
        throw SolverError("integrate_dense: dimension " + std::to_string(n) +
                          " exceeds the dense guard (1024); use trajectories");
    if (static_cast<int64_t>(rho0.size()) != n * n)
        throw SolverError("integrate_dense: density matrix shape mismatch");

    const double gen_norm = 2.0 * (gen.H.row_sum_norm() + gen.K.row_sum_norm());
    const double dt_stable = gen_norm > 0 ? 0.5 / gen_norm : grid.t_max;
    double dt_used = dt > 0 ? dt : (gen_norm > 0 ? 0.1 / gen_norm : grid.t_max);
    if (dt_used > dt_stable)
        throw SolverError("integrate_dense: dt " + std::to_string(dt_used) +
                          " above the stability bound " + std::to_string(dt_stable));

    DenseIntegrationResult res;
    res.t = grid.times();
    res.dt_used = dt_used;
    for (const Observable& o : observables) res.names.push_back(o.name);
    res.values.assign(observables.size(), std::vector<double>(res.t.size(), 0.0));

    std::vector<cplx> rho = rho0;
    DenseLindblad deriv(gen, parallel);
    std::vector<cplx> k1(n * n), k2(n * n), k3(n * n), k4(n * n), tmp(n * n);

    auto record = [&](size_t idx) {
        for (size_t o = 0; o < observables.size(); ++o)
            res.values[o][idx] =
                std::real(dense::observable_trace(observables[o].op, rho, n));
    };
    auto check_trace = [&](size_t steps_done) {
        const double dev = std::abs(dense::trace(rho, n) - cplx(1, 0));
        if (dev > 1e-8)
            throw SolverError("integrate_dense: trace drift " + std::to_string(dev) +
                              " after " + std::to_string(steps_done) +
                              " steps; reduce dt");
    };

    record(0);
    size_t steps_done = 0;
    for (size_t g = 1; g < res.t.size(); ++g) {
        const double span = res.t[g] - res.t[g - 1];
        const int n_sub = std::max<int>(1, static_cast<int>(std::ceil(span / dt_used)));
        const double h = span / n_sub;
        for (int s = 0; s < n_sub; ++s) {
            deriv(rho, k1);
            for (int64_t i = 0; i < n * n; ++i) tmp[i] = rho[i] + 0.5 * h * k1[i];
            deriv(tmp, k2);
            for (int64_t i = 0; i < n * n; ++i) tmp[i] = rho[i] + 0.5 * h * k2[i];
            deriv(tmp, k3);
            for (int64_t i = 0; i < n * n; ++i) tmp[i] = rho[i] + h * k3[i];
            deriv(tmp, k4);
            const double h6 = h / 6.0;
            for (int64_t i = 0; i < n * n; ++i)
                rho[i] += h6 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            ++steps_done;
        }
        check_trace(steps_done);
        record(g);
    }

    res.trace_dev = std::abs(dense::trace(rho, n) - cplx(1, 0));
    res.herm_dev = dense::hermiticity_deviation(rho, n);
    res.min_eig = dense::min_eigenvalue(rho, n);
    res.rho_final = std::move(rho);
    return res;
}

}  // namespace aqec
