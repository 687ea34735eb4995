#include "aqec/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "aqec/errors.hpp"
#include "aqec/rng.hpp"

namespace aqec {

std::vector<double> TimeGrid::times() const {
    validate();
    std::vector<double> t(n_points);
    const double h = t_max / (n_points - 1);
    for (int i = 0; i < n_points; ++i) t[i] = h * i;
    t.back() = t_max;
    return t;
}

void TimeGrid::validate() const {
    if (n_points < 2) throw ConfigError("TimeGrid: n_points must be at least 2");
    if (t_max <= 0) throw ConfigError("TimeGrid: t_max must be positive");
}

CompiledGenerator CompiledGenerator::compile(const MasterEquation& me) {
    me.validate();
    CompiledGenerator g;
    g.space = me.space;
    g.dim = me.space.dim();

    OperatorSum k_sym = OperatorSum::zero(me.space);
    for (const OperatorSum& l : me.collapse) k_sym += l.adjoint() * l;
    const OperatorSum h_eff_sym = me.H + k_sym * cplx(0, -0.5);

    g.H = to_matrix(me.H);
    g.K = to_matrix(k_sym);
    g.H_eff = to_matrix(h_eff_sym);

    double c = std::numeric_limits<double>::infinity();
    for (int64_t i = 0; i < g.dim; ++i) c = std::min(c, g.K.diag_entry(i).real());
    g.uniform_rate = std::max(0.0, std::isfinite(c) ? c : 0.0);

    g.A = g.H_eff.add_scaled(SparseMatrix::identity(g.dim), cplx(0, 0.5 * g.uniform_rate));
    g.deriv = g.A.scaled(cplx(0, -1));

    g.jump_ops.reserve(me.collapse.size());
    for (const OperatorSum& l : me.collapse) g.jump_ops.push_back(to_matrix(l));
    return g;
}

double CompiledGenerator::default_dt() const {
    const double norm = A.row_sum_norm();
    if (norm <= 0) return std::numeric_limits<double>::infinity();
    return 0.1 / norm;
}

namespace {

// Fixed-step RK4 for dpsi/dt = deriv * psi, one step of size h.
struct Rk4Workspace {
    Vec k1, k2, k3, k4, tmp;
    void resize(size_t n) {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        tmp.resize(n);
    }
};

void rk4_step(const SparseMatrix& deriv, Vec& psi, double h, Rk4Workspace& w) {
    const size_t n = psi.size();
    kernels::spmv_serial(deriv, psi.data(), w.k1.data());
    for (size_t i = 0; i < n; ++i) w.tmp[i] = psi[i] + 0.5 * h * w.k1[i];
    kernels::spmv_serial(deriv, w.tmp.data(), w.k2.data());
    for (size_t i = 0; i < n; ++i) w.tmp[i] = psi[i] + 0.5 * h * w.k2[i];
    kernels::spmv_serial(deriv, w.tmp.data(), w.k3.data());
    for (size_t i = 0; i < n; ++i) w.tmp[i] = psi[i] + h * w.k3[i];
    kernels::spmv_serial(deriv, w.tmp.data(), w.k4.data());
    const double h6 = h / 6.0;
    for (size_t i = 0; i < n; ++i)
        psi[i] += h6 * (w.k1[i] + 2.0 * (w.k2[i] + w.k3[i]) + w.k4[i]);
}

struct TrajectoryEngine {
    const CompiledGenerator& gen;
    TrajectoryRng rng;
    Vec psi;            // unnormalized wave function with the uniform decay removed
    double log_decay;   // log of the analytic uniform norm^2 factor
    double target;      // waiting-time threshold for norm^2
    double t_now = 0;
    Rk4Workspace work;
    Vec save, probe, jv;
    TrajectoryResult* result;
    bool keep_jump_log;

    static constexpr double norm2_tol = 1e-10;

    TrajectoryEngine(const CompiledGenerator& g, const Vec& psi0, uint64_t seed, int index,
                     TrajectoryResult* res, bool keep_log)
        : gen(g), rng(seed, static_cast<uint64_t>(index)), psi(psi0), log_decay(0),
          result(res), keep_jump_log(keep_log) {
        work.resize(psi.size());
        save.resize(psi.size());
        probe.resize(psi.size());
        jv.resize(psi.size());
        target = rng.uniform_open_closed();
    }

    double norm2() const {
        return std::exp(log_decay) * kernels::norm2_serial(psi);
    }

    // Decayed norm^2 after integrating a fresh copy of `save` forward by tau.
    double norm2_at(double tau, double log0) {
        probe = save;
        rk4_step(gen.deriv, probe, tau, work);
        return std::exp(log0 - gen.uniform_rate * tau) * kernels::norm2_serial(probe);
    }

    void do_jump() {
        // Channel selection with probability ||L_j psi||^2 / <psi|K|psi>;
        // the cumulative walk stops early once the target weight is passed.
        kernels::spmv_serial(gen.K, psi.data(), work.tmp.data());
        const double total = std::real(kernels::dot_serial(psi, work.tmp));
        if (!(total > 0))
            throw SolverError("trajectory: zero total jump weight at a forced jump");
        const double want = rng.uniform_open_closed() * total;
        double cum = 0;
        int chosen = -1, last_eval = -1;
        double chosen_w = 0;
        for (size_t j = 0; j < gen.jump_ops.size(); ++j) {
            kernels::spmv_serial(gen.jump_ops[j], psi.data(), jv.data());
            last_eval = static_cast<int>(j);
            const double w = kernels::norm2_serial(jv);
            if (w > 0) {
                chosen = static_cast<int>(j);
                chosen_w = w;
            }
            cum += w;
            if (cum >= want && w > 0) break;
        }
        if (chosen < 0)
            throw SolverError("trajectory: zero total jump weight at a forced jump");
        if (last_eval != chosen)
            kernels::spmv_serial(gen.jump_ops[chosen], psi.data(), jv.data());
        const double inv = 1.0 / std::sqrt(chosen_w);
        for (size_t i = 0; i < psi.size(); ++i) psi[i] = jv[i] * inv;
        log_decay = 0;
        target = rng.uniform_open_closed();
        ++result->n_jumps;
        if (keep_jump_log) result->jumps.emplace_back(t_now, chosen + 1);
    }

    // Find the jump time inside (0, h] given norm2 crossed the target during
    // the last step from `save`.  Log-linear interpolation with bisection
    // safeguards; the uniform-damping split makes the first guess nearly
    // exact.  Leaves psi at the jump time.
    void locate_jump(double h, double log0, double n2_lo, double n2_hi) {
        double lo = 0, hi = h;
        double tau = hi, n2_tau = n2_hi;
        probe = psi;  // psi currently holds the state at h
        for (int it = 0; it < 200 && std::abs(n2_tau - target) > norm2_tol; ++it) {
            if (hi - lo < 1e-15 * h) break;
            double guess =
                lo + std::log(n2_lo / target) / std::log(n2_lo / n2_hi) * (hi - lo);
            if (!(guess > lo && guess < hi)) guess = 0.5 * (lo + hi);
            const double n2_guess = norm2_at(guess, log0);
            if (n2_guess > target) {
                lo = guess;
                n2_lo = n2_guess;
            } else {
                hi = guess;
                n2_hi = n2_guess;
            }
            tau = guess;
            n2_tau = n2_guess;
        }
        psi = probe;  // state at tau from the last evaluation
        log_decay = log0 - gen.uniform_rate * tau;
        t_now += tau;
    }

    // Advance by h, handling any number of jumps inside the window.
    void advance(double h) {
        double remaining = h;
        while (remaining > 0) {
            if (norm2() <= target) {
                do_jump();
                continue;
            }
            const double log0 = log_decay;
            const double n2_start = norm2();
            save = psi;
            rk4_step(gen.deriv, psi, remaining, work);
            log_decay -= gen.uniform_rate * remaining;
            const double n2_end = norm2();
            if (n2_end > target) {
                t_now += remaining;
                return;
            }
            const double t_before = t_now;
            locate_jump(remaining, log0, n2_start, n2_end);
            do_jump();
            remaining -= (t_now - t_before);
        }
    }

    void record(const std::vector<Observable>& obs, int k) {
        const double n2 = kernels::norm2_serial(psi);
        for (size_t o = 0; o < obs.size(); ++o) {
            kernels::spmv_serial(obs[o].op, psi.data(), work.tmp.data());
            result->observables[o][k] =
                std::real(kernels::dot_serial(psi, work.tmp)) / n2;
        }
    }
};

}  // namespace

TrajectoryResult run_trajectory(const CompiledGenerator& gen, const Vec& psi0,
                                const TimeGrid& grid, double dt,
                                const std::vector<Observable>& observables,
                                uint64_t master_seed, int traj_index, bool keep_jump_log) {
    if (static_cast<int64_t>(psi0.size()) != gen.dim)
        throw SolverError("run_trajectory: state dimension mismatch");
    if (std::abs(kernels::norm2_serial(psi0) - 1.0) > 1e-9)
        throw SolverError("run_trajectory: initial state is not normalized");

    TrajectoryResult res;
    res.t = grid.times();
    res.master_seed = master_seed;
    res.traj_index = traj_index;
    res.observables.assign(observables.size(), std::vector<double>(res.t.size(), 0.0));

    TrajectoryEngine eng(gen, psi0, master_seed, traj_index, &res, keep_jump_log);

    const double dt_target = dt > 0 ? dt : gen.default_dt();
    eng.record(observables, 0);
    for (size_t k = 1; k < res.t.size(); ++k) {
        const double span = res.t[k] - res.t[k - 1];
        const int n_sub = std::isfinite(dt_target)
                              ? std::max<int>(1, static_cast<int>(std::ceil(span / dt_target)))
                              : 1;
        const double h = span / n_sub;
        for (int s = 0; s < n_sub; ++s) eng.advance(h);
        eng.record(observables, static_cast<int>(k));
    }
    return res;
}

EnsembleEstimate run_ensemble(const CompiledGenerator& gen, const Vec& psi0,
                              const TimeGrid& grid, double dt, int n_traj,
                              uint64_t master_seed, int workers,
                              const std::vector<Observable>& observables) {
    if (n_traj < 1) throw ConfigError("run_ensemble: n_traj must be at least 1");
    const std::vector<double> t = grid.times();
    const size_t n_obs = observables.size();

    std::vector<std::vector<std::vector<double>>> samples(
        n_traj, std::vector<std::vector<double>>());
    std::vector<int64_t> jump_counts(n_traj, 0);

    std::exception_ptr failure = nullptr;
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int k = 0; k < n_traj; ++k) {
        try {
            TrajectoryResult r = run_trajectory(gen, psi0, grid, dt, observables,
                                                master_seed, k, /*keep_jump_log=*/false);
            samples[k] = std::move(r.observables);
            jump_counts[k] = r.n_jumps;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    EnsembleEstimate est;
    est.t = t;
    est.n_traj = n_traj;
    est.master_seed = master_seed;
    est.dt_used = dt > 0 ? dt : gen.default_dt();
    for (const Observable& o : observables) est.names.push_back(o.name);
    est.mean.assign(n_obs, std::vector<double>(t.size(), 0.0));
    est.stderr_.assign(n_obs, std::vector<double>(t.size(), 0.0));

    // Serial reduction in trajectory order keeps the result independent of
    // the worker count.
    for (size_t o = 0; o < n_obs; ++o) {
        for (size_t i = 0; i < t.size(); ++i) {
            double m = 0;
            for (int k = 0; k < n_traj; ++k) m += samples[k][o][i];
            m /= n_traj;
            double var = 0;
            for (int k = 0; k < n_traj; ++k) {
                const double d = samples[k][o][i] - m;
                var += d * d;
            }
            est.mean[o][i] = m;
            est.stderr_[o][i] =
                n_traj > 1 ? std::sqrt(var / (n_traj - 1) / n_traj) : 0.0;
        }
    }
    double j = 0;
    for (int k = 0; k < n_traj; ++k) j += static_cast<double>(jump_counts[k]);
    est.mean_jumps = j / n_traj;
    return est;
}

double steady_state_residual(const CompiledGenerator& gen, const Vec& psi) {
    // d rho = u psi^dag + psi u^dag + v psi^dag + psi v^dag + sum_j w_j w_j^dag
    // with u = -iH psi, v = -K psi / 2, w_j = L_j psi.
    std::vector<Vec> left, right;
    Vec tmp(psi.size());

    kernels::spmv_serial(gen.H, psi.data(), tmp.data());
    Vec u(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) u[i] = cplx(0, -1) * tmp[i];
    kernels::spmv_serial(gen.K, psi.data(), tmp.data());
    Vec v(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) v[i] = -0.5 * tmp[i];

    left.push_back(u);
    right.push_back(psi);
    left.push_back(psi);
    right.push_back(u);
    left.push_back(v);
    right.push_back(psi);
    left.push_back(psi);
    right.push_back(v);
    for (const SparseMatrix& l : gen.jump_ops) {
        kernels::spmv_serial(l, psi.data(), tmp.data());
        left.push_back(tmp);
        right.push_back(tmp);
    }
    // But rho-dot = u psi^dag + (u psi^dag)^dag ... : the adjoint pairs swap
    // left and right, handled by the list above; w terms are self-paired.
    double fro2 = 0;
    const size_t m = left.size();
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b)
            fro2 += std::real(kernels::dot_serial(left[b], left[a]) *
                              kernels::dot_serial(right[a], right[b]));
    return std::sqrt(std::max(0.0, fro2));
}

}  // namespace aqec
