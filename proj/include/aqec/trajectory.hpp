#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aqec/kernels.hpp"
#include "aqec/slh.hpp"
#include "aqec/sparse_matrix.hpp"

namespace aqec {

// Uniform time grid from 0 to t_max inclusive.
struct TimeGrid {
    double t_max = 1.0;
    int n_points = 11;

    std::vector<double> times() const;
    void validate() const;
};

struct Observable {
    std::string name;
    SparseMatrix op;
};

// Master equation compiled for time evolution.  H_eff = H - (i/2) K with
// K = sum_j L_j^dag L_j.  The uniform part of the damping, c = min diag K,
// is split off and handled in closed form by the integrator: the remainder
// A = H_eff + (i c / 2) I sets the step size.  For this network K is exactly
// proportional to the identity, so A is Hermitian.
struct CompiledGenerator {
    SiteSpace space;
    int64_t dim = 0;
    SparseMatrix H;
    SparseMatrix K;
    SparseMatrix H_eff;
    SparseMatrix A;
    SparseMatrix deriv;  // -i A, the RK4 right-hand side
    double uniform_rate = 0;
    std::vector<SparseMatrix> jump_ops;

    static CompiledGenerator compile(const MasterEquation& me);

    // 0.1 / rowsum(A), the default substep.
    double default_dt() const;
};

struct TrajectoryResult {
    std::vector<double> t;
    std::vector<std::vector<double>> observables;  // [obs][time]
    std::vector<std::pair<double, int>> jumps;     // (time, 1-based channel)
    int64_t n_jumps = 0;
    uint64_t master_seed = 0;
    int traj_index = 0;
};

TrajectoryResult run_trajectory(const CompiledGenerator& gen, const Vec& psi0,
                                const TimeGrid& grid, double dt,
                                const std::vector<Observable>& observables,
                                uint64_t master_seed, int traj_index,
                                bool keep_jump_log = true);

struct EnsembleEstimate {
    std::vector<double> t;
    std::vector<std::string> names;
    std::vector<std::vector<double>> mean;     // [obs][time]
    std::vector<std::vector<double>> stderr_;  // sample stddev / sqrt(N)
    int n_traj = 0;
    uint64_t master_seed = 0;
    double mean_jumps = 0;
    double dt_used = 0;
};

// Deterministic parallel ensemble: trajectory k derives its stream from
// (master_seed, k), per-trajectory samples are stored and reduced in index
// order, so the estimate is bit-identical for any worker count.
EnsembleEstimate run_ensemble(const CompiledGenerator& gen, const Vec& psi0,
                              const TimeGrid& grid, double dt, int n_traj,
                              uint64_t master_seed, int workers,
                              const std::vector<Observable>& observables);

// Frobenius norm of the generator applied to the pure state |psi><psi|,
// computed from outer-product structure without forming the density matrix.
double steady_state_residual(const CompiledGenerator& gen, const Vec& psi);

}  // namespace aqec
