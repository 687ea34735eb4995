#pragma once

#include "aqec/trajectory.hpp"

namespace aqec {

// Fixed-step RK4 on the vectorized density matrix.  Refused above dim 2^10;
// the full network is served by trajectories instead.
struct DenseIntegrationResult {
    std::vector<double> t;
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;  // [obs][time], real parts
    std::vector<cplx> rho_final;              // row-major dim x dim
    double trace_dev = 0;
    double herm_dev = 0;
    double min_eig = 0;
    double dt_used = 0;
};

DenseIntegrationResult integrate_dense(const MasterEquation& me,
                                       const std::vector<cplx>& rho0, const TimeGrid& grid,
                                       double dt, const std::vector<Observable>& observables,
                                       bool parallel = true);

// |psi><psi| as a dense matrix.
std::vector<cplx> pure_density(const Vec& psi);

}  // namespace aqec
