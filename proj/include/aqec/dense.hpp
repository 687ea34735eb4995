#pragma once

#include <complex>
#include <vector>

#include "aqec/kernels.hpp"

namespace aqec {

// Small dense helpers for density matrices (row-major vectors of dim*dim).
namespace dense {

cplx trace(const std::vector<cplx>& a, int64_t n);
double hermiticity_deviation(const std::vector<cplx>& a, int64_t n);

// Tr(O rho) for sparse O and dense rho.
cplx observable_trace(const SparseMatrix& op, const std::vector<cplx>& rho, int64_t n);

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps
// (intended for n <= 256).
std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int64_t n);

// Smallest eigenvalue: exact Jacobi up to n = 256, power-iteration estimate
// above that.
double min_eigenvalue(const std::vector<cplx>& a, int64_t n);

}  // namespace dense

}  // namespace aqec
