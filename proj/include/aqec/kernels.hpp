#pragma once

#include <complex>
#include <vector>

#include "aqec/sparse_matrix.hpp"

namespace aqec {

using Vec = std::vector<cplx>;

// Hot numerical kernels.  Each has a serial reference implementation and an
// OpenMP variant; the parallel forms are row-partitioned so they produce
// bit-identical results to the serial ones for any thread count.  Reductions
// (norms, dots) are serial in all deterministic code paths.
namespace kernels {

// y = A x
void spmv_serial(const SparseMatrix& A, const cplx* x, cplx* y);
void spmv_omp(const SparseMatrix& A, const cplx* x, cplx* y);
inline void spmv(const SparseMatrix& A, const Vec& x, Vec& y, bool parallel) {
    y.resize(A.rows);
    parallel ? spmv_omp(A, x.data(), y.data()) : spmv_serial(A, x.data(), y.data());
}

// y += c x
void axpy_serial(cplx c, const Vec& x, Vec& y);
void axpy_omp(cplx c, const Vec& x, Vec& y);

void scale_serial(cplx c, Vec& x);

double norm2_serial(const Vec& x);   // squared two-norm
double norm2_omp(const Vec& x);     // benchmark only: reduction order varies
cplx dot_serial(const Vec& x, const Vec& y);  // <x|y>

// C (+)= A * B and C (+)= B * A^dagger with dense row-major B, C and sparse A.
// Row-parallel over C; deterministic.
void spmm_left(const SparseMatrix& A, const cplx* B, cplx* C, int64_t bcols,
               bool accumulate, bool parallel);
void spmm_right_adj(const cplx* B, const SparseMatrix& A, cplx* C, int64_t brows,
                    bool accumulate, bool parallel);

}  // namespace kernels

}  // namespace aqec
