#include "aqec/kernels.hpp"

namespace aqec::kernels {

void spmv_serial(const SparseMatrix& A, const cplx* x, cplx* y) {
    for (int64_t i = 0; i < A.rows; ++i) {
        cplx s{0, 0};
        for (int64_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            s += A.val[k] * x[A.col[k]];
        y[i] = s;
    }
}

void spmv_omp(const SparseMatrix& A, const cplx* x, cplx* y) {
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < A.rows; ++i) {
        cplx s{0, 0};
        for (int64_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            s += A.val[k] * x[A.col[k]];
        y[i] = s;
    }
}

void axpy_serial(cplx c, const Vec& x, Vec& y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

void axpy_omp(cplx c, const Vec& x, Vec& y) {
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < static_cast<int64_t>(x.size()); ++i) y[i] += c * x[i];
}

void scale_serial(cplx c, Vec& x) {
    for (cplx& v : x) v *= c;
}

double norm2_serial(const Vec& x) {
    double s = 0;
    for (const cplx& v : x) s += std::norm(v);
    return s;
}

double norm2_omp(const Vec& x) {
    double s = 0;
#pragma omp parallel for reduction(+ : s) schedule(static)
    for (int64_t i = 0; i < static_cast<int64_t>(x.size()); ++i) s += std::norm(x[i]);
    return s;
}

cplx dot_serial(const Vec& x, const Vec& y) {
    cplx s{0, 0};
    for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

void spmm_left(const SparseMatrix& A, const cplx* B, cplx* C, int64_t bcols,
               bool accumulate, bool parallel) {
#pragma omp parallel for schedule(static) if (parallel)
    for (int64_t i = 0; i < A.rows; ++i) {
        cplx* ci = C + i * bcols;
        if (!accumulate)
            for (int64_t j = 0; j < bcols; ++j) ci[j] = cplx(0, 0);
        for (int64_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const cplx v = A.val[k];
            const cplx* brow = B + int64_t{A.col[k]} * bcols;
            for (int64_t j = 0; j < bcols; ++j) ci[j] += v * brow[j];
        }
    }
}

void spmm_right_adj(const cplx* B, const SparseMatrix& A, cplx* C, int64_t brows,
                    bool accumulate, bool parallel) {
    // C[i][j] = sum_k B[i][k] conj(A[j][k]); C is brows x A.rows.
#pragma omp parallel for schedule(static) if (parallel)
    for (int64_t i = 0; i < brows; ++i) {
        const cplx* bi = B + i * A.cols;
        cplx* ci = C + i * A.rows;
        if (!accumulate)
            for (int64_t j = 0; j < A.rows; ++j) ci[j] = cplx(0, 0);
        for (int64_t j = 0; j < A.rows; ++j) {
            cplx s{0, 0};
            for (int64_t k = A.row_ptr[j]; k < A.row_ptr[j + 1]; ++k)
                s += bi[A.col[k]] * std::conj(A.val[k]);
            ci[j] += s;
        }
    }
}

}  // namespace aqec::kernels
