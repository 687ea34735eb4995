#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "aqec/operator_sum.hpp"

namespace aqec {

// Row-compressed complex sparse matrix with sorted columns in every row.
// Construction is deterministic, so serialized output is byte-stable for a
// given build.
struct SparseMatrix {
    int64_t rows = 0, cols = 0;
    std::vector<int64_t> row_ptr;  // rows + 1
    std::vector<int32_t> col;
    std::vector<cplx> val;

    int64_t nnz() const { return static_cast<int64_t>(val.size()); }

    static SparseMatrix identity(int64_t n);
    static SparseMatrix from_triplets(int64_t rows, int64_t cols,
                                      std::vector<std::pair<std::pair<int64_t, int64_t>, cplx>> t);

    SparseMatrix adjoint() const;
    SparseMatrix transpose() const;

    // this + c * o
    SparseMatrix add_scaled(const SparseMatrix& o, cplx c) const;
    SparseMatrix matmul(const SparseMatrix& o) const;
    SparseMatrix scaled(cplx c) const;

    double max_abs() const;
    double frobenius() const;
    cplx diag_entry(int64_t i) const;
    std::vector<cplx> diagonal() const;

    // Row-sum (infinity) norm: max_i sum_j |a_ij|.
    double row_sum_norm() const;
};

// max_ij |a_ij - b_ij| without forming the difference.
double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b);

// Frobenius inner product <a, b> = sum conj(a_ij) b_ij.
cplx frobenius_dot(const SparseMatrix& a, const SparseMatrix& b);

// Compile a symbolic operator onto a target space (sites matched by label;
// a factor site missing from the target is a structural error).  The result
// is the homomorphic image: to_matrix(a*b) == to_matrix(a) * to_matrix(b).
SparseMatrix to_matrix(const OperatorSum& a, const SiteSpace& target);
inline SparseMatrix to_matrix(const OperatorSum& a) { return to_matrix(a, a.space()); }

}  // namespace aqec
