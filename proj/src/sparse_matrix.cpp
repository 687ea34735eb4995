#include "aqec/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aqec {

SparseMatrix SparseMatrix::identity(int64_t n) {
    SparseMatrix m;
    m.rows = m.cols = n;
    m.row_ptr.resize(n + 1);
    m.col.resize(n);
    m.val.assign(n, cplx(1, 0));
    for (int64_t i = 0; i <= n; ++i) m.row_ptr[i] = i;
    for (int64_t i = 0; i < n; ++i) m.col[i] = static_cast<int32_t>(i);
    return m;
}

SparseMatrix SparseMatrix::from_triplets(
    int64_t rows, int64_t cols,
    std::vector<std::pair<std::pair<int64_t, int64_t>, cplx>> t) {
    std::sort(t.begin(), t.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.assign(rows + 1, 0);
    for (size_t k = 0; k < t.size(); ++k) {
        if (k + 1 < t.size() && t[k].first == t[k + 1].first) {
            t[k + 1].second += t[k].second;
            continue;
        }
        if (t[k].second == cplx(0, 0)) continue;
        m.col.push_back(static_cast<int32_t>(t[k].first.second));
        m.val.push_back(t[k].second);
        ++m.row_ptr[t[k].first.first + 1];
    }
    for (int64_t i = 0; i < rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix r;
    r.rows = cols;
    r.cols = rows;
    r.row_ptr.assign(cols + 1, 0);
    r.col.resize(nnz());
    r.val.resize(nnz());
    for (int64_t k = 0; k < nnz(); ++k) ++r.row_ptr[col[k] + 1];
    for (int64_t i = 0; i < cols; ++i) r.row_ptr[i + 1] += r.row_ptr[i];
    std::vector<int64_t> fill(r.row_ptr.begin(), r.row_ptr.end() - 1);
    for (int64_t i = 0; i < rows; ++i) {
        for (int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            int64_t pos = fill[col[k]]++;
            r.col[pos] = static_cast<int32_t>(i);
            r.val[pos] = val[k];
        }
    }
    return r;
}

SparseMatrix SparseMatrix::adjoint() const {
    SparseMatrix r = transpose();
    for (cplx& v : r.val) v = std::conj(v);
    return r;
}

SparseMatrix SparseMatrix::add_scaled(const SparseMatrix& o, cplx c) const {
    if (rows != o.rows || cols != o.cols)
        throw std::invalid_argument("SparseMatrix::add_scaled: shape mismatch");
    SparseMatrix r;
    r.rows = rows;
    r.cols = cols;
    r.row_ptr.assign(rows + 1, 0);
    r.col.reserve(nnz() + o.nnz());
    r.val.reserve(nnz() + o.nnz());
    for (int64_t i = 0; i < rows; ++i) {
        int64_t ka = row_ptr[i], kb = o.row_ptr[i];
        const int64_t ea = row_ptr[i + 1], eb = o.row_ptr[i + 1];
        while (ka < ea || kb < eb) {
            int32_t ca = ka < ea ? col[ka] : INT32_MAX;
            int32_t cb = kb < eb ? o.col[kb] : INT32_MAX;
            if (ca < cb) {
                r.col.push_back(ca);
                r.val.push_back(val[ka++]);
            } else if (cb < ca) {
                r.col.push_back(cb);
                r.val.push_back(c * o.val[kb++]);
            } else {
                cplx v = val[ka++] + c * o.val[kb++];
                if (v != cplx(0, 0)) {
                    r.col.push_back(ca);
                    r.val.push_back(v);
                }
            }
        }
        r.row_ptr[i + 1] = static_cast<int64_t>(r.col.size());
    }
    return r;
}

SparseMatrix SparseMatrix::matmul(const SparseMatrix& o) const {
    if (cols != o.rows)
        throw std::invalid_argument("SparseMatrix::matmul: shape mismatch");
    SparseMatrix r;
    r.rows = rows;
    r.cols = o.cols;
    r.row_ptr.assign(rows + 1, 0);
    std::vector<cplx> acc(o.cols, cplx(0, 0));
    std::vector<int32_t> touched;
    for (int64_t i = 0; i < rows; ++i) {
        touched.clear();
        for (int64_t ka = row_ptr[i]; ka < row_ptr[i + 1]; ++ka) {
            const cplx va = val[ka];
            const int64_t j = col[ka];
            for (int64_t kb = o.row_ptr[j]; kb < o.row_ptr[j + 1]; ++kb) {
                if (acc[o.col[kb]] == cplx(0, 0)) touched.push_back(o.col[kb]);
                acc[o.col[kb]] += va * o.val[kb];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int32_t c : touched) {
            if (acc[c] != cplx(0, 0)) {
                r.col.push_back(c);
                r.val.push_back(acc[c]);
            }
            acc[c] = cplx(0, 0);
        }
        r.row_ptr[i + 1] = static_cast<int64_t>(r.col.size());
    }
    return r;
}

SparseMatrix SparseMatrix::scaled(cplx c) const {
    SparseMatrix r = *this;
    for (cplx& v : r.val) v *= c;
    return r;
}

double SparseMatrix::max_abs() const {
    double m = 0;
    for (const cplx& v : val) m = std::max(m, std::abs(v));
    return m;
}

double SparseMatrix::frobenius() const {
    double s = 0;
    for (const cplx& v : val) s += std::norm(v);
    return std::sqrt(s);
}

cplx SparseMatrix::diag_entry(int64_t i) const {
    for (int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] == i) return val[k];
    return {0, 0};
}

std::vector<cplx> SparseMatrix::diagonal() const {
    std::vector<cplx> d(rows, cplx(0, 0));
    for (int64_t i = 0; i < rows; ++i) d[i] = diag_entry(i);
    return d;
}

double SparseMatrix::row_sum_norm() const {
    double m = 0;
    for (int64_t i = 0; i < rows; ++i) {
        double s = 0;
        for (int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += std::abs(val[k]);
        m = std::max(m, s);
    }
    return m;
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0;
    for (int64_t i = 0; i < a.rows; ++i) {
        int64_t ka = a.row_ptr[i], kb = b.row_ptr[i];
        const int64_t ea = a.row_ptr[i + 1], eb = b.row_ptr[i + 1];
        while (ka < ea || kb < eb) {
            int32_t ca = ka < ea ? a.col[ka] : INT32_MAX;
            int32_t cb = kb < eb ? b.col[kb] : INT32_MAX;
            if (ca < cb)
                m = std::max(m, std::abs(a.val[ka++]));
            else if (cb < ca)
                m = std::max(m, std::abs(b.val[kb++]));
            else
                m = std::max(m, std::abs(a.val[ka++] - b.val[kb++]));
        }
    }
    return m;
}

cplx frobenius_dot(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("frobenius_dot: shape mismatch");
    cplx s{0, 0};
    for (int64_t i = 0; i < a.rows; ++i) {
        int64_t ka = a.row_ptr[i], kb = b.row_ptr[i];
        const int64_t ea = a.row_ptr[i + 1], eb = b.row_ptr[i + 1];
        while (ka < ea && kb < eb) {
            if (a.col[ka] < b.col[kb])
                ++ka;
            else if (b.col[kb] < a.col[ka])
                ++kb;
            else
                s += std::conj(a.val[ka++]) * b.val[kb++];
        }
    }
    return s;
}

SparseMatrix to_matrix(const OperatorSum& a, const SiteSpace& target) {
    const int n = target.n_sites();
    const int64_t dim = target.dim();

    // Per-term action in the target space: a Pauli string has exactly one
    // nonzero per row, at column row ^ flip_mask with a +-1/+-i phase that
    // depends only on the row bits under the Y and Z factors.
    struct TermAction {
        cplx coeff;
        int64_t flip_mask;                      // X and Y factors
        std::vector<std::pair<int64_t, cplx>> phase_bits;  // (bit mask, factor if bit set)
    };
    std::vector<TermAction> actions;
    actions.reserve(a.terms().size());
    for (const CanonicalTerm& t : a.terms()) {
        TermAction act{t.coeff, 0, {}};
        for (const auto& [site, p] : t.factors) {
            const int tsite = target.index_of(a.space().label(site));
            const int64_t bit = int64_t{1} << (n - 1 - tsite);
            switch (p) {
                case Pauli::X:
                    act.flip_mask ^= bit;
                    break;
                case Pauli::Y:
                    act.flip_mask ^= bit;
                    // <r|Y|c>: -i when the row bit is 0, +i when it is 1.
                    act.coeff *= cplx(0, -1);
                    act.phase_bits.emplace_back(bit, cplx(-1, 0));
                    break;
                case Pauli::Z:
                    act.phase_bits.emplace_back(bit, cplx(-1, 0));
                    break;
            }
        }
        actions.push_back(std::move(act));
    }

    SparseMatrix m;
    m.rows = m.cols = dim;
    m.row_ptr.assign(dim + 1, 0);
    std::vector<std::pair<int32_t, cplx>> row;
    for (int64_t r = 0; r < dim; ++r) {
        row.clear();
        for (const TermAction& act : actions) {
            cplx v = act.coeff;
            for (const auto& [bit, f] : act.phase_bits)
                if (r & bit) v *= f;
            row.emplace_back(static_cast<int32_t>(r ^ act.flip_mask), v);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (size_t k = 0; k < row.size(); ++k) {
            cplx v = row[k].second;
            while (k + 1 < row.size() && row[k + 1].first == row[k].first)
                v += row[++k].second;
            if (v != cplx(0, 0)) {
                m.col.push_back(row[k].first);
                m.val.push_back(v);
            }
        }
        m.row_ptr[r + 1] = static_cast<int64_t>(m.col.size());
    }
    return m;
}

}  // namespace aqec
