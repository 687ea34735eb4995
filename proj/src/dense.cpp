#include "aqec/dense.hpp"

#include <algorithm>
#include <cmath>

namespace aqec::dense {

cplx trace(const std::vector<cplx>& a, int64_t n) {
    cplx t{0, 0};
    for (int64_t i = 0; i < n; ++i) t += a[i * n + i];
    return t;
}

double hermiticity_deviation(const std::vector<cplx>& a, int64_t n) {
    double d = 0;
    for (int64_t i = 0; i < n; ++i)
        for (int64_t j = i; j < n; ++j)
            d = std::max(d, std::abs(a[i * n + j] - std::conj(a[j * n + i])));
    return d;
}

cplx observable_trace(const SparseMatrix& op, const std::vector<cplx>& rho, int64_t n) {
    cplx t{0, 0};
    for (int64_t i = 0; i < op.rows; ++i)
        for (int64_t k = op.row_ptr[i]; k < op.row_ptr[i + 1]; ++k)
            t += op.val[k] * rho[op.col[k] * n + i];
    return t;
}

std::vector<double> hermitian_eigenvalues(std::vector<cplx> a, int64_t n) {
    double fro2 = 0;
    for (const cplx& v : a) fro2 += std::norm(v);
    const double off_tol = fro2 * 1e-28 + 1e-280;
    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0;
        for (int64_t p = 0; p < n; ++p)
            for (int64_t q = p + 1; q < n; ++q) off += std::norm(a[p * n + q]);
        if (off < off_tol) break;
        for (int64_t p = 0; p < n; ++p) {
            for (int64_t q = p + 1; q < n; ++q) {
                const cplx apq = a[p * n + q];
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const double app = a[p * n + p].real(), aqq = a[q * n + q].real();
                const double tau = (aqq - app) / (2 * mag);
                const double t =
                    -(tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1.0 / std::sqrt(1 + t * t);
                const cplx sigma = t * c * std::conj(apq / mag);
                // Right-multiply by G, then left-multiply by G^dag, where G
                // is identity outside the (p,q) plane with G[pp]=G[qq]=c,
                // G[qp]=sigma, G[pq]=-conj(sigma).
                for (int64_t k = 0; k < n; ++k) {
                    const cplx akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * sigma;
                    a[k * n + q] = -akp * std::conj(sigma) + akq * c;
                }
                for (int64_t k = 0; k < n; ++k) {
                    const cplx apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk + std::conj(sigma) * aqk;
                    a[q * n + k] = -sigma * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int64_t i = 0; i < n; ++i) ev[i] = a[i * n + i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

double min_eigenvalue(const std::vector<cplx>& a, int64_t n) {
    if (n <= 256) return hermitian_eigenvalues(a, n).front();
    // Power iteration on s*I - A with s an upper spectral bound.
    double s = 0;
    for (int64_t i = 0; i < n; ++i) {
        double row = 0;
        for (int64_t j = 0; j < n; ++j) row += std::abs(a[i * n + j]);
        s = std::max(s, row);
    }
    Vec v(n), w(n);
    for (int64_t i = 0; i < n; ++i) v[i] = cplx(1.0 + 1e-3 * static_cast<double>(i % 7), 0);
    kernels::scale_serial(cplx(1.0 / std::sqrt(kernels::norm2_serial(v)), 0), v);
    double lambda = 0;
    for (int it = 0; it < 400; ++it) {
        for (int64_t i = 0; i < n; ++i) {
            cplx acc = s * v[i];
            const cplx* row = a.data() + i * n;
            for (int64_t j = 0; j < n; ++j) acc -= row[j] * v[j];
            w[i] = acc;
        }
        lambda = std::real(kernels::dot_serial(v, w));
        const double nw = std::sqrt(kernels::norm2_serial(w));
        if (nw < 1e-300) break;
        for (int64_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    return s - lambda;
}

}  // namespace aqec::dense
