#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "aqec/local_op.hpp"
#include "aqec/site_space.hpp"

namespace aqec {

// One scalar-weighted tensor-product term with arbitrary 2x2 factors;
// identity on every site not listed.  This is the input form: sums of these
// are canonicalized into weighted Pauli strings on construction.
struct TensorTerm {
    cplx coeff{1, 0};
    std::vector<std::pair<int, LocalOp>> factors;
};

// Canonical term: sorted (site, Pauli) factors, identity factors dropped.
struct CanonicalTerm {
    cplx coeff;
    std::vector<std::pair<int, Pauli>> factors;
};

// Operator on a SiteSpace as a canonical sum of weighted Pauli strings.
// Canonical form: factors sorted by site, terms sorted by factor signature,
// like terms merged, coefficients below the merge tolerance dropped.
class OperatorSum {
public:
    static constexpr double merge_tol = 1e-12;

    OperatorSum() = default;
    OperatorSum(SiteSpace space, std::vector<TensorTerm> terms);

    static OperatorSum zero(const SiteSpace& space);
    static OperatorSum scalar(const SiteSpace& space, cplx c);
    static OperatorSum identity(const SiteSpace& space) { return scalar(space, 1.0); }
    static OperatorSum pauli(const SiteSpace& space, int site, Pauli p);
    static OperatorSum local(const SiteSpace& space, int site, const LocalOp& op);

    const SiteSpace& space() const { return space_; }
    const std::vector<CanonicalTerm>& terms() const { return terms_; }
    size_t n_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    OperatorSum operator+(const OperatorSum& o) const;
    OperatorSum operator-(const OperatorSum& o) const;
    OperatorSum operator*(const OperatorSum& o) const;
    OperatorSum operator*(cplx c) const;
    OperatorSum& operator+=(const OperatorSum& o) { return *this = *this + o; }

    OperatorSum adjoint() const;

    // (A + A~)/2 and (A - A~)/2i, A~ the adjoint; both Hermitian.
    OperatorSum herm_part() const;
    OperatorSum im_part() const;

    bool is_hermitian(double tol = merge_tol) const;
    bool equals(const OperatorSum& o, double tol = merge_tol) const;

    // Coefficient of the identity string (0 if absent).
    cplx identity_coeff() const;
    // Trace over the full space: identity_coeff * dim.
    cplx trace() const;
    double max_abs_coeff() const;
    // Sum of |coeff|; upper bounds the operator norm.
    double coeff_l1() const;

    std::string str() const;

private:
    void check_space(const OperatorSum& o) const;
    void canonicalize();  // sort + merge an unsorted term list

    SiteSpace space_;
    std::vector<CanonicalTerm> terms_;
};

inline OperatorSum operator*(cplx c, const OperatorSum& a) { return a * c; }

}  // namespace aqec
