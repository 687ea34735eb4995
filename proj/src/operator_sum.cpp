#include "aqec/operator_sum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aqec {

namespace {

bool signature_less(const CanonicalTerm& a, const CanonicalTerm& b) {
    return a.factors < b.factors;
}

}  // namespace

OperatorSum::OperatorSum(SiteSpace space, std::vector<TensorTerm> terms)
    : space_(std::move(space)) {
    // Expand every general factor over the Pauli basis, distributing the
    // products so each resulting term is a pure Pauli string.
    for (const TensorTerm& t : terms) {
        std::vector<std::pair<int, LocalOp>> factors = t.factors;
        std::sort(factors.begin(), factors.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (size_t i = 0; i + 1 < factors.size(); ++i)
            if (factors[i].first == factors[i + 1].first)
                throw std::invalid_argument("TensorTerm: duplicate site in factors");
        for (const auto& [site, op] : factors) {
            (void)op;
            if (site < 0 || site >= space_.n_sites())
                throw std::out_of_range("TensorTerm: site index outside space");
        }

        std::vector<CanonicalTerm> expanded{{t.coeff, {}}};
        for (const auto& [site, op] : factors) {
            auto c = op.pauli_coeffs();
            std::vector<CanonicalTerm> next;
            next.reserve(expanded.size() * 4);
            for (const CanonicalTerm& e : expanded) {
                for (int p = 0; p < 4; ++p) {
                    if (c[p] == cplx(0, 0)) continue;
                    CanonicalTerm n = e;
                    n.coeff *= c[p];
                    if (p != 0) n.factors.emplace_back(site, static_cast<Pauli>(p));
                    next.push_back(std::move(n));
                }
            }
            expanded = std::move(next);
        }
        terms_.insert(terms_.end(), expanded.begin(), expanded.end());
    }
    canonicalize();
}

void OperatorSum::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), signature_less);
    std::vector<CanonicalTerm> merged;
    merged.reserve(terms_.size());
    for (CanonicalTerm& t : terms_) {
        if (!merged.empty() && merged.back().factors == t.factors)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    terms_.clear();
    for (CanonicalTerm& t : merged)
        if (std::abs(t.coeff) > merge_tol) terms_.push_back(std::move(t));
}

OperatorSum OperatorSum::zero(const SiteSpace& space) {
    OperatorSum r;
    r.space_ = space;
    return r;
}

OperatorSum OperatorSum::scalar(const SiteSpace& space, cplx c) {
    OperatorSum r;
    r.space_ = space;
    if (std::abs(c) > merge_tol) r.terms_.push_back({c, {}});
    return r;
}

OperatorSum OperatorSum::pauli(const SiteSpace& space, int site, Pauli p) {
    if (site < 0 || site >= space.n_sites())
        throw std::out_of_range("OperatorSum::pauli: site index outside space");
    OperatorSum r;
    r.space_ = space;
    r.terms_.push_back({cplx(1, 0), {{site, p}}});
    return r;
}

OperatorSum OperatorSum::local(const SiteSpace& space, int site, const LocalOp& op) {
    return OperatorSum(space, {TensorTerm{cplx(1, 0), {{site, op}}}});
}

void OperatorSum::check_space(const OperatorSum& o) const {
    if (!(space_ == o.space_))
        throw std::invalid_argument("OperatorSum: operands live on different site spaces");
}

OperatorSum OperatorSum::operator+(const OperatorSum& o) const {
    check_space(o);
    OperatorSum r;
    r.space_ = space_;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    r.terms_.insert(r.terms_.end(), terms_.begin(), terms_.end());
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.canonicalize();
    return r;
}

OperatorSum OperatorSum::operator-(const OperatorSum& o) const { return *this + o * cplx(-1, 0); }

OperatorSum OperatorSum::operator*(cplx c) const {
    OperatorSum r;
    r.space_ = space_;
    if (std::abs(c) == 0.0) return r;
    r.terms_ = terms_;
    for (CanonicalTerm& t : r.terms_) t.coeff *= c;
    r.canonicalize();
    return r;
}

OperatorSum OperatorSum::operator*(const OperatorSum& o) const {
    check_space(o);
    OperatorSum r;
    r.space_ = space_;
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (const CanonicalTerm& a : terms_) {
        for (const CanonicalTerm& b : o.terms_) {
            CanonicalTerm t;
            t.coeff = a.coeff * b.coeff;
            t.factors.reserve(a.factors.size() + b.factors.size());
            size_t i = 0, j = 0;
            while (i < a.factors.size() || j < b.factors.size()) {
                if (j == b.factors.size() ||
                    (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
                    t.factors.push_back(a.factors[i++]);
                } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
                    t.factors.push_back(b.factors[j++]);
                } else {
                    auto pr = pauli_mul(a.factors[i].second, b.factors[j].second);
                    t.coeff *= pr.phase;
                    if (pr.out != 0)
                        t.factors.emplace_back(a.factors[i].first, static_cast<Pauli>(pr.out));
                    ++i, ++j;
                }
            }
            r.terms_.push_back(std::move(t));
        }
    }
    r.canonicalize();
    return r;
}

OperatorSum OperatorSum::adjoint() const {
    // Pauli strings are Hermitian, so only coefficients conjugate.
    OperatorSum r = *this;
    for (CanonicalTerm& t : r.terms_) t.coeff = std::conj(t.coeff);
    return r;
}

OperatorSum OperatorSum::herm_part() const { return (*this + adjoint()) * cplx(0.5, 0); }

OperatorSum OperatorSum::im_part() const {
    return (*this - adjoint()) * (cplx(1, 0) / cplx(0, 2));
}

bool OperatorSum::is_hermitian(double tol) const {
    for (const CanonicalTerm& t : terms_)
        if (std::abs(t.coeff.imag()) > tol) return false;
    return true;
}

bool OperatorSum::equals(const OperatorSum& o, double tol) const {
    if (!(space_ == o.space_)) return false;
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && terms_[i].factors < o.terms_[j].factors)) {
            if (std::abs(terms_[i].coeff) > tol) return false;
            ++i;
        } else if (i == terms_.size() || o.terms_[j].factors < terms_[i].factors) {
            if (std::abs(o.terms_[j].coeff) > tol) return false;
            ++j;
        } else {
            if (std::abs(terms_[i].coeff - o.terms_[j].coeff) > tol) return false;
            ++i, ++j;
        }
    }
    return true;
}

cplx OperatorSum::identity_coeff() const {
    if (!terms_.empty() && terms_.front().factors.empty()) return terms_.front().coeff;
    return {0, 0};
}

cplx OperatorSum::trace() const {
    return identity_coeff() * static_cast<double>(space_.dim());
}

double OperatorSum::max_abs_coeff() const {
    double m = 0;
    for (const CanonicalTerm& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

double OperatorSum::coeff_l1() const {
    double s = 0;
    for (const CanonicalTerm& t : terms_) s += std::abs(t.coeff);
    return s;
}

std::string OperatorSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (size_t k = 0; k < terms_.size(); ++k) {
        const CanonicalTerm& t = terms_[k];
        if (k) os << " + ";
        os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "" : "+") << t.coeff.imag() << "i)";
        for (const auto& [site, p] : t.factors)
            os << " " << pauli_name(p) << "[" << space_.label(site).str() << "]";
    }
    return os.str();
}

}  // namespace aqec
