#include "aqec/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aqec {

void ComponentParams::validate() const {
    if (alpha < 0 || omega < 0 || gamma < 0)
        throw std::invalid_argument("ComponentParams: rates must be nonnegative");
    if (beta <= 0)
        throw std::invalid_argument("ComponentParams: beta must be positive");
}

namespace catalog {

SLHTriple identity(const SiteSpace& space, int n) {
    if (n < 1) throw std::invalid_argument("identity: need n >= 1 channels");
    return SLHTriple::identity(space, n);
}

SLHTriple drive(const SiteSpace& space, double gamma) {
    SLHTriple g = SLHTriple::identity(space, 1, "W(" + std::to_string(gamma) + ")");
    g.L[0] = OperatorSum::scalar(space, gamma);
    return g;
}

SLHTriple beamsplitter(const SiteSpace& space, BsOrientation o) {
    const double r = 1.0 / std::numbers::sqrt2;
    double s00 = r, s01 = r, s10 = -r, s11 = r;
    if (o == BsOrientation::PortSwapped || o == BsOrientation::PortSwappedNegated) {
        s00 = r, s01 = -r, s10 = r, s11 = r;
    }
    if (o == BsOrientation::Negated || o == BsOrientation::PortSwappedNegated) {
        s00 = -s00, s01 = -s01, s10 = -s10, s11 = -s11;
    }
    SLHTriple g = SLHTriple::identity(space, 2, "B");
    g.s(0, 0) = OperatorSum::scalar(space, s00);
    g.s(0, 1) = OperatorSum::scalar(space, s01);
    g.s(1, 0) = OperatorSum::scalar(space, s10);
    g.s(1, 1) = OperatorSum::scalar(space, s11);
    return g;
}

SLHTriple probe_qubit(const SiteSpace& space, const SiteLabel& site, ProbeAxis axis) {
    if (site.kind != SiteLabel::Kind::Memory)
        throw std::invalid_argument("probe_qubit: " + site.str() + " is not a memory qubit");
    const int idx = space.index_of(site);
    SLHTriple g = SLHTriple::identity(
        space, 1, std::string(axis == ProbeAxis::Z ? "Qz" : "Qx") + site.str());
    g.s(0, 0) = OperatorSum::pauli(space, idx, axis == ProbeAxis::Z ? Pauli::Z : Pauli::X);
    return g;
}

SLHTriple relay_set_reset(const SiteSpace& space, const SiteLabel& relay) {
    if (relay.kind != SiteLabel::Kind::Relay)
        throw std::invalid_argument("relay_set_reset: " + relay.str() + " is not a relay");
    const int idx = space.index_of(relay);
    SLHTriple g = SLHTriple::identity(space, 2, relay.str() + "c");
    g.s(0, 0) = OperatorSum::local(space, idx, LocalOp::sigma_pm());
    g.s(0, 1) = OperatorSum::local(space, idx, LocalOp::proj_minus());
    g.s(1, 0) = OperatorSum::local(space, idx, LocalOp::proj_plus()) * cplx(-1, 0);
    g.s(1, 1) = OperatorSum::local(space, idx, LocalOp::sigma_mp()) * cplx(-1, 0);
    return g;
}

SLHTriple relay_router(const SiteSpace& space, const SiteLabel& relay, bool flip_direct) {
    if (relay.kind != SiteLabel::Kind::Relay)
        throw std::invalid_argument("relay_router: " + relay.str() + " is not a relay");
    const int idx = space.index_of(relay);
    const cplx s = flip_direct ? cplx(-1, 0) : cplx(1, 0);
    SLHTriple g = SLHTriple::identity(space, 2, relay.str() + "f");
    g.s(0, 0) = OperatorSum::local(space, idx, LocalOp::proj_plus()) * s;
    g.s(0, 1) = OperatorSum::local(space, idx, LocalOp::proj_minus());
    g.s(1, 0) = OperatorSum::local(space, idx, LocalOp::proj_minus());
    g.s(1, 1) = OperatorSum::local(space, idx, LocalOp::proj_plus());
    return g;
}

OperatorSum raman_pair(const SiteSpace& space, const SiteLabel& site, ProbeAxis axis,
                       const OperatorSum& f1, const OperatorSum& f2, double omega,
                       double beta) {
    if (site.kind != SiteLabel::Kind::Memory)
        throw std::invalid_argument("raman_pair: " + site.str() + " is not a memory qubit");
    if (omega < 0) throw std::invalid_argument("raman_pair: omega must be nonnegative");
    for (const OperatorSum* f : {&f1, &f2}) {
        for (const CanonicalTerm& t : f->terms()) {
            for (const auto& [s, p] : t.factors) {
                if (space.label(s).kind != SiteLabel::Kind::Relay || p != Pauli::Z)
                    throw std::invalid_argument(
                        "raman_pair: branch amplitude is not diagonal in the relay basis");
            }
        }
    }
    const OperatorSum pauli =
        OperatorSum::pauli(space, space.index_of(site),
                           axis == ProbeAxis::X ? Pauli::X : Pauli::Z);
    return (f1.adjoint() * f2).herm_part() * pauli * cplx(2.0 * omega / (beta * beta), 0);
}

SLHTriple error_channels(const SiteSpace& space, double gamma,
                         const std::vector<Pauli>& types) {
    if (gamma < 0) throw std::invalid_argument("error_channels: gamma must be nonnegative");
    const double root = std::sqrt(gamma);
    SLHTriple g;
    g.space = space;
    g.n = 0;
    g.name = "errors";
    g.H = OperatorSum::zero(space);
    for (Pauli p : types) {
        for (int s = 0; s < space.n_sites(); ++s) {
            if (space.label(s).kind != SiteLabel::Kind::Memory) continue;
            g.L.push_back(OperatorSum::pauli(space, s, p) * cplx(root, 0));
            ++g.n;
        }
    }
    g.S.assign(static_cast<size_t>(g.n) * g.n, OperatorSum::zero(space));
    for (int i = 0; i < g.n; ++i) g.s(i, i) = OperatorSum::identity(space);
    return g;
}

}  // namespace catalog

}  // namespace aqec
