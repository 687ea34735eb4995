#pragma once

#include "aqec/slh.hpp"

namespace aqec {

// Idealized device parameters.  alpha: probe coherent amplitude; beta:
// feedback beam amplitude (cancels exactly in the effective Raman rule);
// omega: feedback Rabi strength; gamma: per-qubit, per-error-type rate.
struct ComponentParams {
    double alpha = 0;
    double beta = 1;
    double omega = 0;
    double gamma = 0;

    void validate() const;
};

enum class ProbeAxis { Z, X };

// Sign conventions for the 50/50 beamsplitter, out = S * in:
//   Default:      [[1, 1], [-1, 1]] / sqrt(2)
//   PortSwapped:  [[1, -1], [1, 1]] / sqrt(2)
// and their negations.
enum class BsOrientation { Default, Negated, PortSwapped, PortSwappedNegated };

namespace catalog {

// n-channel identity and cw drive W^gamma = (1, gamma, 0).
SLHTriple identity(const SiteSpace& space, int n);
SLHTriple drive(const SiteSpace& space, double gamma);

SLHTriple beamsplitter(const SiteSpace& space, BsOrientation o = BsOrientation::Default);

// Conditional pi-phase reflection off one memory qubit: (P_site, 0, 0).
SLHTriple probe_qubit(const SiteSpace& space, const SiteLabel& site, ProbeAxis axis);

// Set-reset relay control: 2-channel (S, (0,0), 0) with
// S = [[sigma_pm, proj_minus], [-proj_plus, -sigma_mp]] on the relay site.
SLHTriple relay_set_reset(const SiteSpace& space, const SiteLabel& relay);

// Relay-state controlled routing of one input over two outputs:
// S = [[s*proj_plus, proj_minus], [proj_minus, proj_plus]] with s = -1 when
// flip_direct is set (a per-instance calibration phase).
SLHTriple relay_router(const SiteSpace& space, const SiteLabel& relay,
                       bool flip_direct = false);

// Effective Hamiltonian of one two-beam Raman interaction:
//   (2 omega / beta^2) * Herm[f1^dag f2] * P_site,
// where f1, f2 are the operator-valued coherent amplitudes at the qubit's
// two branch ports (they must be diagonal in the relay basis) and
// P in {X, Z} selects the rotation axis.  The beta dependence cancels.
OperatorSum raman_pair(const SiteSpace& space, const SiteLabel& site, ProbeAxis axis,
                       const OperatorSum& f1, const OperatorSum& f2, double omega,
                       double beta);

// Independent dephasing channels sqrt(gamma) * P on every memory site of the
// space, one channel per (type, site), types in the given order and sites in
// space order.
SLHTriple error_channels(const SiteSpace& space, double gamma,
                         const std::vector<Pauli>& types = {Pauli::X, Pauli::Z, Pauli::Y});

}  // namespace catalog

}  // namespace aqec
