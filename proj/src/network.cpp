#include "aqec/network.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aqec {

namespace {

constexpr double kRoot2 = std::numbers::sqrt2;

void append_stage(std::vector<std::pair<std::string, SLHTriple>>* stages,
                  const std::string& name, const SLHTriple& g) {
    if (stages) stages->emplace_back(name, g);
}

// Series composition of one probe line: the drive (if any) enters the first
// site of `sites` and reflects off each in order.
SLHTriple probe_chain(const SiteSpace& space, const std::vector<SiteLabel>& sites,
                      ProbeAxis axis, const SLHTriple& input) {
    SLHTriple g = input;
    for (const SiteLabel& s : sites) g = series(catalog::probe_qubit(space, s, axis), g);
    return g;
}

struct ProbeLayout {
    std::vector<SiteLabel> mid, arm_a, arm_b;  // in beam order
    SiteLabel relay_a, relay_b;
};

ProbeLayout grid_layout(ProbeAxis axis) {
    ProbeLayout p;
    if (axis == ProbeAxis::Z) {
        p.mid = {SiteLabel::memory(3, 2), SiteLabel::memory(2, 2), SiteLabel::memory(1, 2)};
        p.arm_a = {SiteLabel::memory(1, 1), SiteLabel::memory(2, 1), SiteLabel::memory(3, 1)};
        p.arm_b = {SiteLabel::memory(1, 3), SiteLabel::memory(2, 3), SiteLabel::memory(3, 3)};
        p.relay_a = SiteLabel::relay(1);
        p.relay_b = SiteLabel::relay(2);
    } else {
        p.mid = {SiteLabel::memory(2, 1), SiteLabel::memory(2, 2), SiteLabel::memory(2, 3)};
        p.arm_a = {SiteLabel::memory(1, 3), SiteLabel::memory(1, 2), SiteLabel::memory(1, 1)};
        p.arm_b = {SiteLabel::memory(3, 3), SiteLabel::memory(3, 2), SiteLabel::memory(3, 1)};
        p.relay_a = SiteLabel::relay(3);
        p.relay_b = SiteLabel::relay(4);
    }
    return p;
}

// The serpentine rethreading: the probe splits at the source and each arm
// zig-zags through its pair of lines in two-site parity segments.  The
// accumulated reflection operators per arm are the same as in the grid
// threading, so the closed-loop dynamics are identical.
ProbeLayout zigzag_layout(ProbeAxis axis) {
    ProbeLayout p;
    auto q = [axis](int along, int across) {
        return axis == ProbeAxis::Z ? SiteLabel::memory(along, across)
                                    : SiteLabel::memory(across, along);
    };
    p.mid = {};
    p.arm_a = {q(1, 1), q(1, 2), q(2, 2), q(2, 1), q(3, 1), q(3, 2)};
    p.arm_b = {q(1, 3), q(1, 2), q(2, 2), q(2, 3), q(3, 3), q(3, 2)};
    p.relay_a = axis == ProbeAxis::Z ? SiteLabel::relay(1) : SiteLabel::relay(3);
    p.relay_b = axis == ProbeAxis::Z ? SiteLabel::relay(2) : SiteLabel::relay(4);
    return p;
}

SLHTriple build_probe(const SiteSpace& space, const ProbeLayout& lay, ProbeAxis axis,
                      double alpha,
                      std::vector<std::pair<std::string, SLHTriple>>* stages) {
    const std::string tag = axis == ProbeAxis::Z ? "Gp_Z" : "Gp_X";

    // Sources: middle-line probe at sqrt(2)*alpha threaded through the shared
    // qubits, two local oscillators at alpha, and the pass-through channel
    // for the second oscillator (the arity correction for the third layer).
    SLHTriple sources =
        concat(concat(concat(probe_chain(space, lay.mid, axis,
                                         catalog::drive(space, kRoot2 * alpha)),
                             catalog::drive(space, alpha)),
                      SLHTriple::identity(space, 1)),
               catalog::drive(space, alpha));
    append_stage(stages, tag + "/sources", sources);

    // Split the middle probe onto channels 1 and 3.
    SLHTriple splitter =
        pad_into(catalog::beamsplitter(space, BsOrientation::PortSwapped), 4, {0, 2});
    append_stage(stages, tag + "/splitter", splitter);
    SLHTriple g = series(splitter, sources);

    // Outer lines, with identity pass-throughs for both oscillators.
    SLHTriple arms = concat(
        concat(concat(probe_chain(space, lay.arm_a, axis, SLHTriple::identity(space, 1)),
                      SLHTriple::identity(space, 1)),
               probe_chain(space, lay.arm_b, axis, SLHTriple::identity(space, 1))),
        SLHTriple::identity(space, 1));
    append_stage(stages, tag + "/arms", arms);
    g = series(arms, g);

    // Interferometers and the relay pair.
    SLHTriple mixers = concat(catalog::beamsplitter(space), catalog::beamsplitter(space));
    g = series(mixers, g);
    append_stage(stages, tag + "/mixed", g);
    SLHTriple relays = concat(catalog::relay_set_reset(space, lay.relay_a),
                              catalog::relay_set_reset(space, lay.relay_b));
    g = series(relays, g);
    g.name = tag;
    append_stage(stages, tag, g);
    return g;
}

// One relay's routed feedback beam, split over its three branch ports:
// L = (s*proj_plus*beta, proj_minus*beta/sqrt2, -proj_minus*beta/sqrt2).
SLHTriple feedback_branches(const SiteSpace& space, const SiteLabel& relay,
                            bool flip_direct, double beta) {
    SLHTriple routed = series(catalog::relay_router(space, relay, flip_direct),
                              concat(catalog::drive(space, beta),
                                     SLHTriple::identity(space, 1)));
    SLHTriple g = series(concat(SLHTriple::identity(space, 1), catalog::beamsplitter(space)),
                         concat(routed, SLHTriple::identity(space, 1)));
    g.name = relay.str() + "f/branches";
    return g;
}

OperatorSum feedback_hamiltonian(const SiteSpace& space, const SiteLabel& relay_a,
                                 const SiteLabel& relay_b,
                                 const std::array<SiteLabel, 3>& targets, ProbeAxis axis,
                                 double omega,
                                 std::vector<std::pair<std::string, SLHTriple>>* stages) {
    const double beta = 1.0;
    SLHTriple ba = feedback_branches(space, relay_a, /*flip_direct=*/true, beta);
    SLHTriple bb = feedback_branches(space, relay_b, /*flip_direct=*/false, beta);
    append_stage(stages, ba.name, ba);
    append_stage(stages, bb.name, bb);
    // Branch wiring per target: (relay_a split+, relay_b direct),
    // (split-, split-), (direct, split+).
    OperatorSum h = catalog::raman_pair(space, targets[0], axis, ba.L[1], bb.L[0], omega, beta);
    h += catalog::raman_pair(space, targets[1], axis, ba.L[2], bb.L[2], omega, beta);
    h += catalog::raman_pair(space, targets[2], axis, ba.L[0], bb.L[1], omega, beta);
    return h;
}

MasterEquation assemble(const SiteSpace& space, const SLHTriple& probe_z,
                        const SLHTriple& probe_x, const OperatorSum& h_feedback,
                        const NetworkParams& params) {
    SLHTriple net = concat(concat(probe_z, probe_x),
                           catalog::error_channels(space, params.gamma, params.error_types));
    net.H += h_feedback;
    net.name = "G_network";
    return extract_master_equation(net);
}

// Z_{*,c} / X_{r,*}: operator product along a full column / row.
OperatorSum column_z(const SiteSpace& space, int c) {
    OperatorSum p = OperatorSum::identity(space);
    for (int r = 1; r <= 3; ++r)
        p = p * OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, c)), Pauli::Z);
    return p;
}

OperatorSum row_x(const SiteSpace& space, int r) {
    OperatorSum p = OperatorSum::identity(space);
    for (int c = 1; c <= 3; ++c)
        p = p * OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, c)), Pauli::X);
    return p;
}

struct RelayOps {
    OperatorSum plus, minus, pm, mp;
};

RelayOps relay_ops(const SiteSpace& space, int k) {
    const int idx = space.index_of(SiteLabel::relay(k));
    return {OperatorSum::local(space, idx, LocalOp::proj_plus()),
            OperatorSum::local(space, idx, LocalOp::proj_minus()),
            OperatorSum::local(space, idx, LocalOp::sigma_pm()),
            OperatorSum::local(space, idx, LocalOp::sigma_mp())};
}

// The two collapse operators of relay k fed even/odd parity power:
//   (alpha/sqrt2) (proj_minus O + sigma_pm E),
//   (alpha/sqrt2) (-sigma_mp O - proj_plus E).
void push_relay_pair(std::vector<OperatorSum>& ls, const SiteSpace& space, int relay,
                     const OperatorSum& parity, double alpha) {
    const OperatorSum one = OperatorSum::identity(space);
    const OperatorSum odd = one - parity, even = one + parity;
    const RelayOps r = relay_ops(space, relay);
    const cplx c(alpha / kRoot2, 0);
    ls.push_back((r.minus * odd + r.pm * even) * c);
    ls.push_back((r.mp * odd + r.plus * even) * cplx(-1, 0) * c);
}

void push_error_channels(std::vector<OperatorSum>& ls, const SiteSpace& space,
                         const NetworkParams& params) {
    const double root = std::sqrt(params.gamma);
    for (Pauli p : params.error_types)
        for (int s = 0; s < space.n_sites(); ++s)
            if (space.label(s).kind == SiteLabel::Kind::Memory)
                ls.push_back(OperatorSum::pauli(space, s, p) * cplx(root, 0));
}

}  // namespace

void NetworkParams::validate() const {
    if (alpha < 0 || omega < 0 || gamma < 0)
        throw std::invalid_argument("NetworkParams: rates must be nonnegative");
    for (const GaugePauli& g : gauge)
        if (g.site.kind == SiteLabel::Kind::Memory && (g.site.a < 1 || g.site.a > 3))
            throw std::invalid_argument("NetworkParams: bad gauge site");
    if (error_types.empty() && gamma > 0)
        throw std::invalid_argument("NetworkParams: error types empty at nonzero gamma");
}

SLHTriple build_probe_network(ProbeAxis axis, double alpha, Topology topology) {
    const SiteSpace space = SiteSpace::network();
    const ProbeLayout lay =
        topology == Topology::Grid ? grid_layout(axis) : zigzag_layout(axis);
    return build_probe(space, lay, axis, alpha, nullptr);
}

OperatorSum build_feedback_network(SyndromePair pair, double omega) {
    const SiteSpace space = SiteSpace::network();
    if (pair == SyndromePair::Z) {
        // Z-syndrome relays (1,2) drive X rotations along row 3.
        return feedback_hamiltonian(space, SiteLabel::relay(1), SiteLabel::relay(2),
                                    {SiteLabel::memory(3, 1), SiteLabel::memory(3, 2),
                                     SiteLabel::memory(3, 3)},
                                    ProbeAxis::X, omega, nullptr);
    }
    // X-syndrome relays (3,4) drive Z rotations along column 1.
    return feedback_hamiltonian(space, SiteLabel::relay(3), SiteLabel::relay(4),
                                {SiteLabel::memory(1, 1), SiteLabel::memory(2, 1),
                                 SiteLabel::memory(3, 1)},
                                ProbeAxis::Z, omega, nullptr);
}

MasterEquation build_full_network(const NetworkParams& params) {
    params.validate();
    const SiteSpace space = SiteSpace::network();
    SLHTriple pz = build_probe_network(ProbeAxis::Z, params.alpha, params.topology);
    SLHTriple px = build_probe_network(ProbeAxis::X, params.alpha, params.topology);
    OperatorSum h = build_feedback_network(SyndromePair::Z, params.omega) +
                    build_feedback_network(SyndromePair::X, params.omega);
    return assemble(space, pz, px, h, params);
}

MasterEquation reference_master_equation(const NetworkParams& params) {
    params.validate();
    const SiteSpace space = SiteSpace::network();
    const double a = params.alpha, w = params.omega;

    auto mem = [&](int r, int c, Pauli p) {
        return OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, c)), p);
    };
    const RelayOps r1 = relay_ops(space, 1), r2 = relay_ops(space, 2),
                   r3 = relay_ops(space, 3), r4 = relay_ops(space, 4);

    OperatorSum h =
        mem(3, 1, Pauli::X) * r1.minus * r2.plus * cplx(kRoot2 * w, 0) +
        mem(3, 2, Pauli::X) * r1.minus * r2.minus * cplx(w, 0) -
        mem(3, 3, Pauli::X) * r1.plus * r2.minus * cplx(kRoot2 * w, 0) +
        mem(1, 1, Pauli::Z) * r3.minus * r4.plus * cplx(kRoot2 * w, 0) +
        mem(2, 1, Pauli::Z) * r3.minus * r4.minus * cplx(w, 0) -
        mem(3, 1, Pauli::Z) * r3.plus * r4.minus * cplx(kRoot2 * w, 0);

    std::vector<OperatorSum> ls;
    push_relay_pair(ls, space, 1, column_z(space, 1) * column_z(space, 2), a);
    push_relay_pair(ls, space, 2, column_z(space, 3) * column_z(space, 2), a);
    push_relay_pair(ls, space, 3, row_x(space, 1) * row_x(space, 2), a);
    push_relay_pair(ls, space, 4, row_x(space, 3) * row_x(space, 2), a);
    push_error_channels(ls, space, params);

    MasterEquation me{space, std::move(h), std::move(ls)};
    me.validate();
    return me;
}

MasterEquation build_column_model(const NetworkParams& params) {
    params.validate();
    const SiteSpace space = SiteSpace::column_model();
    ProbeLayout lay;
    lay.mid = {SiteLabel::memory(2, 1)};
    lay.arm_a = {SiteLabel::memory(1, 1)};
    lay.arm_b = {SiteLabel::memory(3, 1)};
    lay.relay_a = SiteLabel::relay(1);
    lay.relay_b = SiteLabel::relay(2);
    SLHTriple probe = build_probe(space, lay, ProbeAxis::Z, params.alpha, nullptr);
    OperatorSum h = feedback_hamiltonian(
        space, SiteLabel::relay(1), SiteLabel::relay(2),
        {SiteLabel::memory(1, 1), SiteLabel::memory(2, 1), SiteLabel::memory(3, 1)},
        ProbeAxis::X, params.omega, nullptr);
    return assemble(space, probe, SLHTriple::identity(space, 0, "none"), h, params);
}

MasterEquation reference_column_model(const NetworkParams& params) {
    params.validate();
    const SiteSpace space = SiteSpace::column_model();
    const double a = params.alpha, w = params.omega;
    auto z = [&](int r) {
        return OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, 1)), Pauli::Z);
    };
    auto x = [&](int r) {
        return OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, 1)), Pauli::X);
    };
    const RelayOps r1 = relay_ops(space, 1), r2 = relay_ops(space, 2);
    OperatorSum h = x(1) * r1.minus * r2.plus * cplx(kRoot2 * w, 0) +
                    x(2) * r1.minus * r2.minus * cplx(w, 0) -
                    x(3) * r1.plus * r2.minus * cplx(kRoot2 * w, 0);
    std::vector<OperatorSum> ls;
    push_relay_pair(ls, space, 1, z(1) * z(2), a);
    push_relay_pair(ls, space, 2, z(3) * z(2), a);
    push_error_channels(ls, space, params);
    MasterEquation me{space, std::move(h), std::move(ls)};
    me.validate();
    return me;
}

MasterEquation apply_gauge(const MasterEquation& me, const std::vector<GaugePauli>& gauge) {
    if (gauge.empty()) return me;
    OperatorSum u = OperatorSum::identity(me.space);
    for (const GaugePauli& g : gauge)
        u = u * OperatorSum::pauli(me.space, me.space.index_of(g.site), g.p);
    MasterEquation r{me.space, u * me.H * u, {}};
    r.collapse.reserve(me.collapse.size());
    for (const OperatorSum& l : me.collapse) r.collapse.push_back(u * l * u);
    return r;
}

ComparisonReport compare_master_equations(const MasterEquation& a, const MasterEquation& b) {
    if (!(a.space == b.space))
        throw std::invalid_argument("compare_master_equations: different site spaces");
    if (a.n_channels() != b.n_channels())
        throw std::invalid_argument(
            "compare_master_equations: channel count mismatch (" +
            std::to_string(a.n_channels()) + " vs " + std::to_string(b.n_channels()) + ")");

    ComparisonReport rep;
    rep.h_residual = max_abs_diff(to_matrix(a.H), to_matrix(b.H));

    const int n = a.n_channels();
    std::vector<SparseMatrix> la(n), lb(n);
    for (int i = 0; i < n; ++i) {
        la[i] = to_matrix(a.collapse[i]);
        lb[i] = to_matrix(b.collapse[i]);
    }

    // Deviation after aligning the physically irrelevant global phase of
    // each channel (Frobenius-optimal rotation).
    auto pair_cost = [&](int i, int j) {
        const cplx dot = frobenius_dot(lb[j], la[i]);
        if (std::abs(dot) < 1e-300) return std::max(la[i].max_abs(), lb[j].max_abs());
        const cplx phase = dot / std::abs(dot);
        return max_abs_diff(la[i], lb[j].scaled(phase));
    };

    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cost[i][j] = pair_cost(i, j);

    // Greedy globally-cheapest assignment; exact whenever a near-perfect
    // matching exists, which is the regime this check gates.
    rep.pairing.assign(n, -1);
    rep.per_channel.assign(n, 0.0);
    std::vector<std::tuple<double, int, int>> order;
    order.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) order.emplace_back(cost[i][j], i, j);
    std::sort(order.begin(), order.end());
    std::vector<bool> used_b(n, false);
    int matched = 0;
    for (const auto& [c, i, j] : order) {
        if (matched == n) break;
        if (rep.pairing[i] >= 0 || used_b[j]) continue;
        rep.pairing[i] = j;
        used_b[j] = true;
        rep.per_channel[i] = c;
        rep.channel_residual = std::max(rep.channel_residual, c);
        ++matched;
    }
    return rep;
}

std::vector<std::pair<std::string, double>> unitarity_suite(const NetworkParams& params) {
    const SiteSpace space = SiteSpace::network();
    std::vector<std::pair<std::string, double>> out;
    auto add = [&](const std::string& name, const SLHTriple& g) {
        out.emplace_back(name, check_unitary(g).residual);
    };

    add("bs(default)", catalog::beamsplitter(space));
    add("bs(port_swapped)", catalog::beamsplitter(space, BsOrientation::PortSwapped));
    for (int k = 1; k <= 4; ++k)
        add("relay_sr(" + std::to_string(k) + ")",
            catalog::relay_set_reset(space, SiteLabel::relay(k)));
    add("relay_router(1,flipped)", catalog::relay_router(space, SiteLabel::relay(1), true));
    add("relay_router(2)", catalog::relay_router(space, SiteLabel::relay(2)));
    add("probe_z(1,1)", catalog::probe_qubit(space, SiteLabel::memory(1, 1), ProbeAxis::Z));
    add("probe_x(2,3)", catalog::probe_qubit(space, SiteLabel::memory(2, 3), ProbeAxis::X));

    for (ProbeAxis axis : {ProbeAxis::Z, ProbeAxis::X}) {
        std::vector<std::pair<std::string, SLHTriple>> stages;
        const ProbeLayout lay = params.topology == Topology::Grid ? grid_layout(axis)
                                                                  : zigzag_layout(axis);
        build_probe(space, lay, axis, params.alpha, &stages);
        for (const auto& [name, g] : stages) add(name, g);
    }
    for (SyndromePair pair : {SyndromePair::Z, SyndromePair::X}) {
        std::vector<std::pair<std::string, SLHTriple>> stages;
        const bool zpair = pair == SyndromePair::Z;
        feedback_hamiltonian(space, SiteLabel::relay(zpair ? 1 : 3),
                             SiteLabel::relay(zpair ? 2 : 4),
                             {SiteLabel::memory(zpair ? 3 : 1, 1),
                              SiteLabel::memory(zpair ? 3 : 2, zpair ? 2 : 1),
                              SiteLabel::memory(3, zpair ? 3 : 1)},
                             zpair ? ProbeAxis::X : ProbeAxis::Z, params.omega, &stages);
        for (const auto& [name, g] : stages) add(name, g);
    }
    return out;
}

}  // namespace aqec
