#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "aqec/code_toolkit.hpp"
#include "aqec/network.hpp"
#include "aqec/trajectory.hpp"

using namespace aqec;

namespace {

const double kRoot2 = std::numbers::sqrt2;

NetworkParams paper_params() {
    NetworkParams p;
    p.gamma = 0.1;
    p.alpha = 100.0 / 8.0;
    p.omega = 100.0;
    return p;
}

OperatorSum relay_proj(const SiteSpace& s, int k, bool plus) {
    return OperatorSum::local(s, s.index_of(SiteLabel::relay(k)),
                              plus ? LocalOp::proj_plus() : LocalOp::proj_minus());
}

}  // namespace

TEST_CASE("probe network: shape, unitarity, collapse operators") {
    const double alpha = 12.5;
    const SLHTriple gz = build_probe_network(ProbeAxis::Z, alpha);
    CHECK(gz.n == 4);
    CHECK(check_unitary(gz).residual < 1e-12);
    CHECK(gz.H.is_zero());

    // collapse operators equal the closed-form L1..L4 exactly
    NetworkParams p;
    p.alpha = alpha;
    const MasterEquation ref = reference_master_equation(p);
    for (int i = 0; i < 4; ++i) CHECK(gz.L[i].equals(ref.collapse[i], 1e-12));

    const SLHTriple gx = build_probe_network(ProbeAxis::X, alpha);
    for (int i = 0; i < 4; ++i) CHECK(gx.L[i].equals(ref.collapse[4 + i], 1e-12));

    // alpha = 0 turns everything off
    const SLHTriple g0 = build_probe_network(ProbeAxis::Z, 0.0);
    for (const OperatorSum& l : g0.L) CHECK(l.is_zero());
}

TEST_CASE("feedback network matches the closed-form Hamiltonian") {
    const double omega = 100;
    const SiteSpace space = SiteSpace::network();
    const OperatorSum hz = build_feedback_network(SyndromePair::Z, omega);
    const OperatorSum hx = build_feedback_network(SyndromePair::X, omega);

    auto mem = [&](int r, int c, Pauli p) {
        return OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, c)), p);
    };
    const OperatorSum want_z =
        mem(3, 1, Pauli::X) * relay_proj(space, 1, false) * relay_proj(space, 2, true) *
            cplx(kRoot2 * omega, 0) +
        mem(3, 2, Pauli::X) * relay_proj(space, 1, false) * relay_proj(space, 2, false) *
            cplx(omega, 0) -
        mem(3, 3, Pauli::X) * relay_proj(space, 1, true) * relay_proj(space, 2, false) *
            cplx(kRoot2 * omega, 0);
    CHECK(hz.equals(want_z, 1e-10));

    const OperatorSum want_x =
        mem(1, 1, Pauli::Z) * relay_proj(space, 3, false) * relay_proj(space, 4, true) *
            cplx(kRoot2 * omega, 0) +
        mem(2, 1, Pauli::Z) * relay_proj(space, 3, false) * relay_proj(space, 4, false) *
            cplx(omega, 0) -
        mem(3, 1, Pauli::Z) * relay_proj(space, 3, true) * relay_proj(space, 4, false) *
            cplx(kRoot2 * omega, 0);
    CHECK(hx.equals(want_x, 1e-10));

    // both relays in |+> annihilate every feedback term
    const OperatorSum pp = relay_proj(space, 1, true) * relay_proj(space, 2, true);
    CHECK((hz * pp).is_zero());
    CHECK(build_feedback_network(SyndromePair::Z, 0.0).is_zero());
}

TEST_CASE("full network: 35 channels, Eq oracle equality") {
    const NetworkParams p = paper_params();
    const MasterEquation me = build_full_network(p);
    CHECK(me.n_channels() == 35);
    CHECK(me.H.is_hermitian());

    const MasterEquation ref = reference_master_equation(p);
    const ComparisonReport rep = compare_master_equations(me, ref);
    CHECK(rep.residual() < 1e-10);
    // the calibrated build needs no channel shuffling and no gauge
    for (size_t i = 0; i < rep.pairing.size(); ++i) CHECK(rep.pairing[i] == (int)i);
}

TEST_CASE("reference master equation spot checks") {
    const NetworkParams p = paper_params();
    const SiteSpace space = SiteSpace::network();
    const MasterEquation ref = reference_master_equation(p);

    // L1 restricted to the even sector of Z*1 Z*2 acts as sqrt2 alpha sigma_pm
    OperatorSum zz = OperatorSum::identity(space);
    for (int r = 1; r <= 3; ++r)
        for (int c : {1, 2})
            zz = zz * OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, c)),
                                         Pauli::Z);
    const OperatorSum even_proj = (OperatorSum::identity(space) + zz) * cplx(0.5, 0);
    const OperatorSum lhs = ref.collapse[0] * even_proj;
    const OperatorSum want =
        OperatorSum::local(space, space.index_of(SiteLabel::relay(1)), LocalOp::sigma_pm()) *
        even_proj * cplx(kRoot2 * p.alpha, 0);
    CHECK(lhs.equals(want, 1e-10));

    // H restricted to each relay sector yields the right single term
    const OperatorSum h = ref.H;
    auto sector = [&](bool r1_plus, bool r2_plus) {
        return relay_proj(space, 1, r1_plus) * relay_proj(space, 2, r2_plus) *
               relay_proj(space, 3, true) * relay_proj(space, 4, true);
    };
    auto mem = [&](int r, int c, Pauli pp) {
        return OperatorSum::pauli(space, space.index_of(SiteLabel::memory(r, c)), pp);
    };
    CHECK((h * sector(false, true))
              .equals(mem(3, 1, Pauli::X) * sector(false, true) * cplx(kRoot2 * p.omega, 0),
                      1e-10));
    CHECK((h * sector(false, false))
              .equals(mem(3, 2, Pauli::X) * sector(false, false) * cplx(p.omega, 0), 1e-10));
    CHECK((h * sector(true, false))
              .equals(mem(3, 3, Pauli::X) * sector(true, false) * cplx(-kRoot2 * p.omega, 0),
                      1e-10));
    CHECK((h * sector(true, true)).is_zero());

    // zero rates give the zero generator
    NetworkParams z;
    const MasterEquation zero = reference_master_equation(z);
    CHECK(zero.H.is_zero());
    for (const OperatorSum& l : zero.collapse) CHECK(l.is_zero());
}

TEST_CASE("comparison quotient: permutation and channel phase") {
    const NetworkParams p = paper_params();
    const MasterEquation a = build_full_network(p);
    CHECK(compare_master_equations(a, a).residual() == 0.0);

    // global channel phases and channel order are physically irrelevant
    MasterEquation b = a;
    b.collapse[0] = b.collapse[0] * cplx(-1, 0);
    std::swap(b.collapse[2], b.collapse[6]);
    CHECK(compare_master_equations(a, b).residual() < 1e-12);

    // an internal sign flip is a real deviation and is reported
    MasterEquation c = a;
    const CanonicalTerm& t = c.collapse[0].terms().front();
    TensorTerm tt;
    tt.coeff = t.coeff * cplx(-2, 0);
    for (const auto& [site, pp] : t.factors) tt.factors.emplace_back(site, pauli_local(pp));
    c.collapse[0] = c.collapse[0] + OperatorSum(c.collapse[0].space(), {tt});
    CHECK(compare_master_equations(a, c).residual() > 1e-3);

    MasterEquation fewer = a;
    fewer.collapse.pop_back();
    CHECK_THROWS(compare_master_equations(a, fewer));
}

TEST_CASE("gauge conjugation is an involution and preserves spectra") {
    const NetworkParams p = paper_params();
    const MasterEquation a = build_full_network(p);
    const std::vector<GaugePauli> gauge{{SiteLabel::relay(1), Pauli::Z},
                                        {SiteLabel::memory(2, 2), Pauli::X}};
    const MasterEquation twice = apply_gauge(apply_gauge(a, gauge), gauge);
    CHECK(compare_master_equations(a, twice).residual() < 1e-12);
}

TEST_CASE("zig-zag rethreading yields the identical master equation") {
    NetworkParams zig = paper_params();
    zig.topology = Topology::Zigzag;
    const MasterEquation a = build_full_network(zig);
    const MasterEquation b = build_full_network(paper_params());
    CHECK(compare_master_equations(a, b).residual() < 1e-10);
    // and therefore also matches the closed form
    CHECK(compare_master_equations(a, reference_master_equation(zig)).residual() < 1e-10);
}

TEST_CASE("probe scattering operators commute with the logicals") {
    const SiteSpace space = SiteSpace::network();
    const CodeFrame f = code_frame();
    const OperatorSum xl = f.x_logical.to_operator_sum(space);
    const OperatorSum zl = f.z_logical.to_operator_sum(space);
    const SLHTriple gz = build_probe_network(ProbeAxis::Z, 1.0);
    const SLHTriple gx = build_probe_network(ProbeAxis::X, 1.0);
    for (const SLHTriple* g : {&gz, &gx}) {
        for (int i = 0; i < g->n; ++i) {
            for (int j = 0; j < g->n; ++j) {
                const OperatorSum& s = g->s(i, j);
                CHECK((s * xl - xl * s).coeff_l1() < 1e-10);
                CHECK((s * zl - zl * s).coeff_l1() < 1e-10);
            }
        }
    }
}

TEST_CASE("collapse operators leave the no-error sector invariant") {
    // Gamma = 0: one application of the generator to the initial state is
    // zero (the steady-state property, checked without any integration).
    NetworkParams p = paper_params();
    p.gamma = 0;
    const CompiledGenerator gen = CompiledGenerator::compile(build_full_network(p));
    const Vec psi0 = initial_state();
    CHECK(steady_state_residual(gen, psi0) < 1e-10);
}

TEST_CASE("concatenation order only relabels channels") {
    // Building with the X-syndrome block first gives the same dissipator set.
    const NetworkParams p = paper_params();
    const SiteSpace space = SiteSpace::network();
    SLHTriple net = concat(concat(build_probe_network(ProbeAxis::X, p.alpha),
                                  build_probe_network(ProbeAxis::Z, p.alpha)),
                           catalog::error_channels(space, p.gamma, p.error_types));
    net.H = build_feedback_network(SyndromePair::Z, p.omega) +
            build_feedback_network(SyndromePair::X, p.omega);
    const MasterEquation swapped = extract_master_equation(net);
    CHECK(compare_master_equations(swapped, build_full_network(p)).residual() < 1e-10);
}

TEST_CASE("column model composes against its closed form") {
    NetworkParams p;
    p.alpha = 5;
    p.omega = 40;
    p.gamma = 0.1;
    p.error_types = {Pauli::X};
    const MasterEquation me = build_column_model(p);
    CHECK(me.n_channels() == 4 + 3);
    CHECK(compare_master_equations(me, reference_column_model(p)).residual() < 1e-10);

    // steady state of the lossless column model
    NetworkParams q = p;
    q.gamma = 0;
    const CompiledGenerator gen = CompiledGenerator::compile(build_column_model(q));
    CHECK(steady_state_residual(gen, column_model_initial_state()) < 1e-10);
}

TEST_CASE("unitarity suite covers catalog and composed stages") {
    NetworkParams p = paper_params();
    const auto suite = unitarity_suite(p);
    CHECK(suite.size() > 15);
    for (const auto& [name, residual] : suite) {
        INFO(name);
        CHECK(residual < 1e-12);
    }
}
