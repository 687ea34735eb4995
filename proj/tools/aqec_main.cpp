#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "aqec/code_toolkit.hpp"
#include "aqec/errors.hpp"
#include "aqec/experiments.hpp"
#include "aqec/serialize.hpp"
#include "aqec/version.hpp"

namespace fs = std::filesystem;
using namespace aqec;

namespace {

struct CommonOpts {
    std::string config_file;
    double gamma = -1, alpha = -1, omega = -1;
    std::string alpha_rule = "unset";
    std::string error_types;
    std::string topology;
    double t_max = -1;
    int n_points = -1;
    double dt = -1;
    int n_traj = -1;
    int64_t master_seed = -1;
    int workers = -1;
    std::string output_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_file, "JSON configuration file");
    cmd->add_option("--gamma", o.gamma, "per-qubit, per-error-type rate");
    cmd->add_option("--alpha", o.alpha, "probe coherent amplitude");
    cmd->add_option("--omega", o.omega, "feedback Rabi strength");
    cmd->add_option("--alpha-rule", o.alpha_rule, "'omega/8' to bind alpha to omega");
    cmd->add_option("--error-types", o.error_types, "subset of XZY, e.g. 'XZ'");
    cmd->add_option("--topology", o.topology, "grid or zigzag");
    cmd->add_option("--t-max", o.t_max, "end of the time grid");
    cmd->add_option("--n-points", o.n_points, "grid points (including t = 0)");
    cmd->add_option("--dt", o.dt, "integrator substep (0 = automatic)");
    cmd->add_option("--n-traj", o.n_traj, "trajectories per curve");
    cmd->add_option("--seed", o.master_seed, "master seed");
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    cmd->add_option("--out", o.output_dir, "output directory");
}

RunConfig make_config(const CommonOpts& o) {
    RunConfig cfg;
    if (!o.config_file.empty()) cfg = RunConfig::load(o.config_file);
    if (o.gamma >= 0) cfg.gamma = o.gamma;
    if (o.alpha >= 0) cfg.alpha = o.alpha;
    if (o.omega >= 0) cfg.omega = o.omega;
    if (o.alpha_rule != "unset") cfg.alpha_rule = o.alpha_rule;
    if (!o.error_types.empty()) cfg.error_types = parse_pauli_set(o.error_types);
    if (!o.topology.empty()) cfg.topology = parse_topology(o.topology);
    if (o.t_max > 0) cfg.t_max = o.t_max;
    if (o.n_points > 0) cfg.n_points = o.n_points;
    if (o.dt >= 0) cfg.dt = o.dt;
    if (o.n_traj > 0) cfg.n_traj = o.n_traj;
    if (o.master_seed >= 0) cfg.master_seed = static_cast<uint64_t>(o.master_seed);
    if (o.workers >= 0) cfg.workers = o.workers;
    if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
    cfg.validate();
    return cfg;
}

int cmd_compose(const CommonOpts& opts, const std::string& component,
                const std::string& out_file, bool list_components) {
    if (list_components) {
        std::cout << catalog_listing();
        return kExitOk;
    }
    if (!component.empty()) {
        const SLHTriple g = catalog_component(SiteSpace::network(), component);
        const auto rep = check_unitary(g);
        nlohmann::ordered_json j = triple_to_json(g);
        j["unitarity_residual"] = rep.residual;
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }

    const RunConfig cfg = make_config(opts);
    const NetworkParams params = cfg.network_params();
    const MasterEquation me = apply_gauge(build_full_network(params), params.gauge);
    const MasterEquation ref = reference_master_equation(params);
    const ComparisonReport cmp = compare_master_equations(me, ref);

    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["topology"] = topology_name(params.topology);
    j["alpha"] = params.alpha;
    j["omega"] = params.omega;
    j["gamma"] = params.gamma;
    j["channels"] = me.n_channels();
    j["h_terms"] = me.H.n_terms();
    size_t l_terms = 0;
    for (const OperatorSum& l : me.collapse) l_terms += l.n_terms();
    j["collapse_terms"] = l_terms;
    j["h_hermitian"] = me.H.is_hermitian();
    double worst_unitarity = 0;
    for (const auto& [name, r] : unitarity_suite(params))
        worst_unitarity = std::max(worst_unitarity, r);
    j["unitarity_residual"] = worst_unitarity;
    j["reference_comparison"] = comparison_to_json(cmp);
    j["master_equation"] = master_equation_to_json(me);

    if (out_file.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_file);
        if (!out) throw ConfigError("compose: cannot write " + out_file);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << out_file << "\n";
    }
    std::cout << "channels " << me.n_channels() << ", comparison residual "
              << cmp.residual() << ", unitarity residual " << worst_unitarity << "\n";
    return kExitOk;
}

int cmd_audit(const CommonOpts& opts, const std::string& corrupt) {
    const RunConfig cfg = make_config(opts);
    const AuditReport rep = compose_and_audit(cfg.network_params(), parse_corrupt(corrupt));
    std::cout << rep.str();
    if (!rep.passed()) {
        std::cerr << "audit failed\n";
        return kExitAudit;
    }
    std::cout << "audit passed\n";
    return kExitOk;
}

int cmd_simulate(const CommonOpts& opts, const std::string& label) {
    const RunConfig cfg = make_config(opts);
    const RunResult res = run_custom(cfg, label);
    std::cout << "run " << label << " done: " << res.dir.string() << " ("
              << res.est.n_traj << " trajectories, mean jumps "
              << res.est.mean_jumps << ", wall " << res.wall_seconds << " s)\n";
    return kExitOk;
}

int cmd_fig3(const CommonOpts& opts, std::vector<double> omegas) {
    RunConfig cfg = make_config(opts);
    if (omegas.empty()) omegas = {0, 50, 100, 200};
    const Fig3Result fig = run_fig3(cfg, omegas);
    std::cout << "fig3 done: ordering(t=1) " << (fig.ordering_ok_t1 ? "ok" : "violated")
              << ", ordering(t=5) " << (fig.ordering_ok_t5 ? "ok" : "violated")
              << ", bare-curve crossing "
              << (fig.crossing_found ? "at t = " + std::to_string(fig.crossing_t)
                                     : std::string("not found"))
              << "\n";
    return kExitOk;
}

int cmd_fig4(const CommonOpts& opts) {
    const RunConfig cfg = make_config(opts);
    const Fig4Result fig = run_fig4(cfg);
    std::cout << "fig4 done: ordering X >= Y >= all at t=1 "
              << (fig.ordering_ok ? "ok" : "violated") << ", no-feedback lowest "
              << (fig.nofb_lowest ? "ok" : "violated") << "\n";
    return kExitOk;
}

int cmd_code_check() {
    std::cout << "stabilizer generators:\n";
    for (const PauliString& s : stabilizer_generators()) std::cout << "  " << s.str() << "\n";
    const CodeFrame f = code_frame();
    std::cout << "logicals:\n  X_L " << f.x_logical.str() << "\n  Z_L "
              << f.z_logical.str() << "\n  Y_L " << f.y_logical.str() << "\n";
    std::cout << "gauge pairs:\n";
    for (int k = 0; k < 4; ++k)
        std::cout << "  X_G" << k + 1 << " " << f.x_gauge[k].str() << "   Z_G" << k + 1
                  << " " << f.z_gauge[k].str() << "\n";

    std::cout << "decoder audit (error, syndrome, recovery):\n";
    bool all_pass = true;
    for (const DecoderCase& c : audit_decoder()) {
        std::cout << "  " << c.error.str() << "  " << c.syndrome.str() << "  "
                  << c.recovery.str() << "  " << (c.pass ? "ok" : "FAIL") << "\n";
        all_pass = all_pass && c.pass;
    }

    const OperatorSum fid = fidelity_operator();
    const Vec psi0 = initial_state();
    const SparseMatrix fm = to_matrix(fid, SiteSpace::network());
    Vec tmp(psi0.size());
    kernels::spmv(fm, psi0, tmp, false);
    std::cout << "fidelity operator: Tr F = " << fid.trace().real()
              << ", idempotency residual " << (fid * fid - fid).coeff_l1()
              << ", Tr(F rho0) = " << std::real(kernels::dot_serial(psi0, tmp))
              << ", dual-construction residual " << fidelity_dual_construction_residual()
              << "\n";
    if (!all_pass) {
        std::cerr << "decoder audit failed\n";
        return kExitAudit;
    }
    return kExitOk;
}

int cmd_emit_plots(const std::string& results, const std::string& fig,
                   const std::string& out) {
    emit_plot_data(results, fig, fs::path(out.empty() ? results : out));
    std::cout << "wrote " << fig << "_curves.csv\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autonomous Bacon-Shor coherent-feedback network: composition, audit "
                 "and simulation"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonOpts opts;
    std::string component, out_file, corrupt, label = "custom", results_dir, fig = "fig3",
                plots_out;
    std::vector<double> omegas;
    bool list_components = false;

    CLI::App* compose = app.add_subcommand(
        "compose", "compose the network and emit the serialized master equation");
    add_common(compose, opts);
    compose->add_option("--component", component, "emit one catalog component instead");
    compose->add_flag("--list-components", list_components, "list catalog components");
    compose->add_option("--out-file", out_file, "write the JSON here instead of stdout");

    CLI::App* audit = app.add_subcommand("audit", "run the full audit suite");
    add_common(audit, opts);
    audit->add_option("--corrupt", corrupt,
                      "negative control: none, h-sign, l-sign or decoder");

    CLI::App* simulate = app.add_subcommand("simulate", "custom full-network run");
    add_common(simulate, opts);
    simulate->add_option("--label", label, "run directory name");

    CLI::App* fig3 = app.add_subcommand("fig3", "feedback-strength sweep");
    add_common(fig3, opts);
    fig3->add_option("--omega-list", omegas, "feedback strengths to sweep");

    CLI::App* fig4 = app.add_subcommand("fig4", "error-type comparison");
    add_common(fig4, opts);

    app.add_subcommand("code-check", "print code tables and the decoder audit");

    CLI::App* emit = app.add_subcommand("emit-plots", "tidy plot data from results");
    emit->add_option("--results", results_dir, "results directory")->required();
    emit->add_option("--fig", fig, "figure name used in output files");
    emit->add_option("--plots-out", plots_out, "output directory (default: results)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compose->parsed()) return cmd_compose(opts, component, out_file, list_components);
        if (audit->parsed()) return cmd_audit(opts, corrupt);
        if (simulate->parsed()) return cmd_simulate(opts, label);
        if (fig3->parsed()) return cmd_fig3(opts, omegas);
        if (fig4->parsed()) return cmd_fig4(opts);
        if (app.get_subcommand("code-check")->parsed()) return cmd_code_check();
        if (emit->parsed()) return cmd_emit_plots(results_dir, fig, plots_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const AuditError& e) {
        std::cerr << "audit error: " << e.what() << "\n";
        return kExitAudit;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
