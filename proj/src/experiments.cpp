#include "aqec/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aqec/code_toolkit.hpp"
#include "aqec/errors.hpp"
#include "aqec/serialize.hpp"
#include "aqec/version.hpp"

namespace aqec {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

OperatorSum flip_first_term(const OperatorSum& os) {
    if (os.is_zero()) return os;
    const CanonicalTerm& t = os.terms().front();
    TensorTerm tt;
    tt.coeff = t.coeff * cplx(-2, 0);
    for (const auto& [site, p] : t.factors) tt.factors.emplace_back(site, pauli_local(p));
    return os + OperatorSum(os.space(), {tt});
}

double clock_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

fs::path resolve_output_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("AQEC_OUTPUT_DIR"); env && *env) return fs::path(env);
    return fs::path(cfg.output_dir);
}

void write_metadata(const fs::path& dir, const RunConfig& cfg, const std::string& label,
                    const RunResult& res, double mean_jumps, double dt_used) {
    ordered_json j;
    j["version"] = kVersion;
    j["curve_label"] = label;
    j["config"] = ordered_json::parse(cfg.serialize());
    j["effective_alpha"] = cfg.effective_alpha();
    j["eq2_residual"] = res.eq2_residual;
    j["dt_used"] = dt_used;
    j["mean_jumps_per_trajectory"] = mean_jumps;
    j["wall_time_s"] = res.wall_seconds;
    std::ofstream out(dir / "metadata.json");
    out << j.dump(2) << "\n";
}

}  // namespace

bool AuditReport::passed() const {
    for (const AuditCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string AuditReport::str() const {
    std::ostringstream os;
    for (const AuditCheck& c : checks)
        os << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual " << c.residual
           << "  (threshold " << c.threshold << ")\n";
    return os.str();
}

CorruptKind parse_corrupt(const std::string& s) {
    if (s.empty() || s == "none") return CorruptKind::None;
    if (s == "h-sign") return CorruptKind::HSign;
    if (s == "l-sign") return CorruptKind::LSign;
    if (s == "decoder") return CorruptKind::Decoder;
    throw ConfigError("corrupt: expected none, h-sign, l-sign or decoder; got '" + s + "'");
}

AuditReport compose_and_audit(const NetworkParams& params, CorruptKind corrupt) {
    params.validate();
    AuditReport rep;
    auto push = [&rep](const std::string& name, double residual, double threshold) {
        rep.checks.push_back({name, residual, threshold, residual < threshold});
    };

    MasterEquation built = build_full_network(params);
    if (corrupt == CorruptKind::HSign) built.H = flip_first_term(built.H);
    if (corrupt == CorruptKind::LSign)
        built.collapse.front() = flip_first_term(built.collapse.front());
    const MasterEquation gauged = apply_gauge(built, params.gauge);
    const MasterEquation ref = reference_master_equation(params);
    const ComparisonReport cmp = compare_master_equations(gauged, ref);
    rep.eq2_residual = cmp.residual();
    push("eq2-compare", cmp.residual(), 1e-10);

    double worst_unitarity = 0;
    for (const auto& [name, r] : unitarity_suite(params))
        worst_unitarity = std::max(worst_unitarity, r);
    push("unitarity-suite", worst_unitarity, 1e-12);

    int decoder_failures = 0;
    bool y22_ok = false;
    for (const DecoderCase& c : audit_decoder()) {
        bool pass = c.pass;
        if (corrupt == CorruptKind::Decoder &&
            c.syndrome == SyndromeVector{{-1, -1, -1, -1}})
            pass = false;
        if (!pass) ++decoder_failures;
        if (c.error == PauliString::single(2, 2, Pauli::Y)) {
            const PauliString want = PauliString::single(3, 2, Pauli::X) *
                                     PauliString::single(2, 1, Pauli::Z);
            y22_ok = c.syndrome == SyndromeVector{{-1, -1, -1, -1}} && c.recovery == want;
        }
    }
    push("decoder-28case", static_cast<double>(decoder_failures), 0.5);
    push("decoder-y22", y22_ok ? 0.0 : 1.0, 0.5);

    NetworkParams lossless = params;
    lossless.gamma = 0;
    const CompiledGenerator gen = CompiledGenerator::compile(build_full_network(lossless));
    push("steady-state", steady_state_residual(gen, initial_state()), 1e-10);

    const OperatorSum f = fidelity_operator();
    const Vec psi0 = initial_state();
    const SparseMatrix fm = to_matrix(f, SiteSpace::network());
    Vec tmp(psi0.size());
    kernels::spmv(fm, psi0, tmp, false);
    const double tr_f_rho0 = std::real(kernels::dot_serial(psi0, tmp));
    double fid_residual = std::abs(tr_f_rho0 - 1.0);
    fid_residual = std::max(fid_residual, (f * f - f).coeff_l1());
    fid_residual = std::max(fid_residual, std::abs(f.trace().real() - 256.0));
    fid_residual = std::max(fid_residual, fidelity_dual_construction_residual());
    push("fidelity-operator", fid_residual, 1e-10);

    NetworkParams zig = params;
    zig.topology = Topology::Zigzag;
    NetworkParams grid = params;
    grid.topology = Topology::Grid;
    const ComparisonReport zz =
        compare_master_equations(build_full_network(zig), build_full_network(grid));
    push("zigzag-equivalence", zz.residual(), 1e-10);

    return rep;
}

std::vector<Observable> standard_observables() {
    const SiteSpace space = SiteSpace::network();
    std::vector<Observable> obs;
    obs.push_back({"fidelity", to_matrix(fidelity_operator(), space)});
    for (int k = 1; k <= 4; ++k) {
        const OperatorSum p = OperatorSum::local(
            space, space.index_of(SiteLabel::relay(k)), LocalOp::proj_minus());
        obs.push_back({"relay" + std::to_string(k) + "_minus", to_matrix(p, space)});
    }
    return obs;
}

void write_ensemble_csv(const fs::path& file, const EnsembleEstimate& est,
                        double bare_gamma) {
    std::ofstream out(file);
    if (!out) throw SolverError("cannot write " + file.string());
    out << "t,observable,estimate,stderr,n_traj\n";
    for (size_t o = 0; o < est.names.size(); ++o)
        for (size_t i = 0; i < est.t.size(); ++i)
            out << format_double(est.t[i]) << ',' << est.names[o] << ','
                << format_double(est.mean[o][i]) << ',' << format_double(est.stderr_[o][i])
                << ',' << est.n_traj << "\n";
    for (size_t i = 0; i < est.t.size(); ++i)
        out << format_double(est.t[i]) << ",bare_qubit_fidelity,"
            << format_double(bare_qubit_fidelity(bare_gamma, est.t[i])) << ",0,0\n";
}

int nearest_grid_index(const std::vector<double>& t, double value) {
    int best = 0;
    for (size_t i = 1; i < t.size(); ++i)
        if (std::abs(t[i] - value) < std::abs(t[best] - value)) best = static_cast<int>(i);
    return best;
}

RunResult run_custom(const RunConfig& cfg, const std::string& label) {
    cfg.validate();
    const double t_start = clock_seconds();

    const NetworkParams params = cfg.network_params();
    const MasterEquation me = apply_gauge(build_full_network(params), params.gauge);
    const ComparisonReport cmp =
        compare_master_equations(me, reference_master_equation(params));

    RunResult res;
    res.eq2_residual = cmp.residual();
    if (res.eq2_residual > 1e-10)
        throw AuditError("composed master equation deviates from the reference by " +
                         std::to_string(res.eq2_residual));

    const CompiledGenerator gen = CompiledGenerator::compile(me);
    const Vec psi0 = initial_state();
    const TimeGrid grid{cfg.t_max, cfg.n_points};
    res.est = run_ensemble(gen, psi0, grid, cfg.dt, cfg.n_traj, cfg.master_seed,
                           cfg.workers, standard_observables());

    res.dir = resolve_output_dir(cfg) / label;
    fs::create_directories(res.dir);
    write_ensemble_csv(res.dir / "curve.csv", res.est, cfg.gamma);
    cfg.save(res.dir / "config.json");
    res.wall_seconds = clock_seconds() - t_start;
    write_metadata(res.dir, cfg, label, res, res.est.mean_jumps, res.est.dt_used);
    return res;
}

namespace {

std::string omega_label(double w) {
    std::ostringstream os;
    os << "omega_" << w;
    return os.str();
}

// f(a) >= f(b) allowing 3 sigma of combined statistical slack.
bool geq_3sigma(const EnsembleEstimate& a, const EnsembleEstimate& b, int idx) {
    const double s = std::sqrt(a.stderr_[0][idx] * a.stderr_[0][idx] +
                               b.stderr_[0][idx] * b.stderr_[0][idx]);
    return a.mean[0][idx] >= b.mean[0][idx] - 3.0 * s;
}

}  // namespace

Fig3Result run_fig3(RunConfig base, std::vector<double> omegas) {
    base.alpha_rule = "omega/8";
    Fig3Result fig;
    fig.omegas = omegas;
    for (double w : omegas) {
        RunConfig cfg = base;
        cfg.omega = w;
        fig.runs.push_back(run_custom(cfg, omega_label(w)));
    }

    const std::vector<double>& t = fig.runs.front().est.t;
    const int i1 = nearest_grid_index(t, 1.0);
    const int i5 = nearest_grid_index(t, 5.0);
    fig.ordering_ok_t1 = fig.ordering_ok_t5 = true;
    for (size_t k = 0; k + 1 < fig.runs.size(); ++k) {
        fig.ordering_ok_t1 =
            fig.ordering_ok_t1 && geq_3sigma(fig.runs[k + 1].est, fig.runs[k].est, i1);
        fig.ordering_ok_t5 =
            fig.ordering_ok_t5 && geq_3sigma(fig.runs[k + 1].est, fig.runs[k].est, i5);
    }

    // Crossing of the strongest-feedback curve above the bare-qubit line at
    // 95% confidence, past the initial transient.
    const EnsembleEstimate& top = fig.runs.back().est;
    for (size_t i = 1; i < t.size(); ++i) {
        const double bare = bare_qubit_fidelity(base.gamma, t[i]);
        if (top.mean[0][i] - 1.96 * top.stderr_[0][i] > bare) {
            fig.crossing_found = true;
            fig.crossing_t = t[i];
            break;
        }
    }

    const fs::path dir = fig.runs.front().dir.parent_path();
    ordered_json j;
    j["omegas"] = omegas;
    j["t1_index"] = i1;
    j["t5_index"] = i5;
    ordered_json rows = ordered_json::array();
    for (size_t k = 0; k < fig.runs.size(); ++k) {
        const EnsembleEstimate& e = fig.runs[k].est;
        rows.push_back({{"omega", omegas[k]},
                        {"fidelity_t1", e.mean[0][i1]},
                        {"stderr_t1", e.stderr_[0][i1]},
                        {"fidelity_t5", e.mean[0][i5]},
                        {"stderr_t5", e.stderr_[0][i5]}});
    }
    j["curves"] = std::move(rows);
    j["ordering_nondecreasing_t1"] = fig.ordering_ok_t1;
    j["ordering_nondecreasing_t5"] = fig.ordering_ok_t5;
    j["bare_crossing_found"] = fig.crossing_found;
    j["bare_crossing_t"] = fig.crossing_t;
    std::ofstream(dir / "fig3_summary.json") << j.dump(2) << "\n";
    return fig;
}

Fig4Result run_fig4(RunConfig base) {
    Fig4Result fig;
    struct Curve {
        std::string label;
        std::vector<Pauli> types;
        bool feedback;
    };
    const std::vector<Curve> curves = {
        {"x_only", {Pauli::X}, true},
        {"z_only", {Pauli::Z}, true},
        {"y_only", {Pauli::Y}, true},
        {"all_errors", {Pauli::X, Pauli::Z, Pauli::Y}, true},
        {"no_feedback", {Pauli::X, Pauli::Z, Pauli::Y}, false},
    };
    for (const Curve& c : curves) {
        RunConfig cfg = base;
        cfg.error_types = c.types;
        if (!c.feedback) {
            // Feedback off, probes kept on at the same power.
            cfg.alpha = cfg.effective_alpha();
            cfg.alpha_rule.clear();
            cfg.omega = 0;
        }
        fig.labels.push_back(c.label);
        fig.runs.push_back(run_custom(cfg, c.label));
    }

    const std::vector<double>& t = fig.runs.front().est.t;
    const int i1 = nearest_grid_index(t, 1.0);
    const EnsembleEstimate& ex = fig.runs[0].est;
    const EnsembleEstimate& ey = fig.runs[2].est;
    const EnsembleEstimate& eall = fig.runs[3].est;
    const EnsembleEstimate& enofb = fig.runs[4].est;
    fig.ordering_ok = geq_3sigma(ex, ey, i1) && geq_3sigma(ey, eall, i1);

    fig.nofb_lowest = true;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0.5) continue;
        for (int k = 0; k < 4; ++k)
            fig.nofb_lowest =
                fig.nofb_lowest && enofb.mean[0][i] < fig.runs[k].est.mean[0][i];
    }

    const fs::path dir = fig.runs.front().dir.parent_path();
    ordered_json j;
    j["labels"] = fig.labels;
    j["t1_index"] = i1;
    j["ordering_x_ge_y_ge_all_t1"] = fig.ordering_ok;
    j["no_feedback_lowest_from_t0.5"] = fig.nofb_lowest;
    ordered_json rows = ordered_json::array();
    for (size_t k = 0; k < fig.runs.size(); ++k)
        rows.push_back({{"curve", fig.labels[k]},
                        {"fidelity_t1", fig.runs[k].est.mean[0][i1]},
                        {"stderr_t1", fig.runs[k].est.stderr_[0][i1]}});
    j["curves"] = std::move(rows);
    std::ofstream(dir / "fig4_summary.json") << j.dump(2) << "\n";
    return fig;
}

void emit_plot_data(const fs::path& results_dir, const std::string& fig,
                    const fs::path& out_dir) {
    std::vector<std::pair<std::string, fs::path>> curves;
    if (!fs::is_directory(results_dir))
        throw ConfigError("emit-plots: no results directory " + results_dir.string());
    std::vector<fs::path> subdirs;
    for (const auto& e : fs::directory_iterator(results_dir))
        if (e.is_directory() && fs::exists(e.path() / "curve.csv"))
            subdirs.push_back(e.path());
    std::sort(subdirs.begin(), subdirs.end());
    for (const fs::path& d : subdirs) curves.emplace_back(d.filename().string(), d);
    if (curves.empty())
        throw ConfigError("emit-plots: no runs with curve.csv under " +
                          results_dir.string());

    fs::create_directories(out_dir);
    const fs::path out_csv = out_dir / (fig + "_curves.csv");
    std::ofstream out(out_csv);
    out << "curve,t,observable,estimate,stderr,n_traj\n";
    for (const auto& [label, dir] : curves) {
        std::ifstream in(dir / "curve.csv");
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line))
            if (!line.empty()) out << label << ',' << line << "\n";
    }

    std::ofstream py(out_dir / ("plot_" + fig + ".py"));
    py << "#!/usr/bin/env python3\n"
          "# Quick look at " << fig << "_curves.csv (long format).\n"
          "import csv, collections\n"
          "import matplotlib.pyplot as plt\n\n"
          "rows = list(csv.DictReader(open('" << fig << "_curves.csv')))\n"
          "series = collections.defaultdict(lambda: ([], []))\n"
          "for r in rows:\n"
          "    if r['observable'] not in ('fidelity', 'bare_qubit_fidelity'):\n"
          "        continue\n"
          "    key = r['curve'] + ':' + r['observable']\n"
          "    series[key][0].append(float(r['t']))\n"
          "    series[key][1].append(float(r['estimate']))\n"
          "for key, (t, f) in sorted(series.items()):\n"
          "    style = '--k' if key.endswith('bare_qubit_fidelity') else '-'\n"
          "    plt.plot(t, f, style, label=key)\n"
          "plt.xlabel('t')\n"
          "plt.ylabel('codeword fidelity')\n"
          "plt.legend(fontsize=6)\n"
          "plt.savefig('" << fig << ".png', dpi=160)\n";
}

}  // namespace aqec
