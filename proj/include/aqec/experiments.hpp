#pragma once

#include <filesystem>

#include "aqec/config.hpp"
#include "aqec/trajectory.hpp"

namespace aqec {

struct AuditCheck {
    std::string name;
    double residual = 0;
    double threshold = 0;
    bool pass = false;
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    double eq2_residual = 0;
    bool passed() const;
    std::string str() const;
};

// Deliberate single-fault injections for negative-control testing: flip one
// Hamiltonian term, flip one term inside a collapse operator, or break one
// decoder entry.
enum class CorruptKind { None, HSign, LSign, Decoder };
CorruptKind parse_corrupt(const std::string& s);

// Build the network, compare against the closed-form reference, and run the
// unitarity, decoder, steady-state and fidelity-operator audits.
AuditReport compose_and_audit(const NetworkParams& params,
                              CorruptKind corrupt = CorruptKind::None);

struct RunResult {
    std::filesystem::path dir;
    EnsembleEstimate est;
    double eq2_residual = 0;
    double wall_seconds = 0;
};

// One full-network ensemble run: composes and cross-checks the master
// equation, simulates, and writes curve.csv + metadata.json + config.json
// under <output_dir>/<label>/.
RunResult run_custom(const RunConfig& cfg, const std::string& label);

struct Fig3Result {
    std::vector<double> omegas;
    std::vector<RunResult> runs;
    bool ordering_ok_t1 = false;
    bool ordering_ok_t5 = false;
    bool crossing_found = false;
    double crossing_t = 0;
};
// Feedback-strength sweep at alpha = omega/8 with all error types.
Fig3Result run_fig3(RunConfig base, std::vector<double> omegas);

struct Fig4Result {
    std::vector<std::string> labels;
    std::vector<RunResult> runs;
    bool ordering_ok = false;    // f(X-only) >= f(Y-only) >= f(all) at t = 1
    bool nofb_lowest = false;    // no-feedback curve lowest for t >= 0.5
};
// Error-type comparison at fixed {gamma, alpha, omega}, plus the
// feedback-off reference curve (omega = 0, probes kept on).
Fig4Result run_fig4(RunConfig base);

// Tidy long-format per-figure CSV (curve label column prepended) plus a
// plotting stub; byte-stable for identical inputs.
void emit_plot_data(const std::filesystem::path& results_dir, const std::string& fig,
                    const std::filesystem::path& out_dir);

// Observables recorded by full-network runs: codeword fidelity and the four
// relay |-> occupations.
std::vector<Observable> standard_observables();

void write_ensemble_csv(const std::filesystem::path& file, const EnsembleEstimate& est,
                        double bare_gamma);

int nearest_grid_index(const std::vector<double>& t, double value);

}  // namespace aqec
