#pragma once

#include "aqec/catalog.hpp"
#include "aqec/slh.hpp"
#include "aqec/sparse_matrix.hpp"

namespace aqec {

enum class Topology { Grid, Zigzag };

// Single-site Pauli conjugation used as a declared calibration gauge.
struct GaugePauli {
    SiteLabel site;
    Pauli p;
};

struct NetworkParams {
    double alpha = 0;
    double omega = 0;
    double gamma = 0;
    Topology topology = Topology::Grid;
    std::vector<GaugePauli> gauge;  // empty: the calibrated build matches exactly
    std::vector<Pauli> error_types{Pauli::X, Pauli::Z, Pauli::Y};

    void validate() const;
};

enum class SyndromePair { Z, X };  // relays (1,2) driving X feedback / (3,4) driving Z

// Four-channel syndrome-extraction interferometer: middle-line probe at
// sqrt(2)*alpha, split onto the two outer lines, interfered with two local
// oscillators at alpha, terminated in a set-reset relay pair.
SLHTriple build_probe_network(ProbeAxis axis, double alpha,
                              Topology topology = Topology::Grid);

// Effective feedback Hamiltonian of one relay pair: the two routed beams are
// composed as SLH triples and every target qubit's branch amplitudes are
// folded through the bilinear Raman rule.
OperatorSum build_feedback_network(SyndromePair pair, double omega);

// The full composed network: probe channels L1..L8, then the dephasing
// channels, with the feedback Hamiltonian.
MasterEquation build_full_network(const NetworkParams& params);

// The closed-form master equation the composition must reproduce, written
// out operator by operator.
MasterEquation reference_master_equation(const NetworkParams& params);

// Reduced five-site model: one column of three memory qubits with its own
// parity interferometer, relay pair, X feedback, and per-qubit error
// channels.  Small enough (dim 32) for dense integration.
MasterEquation build_column_model(const NetworkParams& params);
MasterEquation reference_column_model(const NetworkParams& params);

// Conjugate H and every collapse operator by the listed single-site Paulis.
MasterEquation apply_gauge(const MasterEquation& me, const std::vector<GaugePauli>& gauge);

struct ComparisonReport {
    double h_residual = 0;
    double channel_residual = 0;
    std::vector<int> pairing;        // channel i of a <-> pairing[i] of b
    std::vector<double> per_channel; // deviation after phase alignment
    double residual() const { return std::max(h_residual, channel_residual); }
};

// Elementwise sparse-matrix comparison; collapse operators are compared as a
// set, quotiented by channel permutation and per-channel global phase.
ComparisonReport compare_master_equations(const MasterEquation& a, const MasterEquation& b);

// Unitarity checks over every catalog component and every composed stage of
// the probe and feedback networks.
std::vector<std::pair<std::string, double>> unitarity_suite(const NetworkParams& params);

}  // namespace aqec
