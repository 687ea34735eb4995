#pragma once

#include <array>
#include <vector>

#include "aqec/kernels.hpp"
#include "aqec/pauli_string.hpp"

namespace aqec {

// Subsystem-code machinery for the 3x3 grid: stabilizer and gauge groups,
// syndrome extraction, single-error recovery, the simulation's initial
// state, and the codeword fidelity operator.

// Generators ordered (Z(cols 1&2), Z(cols 2&3), X(rows 1&2), X(rows 2&3)),
// matching SyndromeVector.
std::array<PauliString, 4> stabilizer_generators();

// The 2-body gauge-group generators: vertical X dominoes and horizontal Z
// dominoes.
std::vector<PauliString> gauge_group_generators();

struct CodeFrame {
    PauliString x_logical, z_logical, y_logical;
    std::array<PauliString, 4> x_gauge, z_gauge;
};

// The validated operator choice: X_L along row 1, Z_L along column 1, and
// four anticommuting gauge pairs picked from the 2-body group.  Throws if
// the built-in choice fails validation.
CodeFrame code_frame();

// Commutation structure only (cheap, exact).  The rank/uniqueness check of
// the joint +1 eigenspace lives in the test suite's dense oracle.
void validate_code_frame(const CodeFrame& f);

SyndromeVector syndrome_of(const PauliString& e);

// Recovery supported on the feedback targets: X on row 3, Z on column 1.
PauliString decode_recovery(const SyndromeVector& s);

struct DecoderCase {
    PauliString error;
    SyndromeVector syndrome;
    PauliString recovery;
    bool pass = false;  // recovery*error commutes with S, X_L, Z_L
};

// All 27 single-qubit errors plus the identity.
std::vector<DecoderCase> audit_decoder();

// Codeword of the 9-qubit memory: the unique joint +1 eigenstate of the four
// stabilizers, Y_L, and the four Z gauge operators (dim 512 vector).
Vec memory_codeword();

// Full 13-site initial state: codeword tensor relays all in |+>.
Vec initial_state();

// F = (projector on the +1 stabilizer sector) * (1 + Y_L)/2, identity on the
// relays; Tr F = 256 and Tr(F rho_0) = 1.
OperatorSum fidelity_operator();

// Deviation between the projector form of F and 2^4 times the codeword
// density matrix with all four gauge qubits depolarized, computed densely on
// the memory factor (the relay factor is identity in both constructions).
double fidelity_dual_construction_residual();

// (1 + exp(-4 gamma t)) / 2: |Y+> fidelity of a bare qubit under X, Y and Z
// dephasing at rate gamma each.
double bare_qubit_fidelity(double gamma, double t);

// Counterparts for the reduced column model (3 qubits + 2 relays):
// stabilizers Z1Z2, Z2Z3, logical Y = Y1 X2 X3.
Vec column_model_initial_state();
OperatorSum column_model_fidelity_operator();

}  // namespace aqec
