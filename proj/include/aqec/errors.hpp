#pragma once

#include <stdexcept>
#include <string>

namespace aqec {

// Exit codes used by the CLI: distinct classes for configuration problems,
// failed audits, and solver faults.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitAudit = 3,
    kExitSolver = 4,
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AuditError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace aqec
