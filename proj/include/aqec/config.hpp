#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "aqec/network.hpp"

namespace aqec {

// One simulation run: physical rates, error mix, topology, time grid,
// ensemble size and seeding, output location.  Serialized as JSON; the only
// environment override honored is the output directory.
struct RunConfig {
    double gamma = 0.1;
    double alpha = 12.5;
    double omega = 100.0;
    std::string alpha_rule;  // "" (use alpha) or "omega/8"
    std::vector<Pauli> error_types{Pauli::X, Pauli::Z, Pauli::Y};
    Topology topology = Topology::Grid;
    double t_max = 5.0;
    int n_points = 51;
    double dt = 0.0;  // 0: automatic
    int n_traj = 300;
    uint64_t master_seed = 20260809ULL;
    int workers = 0;  // 0: all cores
    std::string output_dir = "results";

    void validate() const;  // throws ConfigError naming the offending field
    double effective_alpha() const;
    NetworkParams network_params() const;

    std::string serialize() const;
    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    bool operator==(const RunConfig&) const = default;
};

std::string pauli_set_string(const std::vector<Pauli>& types);
std::vector<Pauli> parse_pauli_set(const std::string& s);
std::string topology_name(Topology t);
Topology parse_topology(const std::string& s);

}  // namespace aqec
