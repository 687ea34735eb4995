#include "aqec/config.hpp"

#include <fstream>

#include "json.hpp"

#include "aqec/errors.hpp"

namespace aqec {

using nlohmann::ordered_json;

std::string pauli_set_string(const std::vector<Pauli>& types) {
    std::string s;
    for (Pauli p : types) s += pauli_name(p);
    return s;
}

std::vector<Pauli> parse_pauli_set(const std::string& s) {
    std::vector<Pauli> out;
    for (char c : s) {
        switch (c) {
            case 'X': case 'x': out.push_back(Pauli::X); break;
            case 'Y': case 'y': out.push_back(Pauli::Y); break;
            case 'Z': case 'z': out.push_back(Pauli::Z); break;
            case ',': case ' ': break;
            default:
                throw ConfigError(std::string("error_types: unrecognized symbol '") + c +
                                  "' (expected letters from XZY)");
        }
    }
    return out;
}

std::string topology_name(Topology t) { return t == Topology::Grid ? "grid" : "zigzag"; }

Topology parse_topology(const std::string& s) {
    if (s == "grid") return Topology::Grid;
    if (s == "zigzag") return Topology::Zigzag;
    throw ConfigError("topology: expected 'grid' or 'zigzag', got '" + s + "'");
}

void RunConfig::validate() const {
    if (gamma < 0) throw ConfigError("gamma: must be nonnegative");
    if (alpha < 0) throw ConfigError("alpha: must be nonnegative");
    if (omega < 0) throw ConfigError("omega: must be nonnegative");
    if (!alpha_rule.empty() && alpha_rule != "omega/8")
        throw ConfigError("alpha_rule: only 'omega/8' is recognized");
    if (error_types.empty() && gamma > 0)
        throw ConfigError("error_types: must be nonempty unless gamma = 0");
    for (size_t i = 0; i < error_types.size(); ++i)
        for (size_t j = i + 1; j < error_types.size(); ++j)
            if (error_types[i] == error_types[j])
                throw ConfigError("error_types: duplicate entry");
    if (t_max <= 0) throw ConfigError("t_max: must be positive");
    if (n_points < 2) throw ConfigError("n_points: must be at least 2");
    if (dt < 0) throw ConfigError("dt: must be nonnegative (0 = automatic)");
    if (n_traj < 1) throw ConfigError("n_traj: must be at least 1");
    if (workers < 0) throw ConfigError("workers: must be nonnegative (0 = all cores)");
    if (output_dir.empty()) throw ConfigError("output_dir: must be nonempty");
}

double RunConfig::effective_alpha() const {
    return alpha_rule == "omega/8" ? omega / 8.0 : alpha;
}

NetworkParams RunConfig::network_params() const {
    NetworkParams p;
    p.alpha = effective_alpha();
    p.omega = omega;
    p.gamma = gamma;
    p.topology = topology;
    p.error_types = error_types;
    return p;
}

std::string RunConfig::serialize() const {
    ordered_json j;
    j["gamma"] = gamma;
    j["alpha"] = alpha;
    j["omega"] = omega;
    j["alpha_rule"] = alpha_rule;
    j["error_types"] = pauli_set_string(error_types);
    j["topology"] = topology_name(topology);
    j["t_max"] = t_max;
    j["n_points"] = n_points;
    j["dt"] = dt;
    j["n_traj"] = n_traj;
    j["master_seed"] = master_seed;
    j["workers"] = workers;
    j["output_dir"] = output_dir;
    return j.dump(2) + "\n";
}

RunConfig RunConfig::parse(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    RunConfig c;
    try {
        if (j.contains("gamma")) c.gamma = j["gamma"].get<double>();
        if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
        if (j.contains("omega")) c.omega = j["omega"].get<double>();
        if (j.contains("alpha_rule")) c.alpha_rule = j["alpha_rule"].get<std::string>();
        if (j.contains("error_types"))
            c.error_types = parse_pauli_set(j["error_types"].get<std::string>());
        if (j.contains("topology"))
            c.topology = parse_topology(j["topology"].get<std::string>());
        if (j.contains("t_max")) c.t_max = j["t_max"].get<double>();
        if (j.contains("n_points")) c.n_points = j["n_points"].get<int>();
        if (j.contains("dt")) c.dt = j["dt"].get<double>();
        if (j.contains("n_traj")) c.n_traj = j["n_traj"].get<int>();
        if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<uint64_t>();
        if (j.contains("workers")) c.workers = j["workers"].get<int>();
        if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: bad field type: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("config: cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse(text);
}

void RunConfig::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw ConfigError("config: cannot write " + file.string());
    out << serialize();
}

}  // namespace aqec
