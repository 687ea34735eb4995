#include "aqec/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace aqec {

using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json operator_sum_to_json(const OperatorSum& os) {
    ordered_json terms = ordered_json::array();
    for (const CanonicalTerm& t : os.terms()) {
        ordered_json rec;
        rec["re"] = t.coeff.real();
        rec["im"] = t.coeff.imag();
        ordered_json factors = ordered_json::array();
        for (const auto& [site, p] : t.factors)
            factors.push_back({os.space().label(site).str(), pauli_name(p)});
        rec["factors"] = std::move(factors);
        terms.push_back(std::move(rec));
    }
    return terms;
}

ordered_json master_equation_to_json(const MasterEquation& me) {
    ordered_json j;
    ordered_json sites = ordered_json::array();
    for (const SiteLabel& l : me.space.labels()) sites.push_back(l.str());
    j["sites"] = std::move(sites);
    j["hamiltonian"] = operator_sum_to_json(me.H);
    ordered_json ls = ordered_json::array();
    for (const OperatorSum& l : me.collapse) ls.push_back(operator_sum_to_json(l));
    j["collapse"] = std::move(ls);
    return j;
}

ordered_json triple_to_json(const SLHTriple& g) {
    ordered_json j;
    j["name"] = g.name;
    j["channels"] = g.n;
    ordered_json s = ordered_json::array();
    for (int i = 0; i < g.n; ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < g.n; ++k) row.push_back(operator_sum_to_json(g.s(i, k)));
        s.push_back(std::move(row));
    }
    j["S"] = std::move(s);
    ordered_json l = ordered_json::array();
    for (const OperatorSum& li : g.L) l.push_back(operator_sum_to_json(li));
    j["L"] = std::move(l);
    j["H"] = operator_sum_to_json(g.H);
    return j;
}

ordered_json comparison_to_json(const ComparisonReport& rep) {
    ordered_json j;
    j["h_residual"] = rep.h_residual;
    j["channel_residual"] = rep.channel_residual;
    j["residual"] = rep.residual();
    j["pairing"] = rep.pairing;
    j["per_channel"] = rep.per_channel;
    return j;
}

namespace {

// "name(a,b,...)" -> name + raw argument strings
bool split_call(const std::string& s, std::string& name, std::vector<std::string>& args) {
    const size_t open = s.find('(');
    if (open == std::string::npos) {
        name = s;
        return true;
    }
    if (s.back() != ')') return false;
    name = s.substr(0, open);
    std::string body = s.substr(open + 1, s.size() - open - 2);
    size_t pos = 0;
    while (pos <= body.size() && !body.empty()) {
        size_t comma = body.find(',', pos);
        if (comma == std::string::npos) {
            args.push_back(body.substr(pos));
            break;
        }
        args.push_back(body.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return true;
}

}  // namespace

SLHTriple catalog_component(const SiteSpace& space, const std::string& spec) {
    std::string name;
    std::vector<std::string> args;
    if (!split_call(spec, name, args))
        throw std::invalid_argument("component: cannot parse '" + spec + "'");
    auto int_arg = [&](size_t i) { return std::stoi(args.at(i)); };

    if (name == "identity") return catalog::identity(space, args.empty() ? 1 : int_arg(0));
    if (name == "drive") return catalog::drive(space, std::stod(args.at(0)));
    if (name == "bs") {
        BsOrientation o = BsOrientation::Default;
        if (!args.empty()) {
            if (args[0] == "default") o = BsOrientation::Default;
            else if (args[0] == "negated") o = BsOrientation::Negated;
            else if (args[0] == "port_swapped") o = BsOrientation::PortSwapped;
            else if (args[0] == "port_swapped_negated") o = BsOrientation::PortSwappedNegated;
            else throw std::invalid_argument("bs: unknown orientation '" + args[0] + "'");
        }
        return catalog::beamsplitter(space, o);
    }
    if (name == "probe_z" || name == "probe_x")
        return catalog::probe_qubit(space, SiteLabel::memory(int_arg(0), int_arg(1)),
                                    name == "probe_z" ? ProbeAxis::Z : ProbeAxis::X);
    if (name == "relay_sr") return catalog::relay_set_reset(space, SiteLabel::relay(int_arg(0)));
    if (name == "relay_router")
        return catalog::relay_router(space, SiteLabel::relay(int_arg(0)),
                                     args.size() > 1 && args[1] == "flip");
    throw std::invalid_argument("component: unknown catalog entry '" + name + "'");
}

std::string catalog_listing() {
    return "identity(n)            n-channel identity\n"
           "drive(gamma)           cw input W^gamma\n"
           "bs(orientation)        50/50 beamsplitter: default, negated,\n"
           "                       port_swapped, port_swapped_negated\n"
           "probe_z(i,j)           Z-basis conditional reflection off qubit (i,j)\n"
           "probe_x(i,j)           X-basis conditional reflection off qubit (i,j)\n"
           "relay_sr(k)            set-reset control of relay k\n"
           "relay_router(k[,flip]) relay-state routing, optional direct-port flip\n";
}

}  // namespace aqec
