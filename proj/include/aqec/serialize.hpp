#pragma once

#include <string>

#include "json.hpp"

#include "aqec/network.hpp"

namespace aqec {

// Human-readable operator serialization: one record per canonical term,
// {re, im, factors: [[site_label, op_name], ...]}.
nlohmann::ordered_json operator_sum_to_json(const OperatorSum& os);
nlohmann::ordered_json master_equation_to_json(const MasterEquation& me);
nlohmann::ordered_json triple_to_json(const SLHTriple& g);
nlohmann::ordered_json comparison_to_json(const ComparisonReport& rep);

// Catalog component lookup for the CLI: "probe_z(1,2)", "relay_sr(1)",
// "relay_router(2,flip)", "bs(default)", "drive(12.5)", "identity(2)".
SLHTriple catalog_component(const SiteSpace& space, const std::string& name);
std::string catalog_listing();

// Locale-independent shortest-faithful double formatting for CSV output.
std::string format_double(double v);

}  // namespace aqec
