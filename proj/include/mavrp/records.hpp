#pragma once

#include <string>

#include "mavrp/environment.hpp"
#include "mavrp/oracle.hpp"
#include "mavrp/policies.hpp"

namespace mavrp {

// One-line JSON records for result streams. Each carries a "record" key
// naming its kind.

std::string episode_record(const EpisodeStats& stats, bool with_routes = false);
std::string summary_record(const StatsSummary& summary, Problem problem, int size,
                           std::string_view policy, std::string_view selector);
std::string oracle_record(const InstanceData& inst, const OracleResult& result);
std::string error_record(std::string_view instance, std::string_view message);

} // namespace mavrp
