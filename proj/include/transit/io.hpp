#pragma once

#include <filesystem>
#include <string>

#include "transit/config.hpp"
#include "transit/network.hpp"

namespace transit {

// Loads stations.csv, edges.csv, and lines.csv from a directory. The
// stations header selects the coordinate system: `id,name,lat,lon,
// transfer_eligible` for geographic input, `id,name,x,y,transfer_eligible`
// for planar miles. Blank edge lengths default to the crow-fly distance.
Network load_network(const std::filesystem::path& directory);

// demand.csv: `origin,destination,demand` with non-negative values.
DemandMatrix load_demand(const std::filesystem::path& file, const Network& net);

CostTable load_costs(const std::filesystem::path& file);
EfficiencyConfig load_efficiency_config(const std::filesystem::path& file);
LineConstructionConfig load_construction_config(const std::filesystem::path& file);

std::string read_text_file(const std::filesystem::path& file);

}  // namespace transit
