#pragma once

#include <string>
#include <vector>

namespace transit {

struct RunReport {
  double runtime_minutes = 0.0;
  double old_efficiency = 0.0;
  double new_efficiency = 0.0;
  double improvement = 0.0;
  double percentage_improvement = 0.0;
  std::vector<std::string> line_stations;  // ordered display names
};

// One `a -> b` row per consecutive station pair.
std::string format_line_rows(const std::vector<std::string>& station_names);

// The five-line metrics block. Runtime is truncated to whole minutes; all
// other numbers print with full double precision.
std::string format_metrics_block(const RunReport& report);

}  // namespace transit
