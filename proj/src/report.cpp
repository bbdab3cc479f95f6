#include "transit/report.hpp"

#include <fmt/core.h>

namespace transit {

std::string format_line_rows(const std::vector<std::string>& station_names) {
  std::string out;
  for (std::size_t i = 1; i < station_names.size(); ++i) {
    out += fmt::format("{} -> {}\n", station_names[i - 1], station_names[i]);
  }
  return out;
}

std::string format_metrics_block(const RunReport& report) {
  return fmt::format(
      "Total algorithm runtime in minutes: {}\n"
      "Old network efficiency: {}\n"
      "New network efficiency: {}\n"
      "Improvement: {}\n"
      "Percentage improvement: {}%\n",
      static_cast<long long>(report.runtime_minutes), report.old_efficiency,
      report.new_efficiency, report.improvement,
      report.percentage_improvement);
}

}  // namespace transit
