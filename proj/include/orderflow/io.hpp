#pragma once

#include <string>
#include <vector>

#include "orderflow/estimators.hpp"
#include "orderflow/grid.hpp"
#include "orderflow/hawkes.hpp"

namespace orderflow::io {

// events CSV: header time,mark; times with 9 decimal digits; marks CB/CS/RB/RS
void write_events_csv(const hawkes::EventStream& stream, const std::string& path);
hawkes::EventStream read_events_csv(const std::string& path, double horizon = -1.0);

// series CSV: header t,<names...>, one row per grid node
void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<const PathGrid*>& series);
// single-column read: returns values of the second column
Eigen::ArrayXd read_series_csv(const std::string& path);

// versioned JSON estimate report
std::string report_json(const estimators::EstimateReport& rep);
void write_report_json(const estimators::EstimateReport& rep, const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace orderflow::io
