#include "orderflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace orderflow::io {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

void write_events_csv(const hawkes::EventStream& stream, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "time,mark\n";
  for (std::size_t i = 0; i < stream.size(); ++i)
    out << fmt("%.9f", stream.times[i]) << ',' << hawkes::mark_label(stream.marks[i]) << '\n';
}

hawkes::EventStream read_events_csv(const std::string& path, double horizon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("time,mark", 0) != 0)
    throw std::runtime_error("events csv: expected header time,mark in " + path);
  hawkes::EventStream s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("events csv: bad row: " + line);
    std::string mark = line.substr(comma + 1);
    if (!mark.empty() && mark.back() == '\r') mark.pop_back();
    s.times.push_back(std::stod(line.substr(0, comma)));
    s.marks.push_back(hawkes::mark_from_label(mark));
  }
  s.horizon = horizon > 0.0 ? horizon : (s.times.empty() ? 0.0 : s.times.back());
  return s;
}

void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<const PathGrid*>& series) {
  if (names.size() != series.size() || series.empty())
    throw std::invalid_argument("write_series_csv: names/series mismatch");
  for (const auto* s : series)
    if (s->size() != series[0]->size())
      throw std::invalid_argument("write_series_csv: unequal series lengths");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (Eigen::Index i = 0; i < series[0]->size(); ++i) {
    out << fmt("%.9f", series[0]->time(i));
    for (const auto* s : series) out << ',' << fmt("%.12g", s->v[i]);
    out << '\n';
  }
}

Eigen::ArrayXd read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("series csv: empty file " + path);
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("series csv: bad row: " + line);
    auto rest = line.substr(comma + 1);
    const auto comma2 = rest.find(',');
    if (comma2 != std::string::npos) rest = rest.substr(0, comma2);
    vals.push_back(std::stod(rest));
  }
  return Eigen::Map<Eigen::ArrayXd>(vals.data(), Eigen::Index(vals.size()));
}

std::string report_json(const estimators::EstimateReport& rep) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["method"] = estimators::method_name(rep.method);
  if (rep.degenerate)
    j["H_hat"] = nullptr;
  else
    j["H_hat"] = rep.h_hat;
  j["degenerate"] = rep.degenerate;
  j["boundary"] = rep.boundary;
  if (!rep.reason.empty()) j["reason"] = rep.reason;
  nlohmann::ordered_json aux;
  aux["lags"] = rep.lags;
  aux["qvs"] = rep.qvs;
  if (std::isfinite(rep.sigma_w2)) aux["sigma_w2"] = rep.sigma_w2;
  if (std::isfinite(rep.sigma_h2)) aux["sigma_h2"] = rep.sigma_h2;
  j["auxiliary"] = aux;
  return j.dump(2) + "\n";
}

void write_report_json(const estimators::EstimateReport& rep, const std::string& path) {
  write_text(path, report_json(rep));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace orderflow::io
