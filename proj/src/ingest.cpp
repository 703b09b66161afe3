#include "orderflow/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orderflow::ingest {

double parse_time_of_day(const std::string& s) {
  int h = 0, m = 0;
  double sec = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  is >> h >> c1 >> m;
  if (!is || c1 != ':') throw std::invalid_argument("bad time of day: " + s);
  if (is.peek() == ':') {
    is >> c2 >> sec;
    if (!is) throw std::invalid_argument("bad time of day: " + s);
  }
  if (h < 0 || h > 24 || m < 0 || m > 59 || sec < 0.0 || sec >= 60.0)
    throw std::invalid_argument("bad time of day: " + s);
  return h * 3600.0 + m * 60.0 + sec;
}

Session parse_session(const std::string& s) {
  const auto dash = s.find('-');
  if (dash == std::string::npos) throw std::invalid_argument("bad session: " + s);
  return Session(parse_time_of_day(s.substr(0, dash)), parse_time_of_day(s.substr(dash + 1)));
}

namespace {

bool parse_timestamp(const std::string& field, double& out) {
  if (field.empty()) return false;
  // ISO-8601: keep the time-of-day part
  const auto t_pos = field.find('T');
  if (t_pos != std::string::npos || field.find(':') != std::string::npos) {
    std::string tod = t_pos != std::string::npos ? field.substr(t_pos + 1) : field;
    // strip a timezone suffix if present
    for (const char z : {'Z', '+', 'z'}) {
      const auto p = tod.find(z);
      if (p != std::string::npos) tod = tod.substr(0, p);
    }
    try {
      out = parse_time_of_day(tod);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0' || !std::isfinite(v)) return false;
  if (v >= 1e14) {  // epoch nanoseconds
    out = std::fmod(v / 1e9, 86400.0);
    return true;
  }
  if (v < 0.0 || v > 86400.0) return false;
  out = v;  // seconds since midnight
  return true;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

LoadResult load_trades(const std::string& path, const Session& session) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_trades: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_trades: empty file " + path);
  {
    auto hdr = split_csv(line);
    if (hdr.size() < 4 || hdr[0] != "timestamp" || hdr[1] != "side" || hdr[2] != "volume" ||
        hdr[3] != "price")
      throw std::runtime_error("load_trades: expected header timestamp,side,volume,price");
  }
  LoadResult res;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto f = split_csv(line);
    double ts = 0.0;
    if (f.size() < 4 || !parse_timestamp(f[0], ts)) {
      ++res.malformed;
      continue;
    }
    char* end = nullptr;
    const long side = std::strtol(f[1].c_str(), &end, 10);
    const bool side_ok = end != f[1].c_str() && *end == '\0' && (side == 1 || side == -1);
    const double vol = std::strtod(f[2].c_str(), &end);
    const bool vol_ok = end != f[2].c_str() && *end == '\0' && vol > 0.0;
    const double price = std::strtod(f[3].c_str(), &end);
    const bool price_ok = end != f[3].c_str() && *end == '\0' && price > 0.0;
    if (!side_ok || !vol_ok || !price_ok) {
      ++res.malformed;
      continue;
    }
    if (ts < session.open || ts > session.close) {
      ++res.filtered;
      continue;
    }
    res.records.push_back({ts, int(side), vol, price});
  }
  if (rows == 0) throw std::runtime_error("load_trades: no data rows in " + path);
  if (res.malformed > 0 && double(res.malformed) > 0.001 * double(rows))
    throw std::runtime_error("load_trades: malformed rows above the 0.1% threshold in " + path);
  std::stable_sort(res.records.begin(), res.records.end(),
                   [](const TradeRecord& a, const TradeRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  return res;
}

BinnedFlows bin_flows(const std::vector<TradeRecord>& records, double delta,
                      const Session& session) {
  if (!(delta > 0.0)) throw std::invalid_argument("bin_flows: delta must be positive");
  const double ratio = session.length() / delta;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 || rounded < 1.0)
    throw std::invalid_argument("bin_flows: delta must divide the session length");
  const Eigen::Index nbins = Eigen::Index(rounded);
  BinnedFlows out;
  out.signed_flow = Eigen::ArrayXd::Zero(nbins);
  out.unsigned_flow = Eigen::ArrayXd::Zero(nbins);
  for (const auto& r : records) {
    Eigen::Index b = Eigen::Index((r.timestamp - session.open) / delta);
    if (b == nbins) b = nbins - 1;  // records exactly at the close
    if (b < 0 || b >= nbins) throw std::invalid_argument("bin_flows: record outside the session");
    out.signed_flow[b] += r.side * r.volume;
    out.unsigned_flow[b] += r.volume;
  }
  out.cum_signed.resize(nbins);
  out.cum_unsigned.resize(nbins);
  double cs = 0.0, cu = 0.0;
  for (Eigen::Index b = 0; b < nbins; ++b) {
    cs += out.signed_flow[b];
    cu += out.unsigned_flow[b];
    out.cum_signed[b] = cs;
    out.cum_unsigned[b] = cu;
  }
  return out;
}

std::vector<TradeRecord> to_trades(const hawkes::EventStream& stream, double session_open) {
  std::vector<TradeRecord> out;
  out.reserve(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i)
    out.push_back({session_open + stream.times[i], hawkes::sign_of(stream.marks[i]), 1.0, 1.0});
  return out;
}

}  // namespace orderflow::ingest
