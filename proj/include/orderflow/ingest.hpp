#pragma once

#include <string>
#include <vector>

#include "orderflow/grid.hpp"
#include "orderflow/hawkes.hpp"

namespace orderflow::ingest {

struct TradeRecord {
  double timestamp;  // seconds since midnight, local exchange time
  int side;          // +1 buy, -1 sell
  double volume;
  double price;
};

struct Session {
  double open;   // seconds since midnight
  double close;

  Session(double open_, double close_) : open(open_), close(close_) {
    if (!(close > open)) throw std::invalid_argument("Session: close must be after open");
  }
  double length() const { return close - open; }
};

// "HH:MM" or "HH:MM:SS[.fff]" to seconds since midnight
double parse_time_of_day(const std::string& s);
Session parse_session(const std::string& s);  // "09:30-16:00"

struct LoadResult {
  std::vector<TradeRecord> records;  // session-filtered, time-sorted
  std::size_t malformed = 0;         // bad rows (below the 0.1% threshold)
  std::size_t filtered = 0;          // rows outside the session
};

// CSV with header timestamp,side,volume,price.  Timestamps are ISO-8601,
// plain HH:MM:SS[.fff], epoch nanoseconds, or seconds since midnight;
// detected per row.  Throws on an empty file or when malformed rows exceed
// 0.1% of the total.
LoadResult load_trades(const std::string& path, const Session& session);

struct BinnedFlows {
  Eigen::ArrayXd signed_flow;    // per bin: sum of side * volume
  Eigen::ArrayXd unsigned_flow;  // per bin: sum of volume
  Eigen::ArrayXd cum_signed;
  Eigen::ArrayXd cum_unsigned;
};

// aggregate over fixed bins of width delta; delta must divide the session
BinnedFlows bin_flows(const std::vector<TradeRecord>& records, double delta,
                      const Session& session);

// unit-volume export of a simulated stream so the estimator pipeline can run
// identically on synthetic data; event times are offset by the session open
std::vector<TradeRecord> to_trades(const hawkes::EventStream& stream, double session_open = 0.0);

}  // namespace orderflow::ingest
