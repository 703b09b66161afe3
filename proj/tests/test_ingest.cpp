#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "orderflow/ingest.hpp"
#include "orderflow/rng.hpp"
#include "test_support.hpp"

using namespace orderflow;
using ingest::Session;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("session parsing") {
  const auto s = ingest::parse_session("09:30-16:00");
  CHECK(s.open == doctest::Approx(9 * 3600 + 30 * 60));
  CHECK(s.close == doctest::Approx(16 * 3600));
  CHECK(ingest::parse_time_of_day("10:15:30.5") == doctest::Approx(36930.5));
  CHECK_THROWS(ingest::parse_session("nonsense"));
}

TEST_CASE("empty and malformed files") {
  const auto empty = write_temp("of_empty.csv", "");
  CHECK_THROWS_AS(ingest::load_trades(empty, Session(0, 86400)), std::runtime_error);
  const auto header_only = write_temp("of_header.csv", "timestamp,side,volume,price\n");
  CHECK_THROWS_AS(ingest::load_trades(header_only, Session(0, 86400)), std::runtime_error);
  const auto bad_header = write_temp("of_badhdr.csv", "a,b,c,d\n1,2,3,4\n");
  CHECK_THROWS_AS(ingest::load_trades(bad_header, Session(0, 86400)), std::runtime_error);
}

TEST_CASE("single in-session row and filtering") {
  const auto f = write_temp("of_rows.csv",
                            "timestamp,side,volume,price\n"
                            "10:00:00,1,100,50.5\n"
                            "03:00:00,-1,10,50.0\n");
  const auto r = ingest::load_trades(f, ingest::parse_session("09:30-16:00"));
  REQUIRE(r.records.size() == 1);
  CHECK(r.filtered == 1);
  CHECK(r.malformed == 0);
  CHECK(r.records[0].side == 1);
  CHECK(r.records[0].volume == doctest::Approx(100.0));
  CHECK(r.records[0].timestamp == doctest::Approx(36000.0));
}

TEST_CASE("timestamp format auto-detection") {
  const auto f = write_temp("of_ts.csv",
                            "timestamp,side,volume,price\n"
                            "2021-03-01T10:00:00.25Z,1,5,10\n"
                            "36030.5,-1,6,10\n"
                            "1614592860000000000,1,7,10\n");  // epoch ns, 10:01:00 UTC
  const auto r = ingest::load_trades(f, ingest::parse_session("09:30-16:00"));
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].timestamp == doctest::Approx(36000.25));
  CHECK(r.records[1].timestamp == doctest::Approx(36030.5));
  CHECK(r.records[2].timestamp == doctest::Approx(36060.0));
}

TEST_CASE("malformed rows counted and thresholded") {
  std::string body = "timestamp,side,volume,price\n";
  for (int i = 0; i < 2000; ++i) body += "10:00:00,1,1,1\n";
  body += "garbage,9,x,y\n";
  const auto ok = write_temp("of_thresh_ok.csv", body);
  const auto r = ingest::load_trades(ok, ingest::parse_session("09:30-16:00"));
  CHECK(r.malformed == 1);
  CHECK(r.records.size() == 2000);

  std::string bad = "timestamp,side,volume,price\n";
  for (int i = 0; i < 100; ++i) bad += "10:00:00,1,1,1\n";
  bad += "garbage,9,x,y\n";
  const auto f2 = write_temp("of_thresh_bad.csv", bad);
  CHECK_THROWS_AS(ingest::load_trades(f2, ingest::parse_session("09:30-16:00")),
                  std::runtime_error);
}

TEST_CASE("bin flows") {
  const Session session(0.0, 100.0);
  SUBCASE("single buy") {
    std::vector<ingest::TradeRecord> rec = {{10.0, 1, 100.0, 1.0}};
    const auto b = ingest::bin_flows(rec, 10.0, session);
    CHECK(b.signed_flow[1] == doctest::Approx(100.0));
    CHECK(b.unsigned_flow[1] == doctest::Approx(100.0));
    CHECK(b.signed_flow.sum() == doctest::Approx(100.0));
  }
  SUBCASE("buy and sell cancel in sign only") {
    std::vector<ingest::TradeRecord> rec = {{10.0, 1, 100.0, 1.0}, {12.0, -1, 100.0, 1.0}};
    const auto b = ingest::bin_flows(rec, 10.0, session);
    CHECK(b.signed_flow[1] == doctest::Approx(0.0));
    CHECK(b.unsigned_flow[1] == doctest::Approx(200.0));
  }
  SUBCASE("triangle inequality, conservation, refinement") {
    Rng rng(31);
    std::vector<ingest::TradeRecord> rec;
    double total = 0.0;
    for (int i = 0; i < 5000; ++i) {
      const double v = 1.0 + 10.0 * rng.uniform();
      rec.push_back({100.0 * rng.uniform(), rng.uniform() < 0.5 ? 1 : -1, v, 1.0});
      total += v;
    }
    std::sort(rec.begin(), rec.end(),
              [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    const auto fine = ingest::bin_flows(rec, 5.0, session);
    const auto coarse = ingest::bin_flows(rec, 10.0, session);
    CHECK((fine.signed_flow.abs() <= fine.unsigned_flow + 1e-12).all());
    CHECK(fine.unsigned_flow.sum() == doctest::Approx(total).epsilon(1e-12));
    for (Eigen::Index b = 0; b < coarse.signed_flow.size(); ++b) {
      CHECK(coarse.signed_flow[b] ==
            doctest::Approx(fine.signed_flow[2 * b] + fine.signed_flow[2 * b + 1]));
      CHECK(coarse.unsigned_flow[b] ==
            doctest::Approx(fine.unsigned_flow[2 * b] + fine.unsigned_flow[2 * b + 1]));
    }
    CHECK(coarse.cum_unsigned[coarse.cum_unsigned.size() - 1] ==
          doctest::Approx(total).epsilon(1e-12));
  }
  SUBCASE("misaligned delta rejected") {
    std::vector<ingest::TradeRecord> rec = {{10.0, 1, 1.0, 1.0}};
    CHECK_THROWS_AS(ingest::bin_flows(rec, 7.0, session), std::invalid_argument);
  }
}

TEST_CASE("simulated stream exports as unit-volume trades") {
  hawkes::EventStream s;
  s.horizon = 10.0;
  s.times = {1.0, 2.0, 3.0};
  s.marks = {hawkes::Mark::core_buy, hawkes::Mark::react_sell, hawkes::Mark::react_buy};
  const auto trades = ingest::to_trades(s, 34200.0);
  REQUIRE(trades.size() == 3);
  CHECK(trades[0].side == 1);
  CHECK(trades[1].side == -1);
  CHECK(trades[2].side == 1);
  CHECK(trades[0].timestamp == doctest::Approx(34201.0));
  for (const auto& t : trades) CHECK(t.volume == 1.0);
}

}  // TEST_SUITE
