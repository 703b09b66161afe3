#include "orderflow/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "orderflow/rng.hpp"

namespace orderflow::hawkes {

namespace {

constexpr std::size_t kEventCap = 100'000'000;  // per stream
constexpr std::uint64_t kBuyTag = 0x42;
constexpr std::uint64_t kSellTag = 0x53;

}  // namespace

const char* mark_label(Mark m) {
  switch (m) {
    case Mark::core_buy: return "CB";
    case Mark::core_sell: return "CS";
    case Mark::react_buy: return "RB";
    case Mark::react_sell: return "RS";
  }
  return "??";
}

Mark mark_from_label(const std::string& s) {
  if (s == "CB") return Mark::core_buy;
  if (s == "CS") return Mark::core_sell;
  if (s == "RB") return Mark::react_buy;
  if (s == "RS") return Mark::react_sell;
  throw std::invalid_argument("unknown mark label: " + s);
}

std::size_t EventStream::count(Mark m) const {
  return std::count(marks.begin(), marks.end(), m);
}

TwoLayerParams::TwoLayerParams(double nu_, double a0_, kernels::KernelSpec core, double a1_,
                               kernels::KernelMatrixSpec matrix)
    : nu(nu_), a0(a0_), core_kernel(std::move(core)), a1(a1_), reaction(std::move(matrix)) {
  if (!(nu > 0.0)) throw std::invalid_argument("TwoLayerParams: nu must be positive");
  if (a0 < 0.0 || a0 >= 1.0) throw std::invalid_argument("TwoLayerParams: need a0 in [0,1)");
  // reaction spectral radius is a1 * (m1 + m2) = a1
  if (a1 < 0.0 || a1 >= 1.0) throw std::invalid_argument("TwoLayerParams: need a1 in [0,1)");
}

namespace {

struct RawEvent {
  double t;
  Mark mark;
};

void check_expected_load(double nu, double a0, double a1, double T) {
  const double core = 2.0 * nu * T / (1.0 - a0);
  const double total = a1 < 1.0 ? core / (1.0 - a1) : core;
  if (total > double(kEventCap))
    throw std::runtime_error("simulate: expected event count exceeds the memory cap");
}

// Core cluster of one immigrant plus, optionally, the reaction cascade seeded
// by every event of the cluster.  DFS order is fixed, so one Rng stream per
// root gives scheduling-independent output.
void grow_cluster(double root_time, int sign, double T, double a0,
                  const kernels::KernelSpec& core_kernel, const TwoLayerParams* reaction,
                  Rng& rng, std::vector<RawEvent>& out) {
  std::vector<RawEvent> stack;
  stack.push_back({root_time, sign > 0 ? Mark::core_buy : Mark::core_sell});
  while (!stack.empty()) {
    const RawEvent ev = stack.back();
    stack.pop_back();
    out.push_back(ev);
    if (out.size() > kEventCap) throw std::runtime_error("simulate: memory cap exceeded");
    if (is_core(ev.mark) && a0 > 0.0) {
      const std::int64_t kids = rng.poisson(a0);
      for (std::int64_t c = 0; c < kids; ++c) {
        const double t = ev.t + core_kernel.inverse_cdf(rng.uniform_open());
        if (t <= T) stack.push_back({t, ev.mark});
      }
    }
    if (reaction != nullptr && reaction->a1 > 0.0) {
      const auto& mx = reaction->reaction;
      const int s = sign_of(ev.mark);
      const std::int64_t same = rng.poisson(reaction->a1 * mx.m1);
      for (std::int64_t c = 0; c < same; ++c) {
        const double t = ev.t + mx.phi1.inverse_cdf(rng.uniform_open());
        if (t <= T) stack.push_back({t, s > 0 ? Mark::react_buy : Mark::react_sell});
      }
      const std::int64_t cross = mx.m2 > 0.0 ? rng.poisson(reaction->a1 * mx.m2) : 0;
      for (std::int64_t c = 0; c < cross; ++c) {
        const double t = ev.t + mx.phi2.inverse_cdf(rng.uniform_open());
        if (t <= T) stack.push_back({t, s > 0 ? Mark::react_sell : Mark::react_buy});
      }
    }
  }
}

EventStream simulate_branching(double nu, double a0, const kernels::KernelSpec& core_kernel,
                               const TwoLayerParams* reaction, double T, std::uint64_t seed) {
  if (!(T > 0.0)) throw std::invalid_argument("simulate: T must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("simulate: nu must be positive");
  if (a0 < 0.0 || a0 >= 1.0) throw std::invalid_argument("simulate: need a0 in [0,1)");
  check_expected_load(nu, a0, reaction ? reaction->a1 : 0.0, T);

  std::vector<RawEvent> events;
  for (const int sign : {+1, -1}) {
    const std::uint64_t tag = sign > 0 ? kBuyTag : kSellTag;
    Rng imm_rng(seed, tag, 0);
    const std::int64_t n_imm = imm_rng.poisson(nu * T);
    std::vector<double> roots(n_imm);
    for (auto& r : roots) r = T * imm_rng.uniform();
    std::sort(roots.begin(), roots.end());
    for (std::int64_t k = 0; k < n_imm; ++k) {
      Rng cluster_rng(seed, tag, std::uint64_t(k) + 1);
      grow_cluster(roots[k], sign, T, a0, core_kernel, reaction, cluster_rng, events);
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const RawEvent& a, const RawEvent& b) { return a.t < b.t; });
  EventStream out;
  out.horizon = T;
  out.times.reserve(events.size());
  out.marks.reserve(events.size());
  for (const auto& e : events) {
    out.times.push_back(e.t);
    out.marks.push_back(e.mark);
  }
  return out;
}

}  // namespace

EventStream simulate_core(double nu, double a0, const kernels::KernelSpec& kernel, double T,
                          std::uint64_t seed) {
  return simulate_branching(nu, a0, kernel, nullptr, T, seed);
}

EventStream simulate_two_layer(const TwoLayerParams& params, double T, std::uint64_t seed) {
  return simulate_branching(params.nu, params.a0, params.core_kernel, &params, T, seed);
}

EventStream simulate_thinning(const TwoLayerParams& params, double T, std::uint64_t seed) {
  using kernels::KernelSpec;
  if (params.core_kernel.family() != KernelSpec::Family::exp_mixture ||
      params.reaction.phi1.family() != KernelSpec::Family::exp_mixture ||
      (params.reaction.m2 > 0.0 &&
       params.reaction.phi2.family() != KernelSpec::Family::exp_mixture))
    throw std::invalid_argument("simulate_thinning: exp_mixture kernels required");
  check_expected_load(params.nu, params.a0, params.a1, T);

  // Markovian excitation state: one component per (channel, mixture term).
  // Channels: 0 core-buy, 1 core-sell, 2 react-buy, 3 react-sell.  Each
  // component decays exponentially, so the aggregate intensity right after a
  // decay step dominates the intensity until the next event.
  struct Component {
    int channel;
    double rate;
    double level = 0.0;
  };
  std::vector<Component> comps;
  const auto& ck = params.core_kernel;
  const auto& p1 = params.reaction.phi1;
  const auto& p2 = params.reaction.phi2;
  const size_t nc = ck.rates().size();
  const size_t nr1 = p1.rates().size();
  const size_t nr2 = params.reaction.m2 > 0.0 ? p2.rates().size() : 0;
  for (int side = 0; side < 2; ++side)
    for (size_t i = 0; i < nc; ++i) comps.push_back({side, ck.rates()[i], 0.0});
  for (int side = 0; side < 2; ++side)
    for (size_t i = 0; i < nr1; ++i) comps.push_back({2 + side, p1.rates()[i], 0.0});
  for (int side = 0; side < 2 && nr2 > 0; ++side)
    for (size_t i = 0; i < nr2; ++i) comps.push_back({2 + side, p2.rates()[i], 0.0});
  const size_t core_base = 0;           // [core_base + side*nc, ...)
  const size_t r1_base = 2 * nc;        // [r1_base + side*nr1, ...)
  const size_t r2_base = 2 * nc + 2 * nr1;

  auto excite = [&](Mark m) {
    const int side = sign_of(m) > 0 ? 0 : 1;  // 0 = buy, 1 = sell
    if (is_core(m) && params.a0 > 0.0)
      for (size_t i = 0; i < nc; ++i)
        comps[core_base + side * nc + i].level += params.a0 * ck.weights()[i] * ck.rates()[i];
    // every event excites the reaction layer: same side through phi1,
    // opposite side through phi2
    for (size_t i = 0; i < nr1; ++i)
      comps[r1_base + side * nr1 + i].level +=
          params.a1 * params.reaction.m1 * p1.weights()[i] * p1.rates()[i];
    for (size_t i = 0; i < nr2; ++i)
      comps[r2_base + (1 - side) * nr2 + i].level +=
          params.a1 * params.reaction.m2 * p2.weights()[i] * p2.rates()[i];
  };

  auto intensities = [&](double lam[4]) {
    lam[0] = lam[1] = params.nu;
    lam[2] = lam[3] = 0.0;
    for (const auto& c : comps) lam[c.channel] += c.level;
    return lam[0] + lam[1] + lam[2] + lam[3];
  };

  Rng rng(seed, 0x54u, 0);
  EventStream out;
  out.horizon = T;
  double t = 0.0;
  double lam[4];
  while (true) {
    const double bound = intensities(lam);
    if (!(bound > 0.0)) break;
    const double w = rng.exponential(bound);
    if (t + w > T) break;
    t += w;
    for (auto& c : comps) c.level *= std::exp(-c.rate * w);
    const double total = intensities(lam);
    if (rng.uniform() * bound <= total) {
      double u = rng.uniform() * total;
      int ch = 0;
      while (ch < 3 && u > lam[ch]) {
        u -= lam[ch];
        ++ch;
      }
      const Mark m = static_cast<Mark>(ch);
      out.times.push_back(t);
      out.marks.push_back(m);
      if (out.size() > kEventCap) throw std::runtime_error("simulate: memory cap exceeded");
      excite(m);
    }
  }
  return out;
}

namespace {

double reaction_intensity_at(const EventStream& stream, const TwoLayerParams& p, double t,
                             int sign) {
  double s = 0.0;
  for (std::size_t i = 0; i < stream.size() && stream.times[i] < t; ++i) {
    const double lag = t - stream.times[i];
    const int es = sign_of(stream.marks[i]);
    if (es == sign)
      s += p.a1 * p.reaction.m1 * p.reaction.phi1.density(lag);
    else
      s += p.a1 * p.reaction.m2 * p.reaction.phi2.density(lag);
  }
  return s;
}

double core_intensity_at(const EventStream& stream, const TwoLayerParams& p, double t, int sign) {
  double s = p.nu;
  const Mark want = sign > 0 ? Mark::core_buy : Mark::core_sell;
  for (std::size_t i = 0; i < stream.size() && stream.times[i] < t; ++i)
    if (stream.marks[i] == want) s += p.a0 * p.core_kernel.density(t - stream.times[i]);
  return s;
}

}  // namespace

IntensityPath intensity_path(const EventStream& stream, const TwoLayerParams& params, double dt,
                             Eigen::Index n) {
  if (!(dt > 0.0) || n < 1) throw std::invalid_argument("intensity_path: bad grid");
  if (dt * double(n) > stream.horizon * (1.0 + 1e-9))
    throw std::invalid_argument("intensity_path: grid exceeds the stream horizon");
  IntensityPath out;
  for (PathGrid* g : {&out.core_buy, &out.core_sell, &out.react_buy, &out.react_sell}) {
    g->t0 = 0.0;
    g->dt = dt;
    g->v = Eigen::ArrayXd::Zero(n + 1);
  }
  for (Eigen::Index i = 0; i <= n; ++i) {
    const double t = dt * double(i);
    out.core_buy.v[i] = core_intensity_at(stream, params, t, +1);
    out.core_sell.v[i] = core_intensity_at(stream, params, t, -1);
    out.react_buy.v[i] = reaction_intensity_at(stream, params, t, +1);
    out.react_sell.v[i] = reaction_intensity_at(stream, params, t, -1);
  }
  return out;
}

IntensityPath martingale_residual(const EventStream& stream, const TwoLayerParams& params,
                                  double dt, Eigen::Index n) {
  if (!(dt > 0.0) || n < 1) throw std::invalid_argument("martingale_residual: bad grid");
  IntensityPath out;
  for (PathGrid* g : {&out.core_buy, &out.core_sell, &out.react_buy, &out.react_sell}) {
    g->t0 = 0.0;
    g->dt = dt;
    g->v = Eigen::ArrayXd::Zero(n + 1);
  }
  // exact compensators via kernel integrals; O(events * grid)
  for (Eigen::Index i = 1; i <= n; ++i) {
    const double t = dt * double(i);
    double comp[4] = {params.nu * t, params.nu * t, 0.0, 0.0};
    double count[4] = {0, 0, 0, 0};
    for (std::size_t e = 0; e < stream.size(); ++e) {
      if (stream.times[e] >= t) break;
      const double lag = t - stream.times[e];
      const Mark m = stream.marks[e];
      const int s = sign_of(m);
      count[int(m)] += 1.0;
      if (is_core(m)) comp[s > 0 ? 0 : 1] += params.a0 * params.core_kernel.cdf(lag);
      comp[s > 0 ? 2 : 3] += params.a1 * params.reaction.m1 * params.reaction.phi1.cdf(lag);
      comp[s > 0 ? 3 : 2] += params.a1 * params.reaction.m2 * params.reaction.phi2.cdf(lag);
    }
    out.core_buy.v[i] = count[0] - comp[0];
    out.core_sell.v[i] = count[1] - comp[1];
    out.react_buy.v[i] = count[2] - comp[2];
    out.react_sell.v[i] = count[3] - comp[3];
  }
  return out;
}

PathGrid counting_path(const EventStream& stream, double dt, Eigen::Index n,
                       const std::vector<int>& weight_per_mark) {
  if (weight_per_mark.size() != 4) throw std::invalid_argument("counting_path: need 4 weights");
  PathGrid g;
  g.t0 = 0.0;
  g.dt = dt;
  g.v = Eigen::ArrayXd::Zero(n + 1);
  std::size_t e = 0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i <= n; ++i) {
    const double t = dt * double(i);
    while (e < stream.size() && stream.times[e] <= t) {
      acc += weight_per_mark[int(stream.marks[e])];
      ++e;
    }
    g.v[i] = acc;
  }
  return g;
}

AggregateFlows aggregate_flows(const EventStream& stream, double dt, Eigen::Index n) {
  AggregateFlows f;
  f.U = counting_path(stream, dt, n, {1, 1, 1, 1});
  f.S = counting_path(stream, dt, n, {1, -1, 1, -1});
  f.F = counting_path(stream, dt, n, {1, 1, 0, 0});
  f.V = counting_path(stream, dt, n, {1, -1, 0, 0});
  return f;
}

}  // namespace orderflow::hawkes
