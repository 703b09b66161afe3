#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace orderflow {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ seeded through splitmix64.  One instance per logical stream
// (path, cluster root, ...), so output never depends on thread scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) { seed_from(seed, 0, 0); }
  Rng(std::uint64_t seed, std::uint64_t stream) { seed_from(seed, stream, 0); }
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    seed_from(seed, stream, substream);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on [0,1)
  double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

  // uniform on (0,1)
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * m;
    have_cached_ = true;
    return u * m;
  }

  // Exact Poisson sampling.  Knuth's product method; large means are split
  // by infinite divisibility to keep the product numerically safe.
  std::int64_t poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) throw std::invalid_argument("poisson: bad mean");
    if (mean == 0.0) return 0;
    std::int64_t total = 0;
    while (mean > 32.0) {
      total += poisson_knuth(16.0);
      mean -= 16.0;
    }
    return total + poisson_knuth(mean);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  void seed_from(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    std::uint64_t st = seed;
    st ^= 0x6a09e667f3bcc909ULL + splitmix64(st) + (stream * 0x9e3779b97f4a7c15ULL);
    st ^= substream * 0xd1b54a32d192ed03ULL + 0x2545f4914f6cdd1dULL;
    for (auto& w : s_) w = splitmix64(st);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::int64_t poisson_knuth(double mean) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform_open();
    } while (p > limit);
    return k - 1;
  }

  std::uint64_t s_[4];
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace orderflow
