#pragma once
// Deterministic random streams with counter-based splitting. Every stochastic
// task (a shot batch, a point/centroid pair, a dataset draw) derives its own
// stream from the master seed, so results are reproducible and independent of
// execution order.

#include <cstdint>
#include <random>

namespace qnc {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t key, std::uint64_t salt) {
  std::uint64_t s = key ^ (0x9e3779b97f4a7c15ULL + salt);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

}  // namespace detail

class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {
    std::uint64_t s = key;
    engine_.seed(detail::splitmix64(s));
  }

  // Independent child stream; same (key, indices) always yields the same stream.
  RngStream child(std::uint64_t a) const { return RngStream(detail::mix(key_, a)); }
  RngStream child(std::uint64_t a, std::uint64_t b) const {
    return RngStream(detail::mix(detail::mix(key_, a), b));
  }
  RngStream child(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    return RngStream(detail::mix(detail::mix(detail::mix(key_, a), b), c));
  }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t uniform_int(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }
  std::uint64_t key() const { return key_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qnc
