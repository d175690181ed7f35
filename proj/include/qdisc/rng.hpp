#pragma once

#include <cstdint>
#include <random>

namespace qdisc {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable, splittable pseudorandom stream.
///
/// A stream is identified by a 64-bit key. The root stream of seed s has key
/// splitmix64(s); substream i of a stream with key k has key
/// splitmix64(k ^ splitmix64(i + 1)). Substreams are what parallel workers
/// draw from, so results depend only on (seed, substream index), never on
/// which thread ran the work.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : RngStream(Key{splitmix64(seed)}) {}

  RngStream derive(std::uint64_t index) const { return RngStream(Key{splitmix64(key_ ^ splitmix64(index + 1))}); }

  std::uint64_t key() const { return key_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  struct Key {
    std::uint64_t value;
  };
  explicit RngStream(Key k) : key_(k.value), engine_(k.value) {}

  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qdisc
