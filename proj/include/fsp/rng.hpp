#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fsp {

/// 64-bit finalizer mix (splitmix64). Statistically strong enough that
/// mix64(key + i * odd_gamma) gives an independent-looking stream indexed by
/// the counter i, which is what makes the draws reproducible per replication
/// regardless of evaluation order.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hierarchical stream coordinates: one stream per (master seed, condition,
/// replication) triple. Conditions and replications are ordinals in the fixed
/// enumeration order of the sweep, so the stream does not depend on how work
/// is scheduled across threads.
struct SeedTrace {
  std::uint64_t master = 0;
  std::uint64_t condition = 0;
  std::uint64_t replication = 0;
};

/// Chain the coordinates through the mixer; each level permutes the previous
/// key so distinct traces get unrelated streams.
inline std::uint64_t derive_key(const SeedTrace& t) {
  std::uint64_t k = mix64(t.master);
  k = mix64(k ^ mix64(t.condition + 0x632be59bd9b4e019ULL));
  k = mix64(k ^ mix64(t.replication + 0x9e6c63d0876a9b4dULL));
  return k;
}

/// Counter-based generator: draw i is mix64(key + i * gamma). Stateless apart
/// from the counter, so streams never overlap and skipping ahead is trivial.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  explicit CounterRng(const SeedTrace& trace) : key_(derive_key(trace)) {}

  std::uint64_t next_u64() {
    return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform on [0,1), 53-bit resolution.
  double next_unit() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Standard normal stream via Box-Muller on the counter generator. The pair
/// is cached, so draws come in the same sequence however they are consumed.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t key) : rng_(key) {}
  explicit NormalStream(const SeedTrace& trace) : rng_(trace) {}

  double next() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    // u1 in (0,1] keeps the log finite.
    const double u1 = double((rng_.next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = rng_.next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  CounterRng rng_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace fsp
