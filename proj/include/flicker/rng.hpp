// Counter-based random streams. Every stochastic draw in a clip comes from a
// stream keyed by a path (clip seed -> layer -> stripe -> field tag), so the
// values never depend on evaluation order or thread scheduling.

#pragma once

#include <cstdint>
#include <initializer_list>

namespace flicker {

std::uint64_t mix64(std::uint64_t x);

// Key of a child stream. Order of the path matters.
std::uint64_t derive_key(std::uint64_t parent, std::uint64_t child);
std::uint64_t derive_key(std::uint64_t root, std::initializer_list<std::uint64_t> path);

// Tags naming the per-stripe noise fields and draws.
enum class FieldTag : std::uint64_t {
  kCrackLayout = 1,
  kCrackWidth = 2,
  kWiggle = 3,
  kEdgeTop = 4,
  kEdgeBottom = 5,
  kStripeJitter = 6,
  kBlur = 7,
  kSampler = 8,
};

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Standard normal via Box-Muller; the sine branch of each pair is served
  // by the following call.
  double normal();
  bool coin() { return (next_u64() >> 63) != 0; }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace flicker
