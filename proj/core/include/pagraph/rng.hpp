#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace pagraph {

/// Reproducible random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so every
/// conversion to reals or bounded integers is done here instead:
///   - uniform01(): top 53 bits of one draw, scaled by 2^-53, in [0, 1);
///   - below(k):    Lemire's multiply-shift with rejection, exact in [0, k).
/// Together these give bit-identical streams on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Seed for stream `stream` of a batch keyed by `master`: two rounds of the
/// SplitMix64 finalizer over (master, stream). Sample k of a batch, bootstrap
/// iteration k, etc. all use derive_seed(master, k).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

/// Fisher-Yates shuffle driven by Rng::below (portable, unlike std::shuffle).
template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

}  // namespace pagraph
