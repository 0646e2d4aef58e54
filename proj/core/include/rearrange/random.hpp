#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace rearrange {

/// Mixes a 64-bit value with the splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a child seed from a parent seed and a stream id. Counter-based:
/// the result depends only on (seed, stream), never on call order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Explicitly seeded random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard.
/// The distributions are implemented here rather than with <random>'s
/// distribution templates, which are implementation-defined, so golden values
/// hold across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);

  /// Independent stream derived from this stream's seed; does not advance this stream.
  Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  std::vector<std::size_t> permutation(std::size_t n);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rearrange
