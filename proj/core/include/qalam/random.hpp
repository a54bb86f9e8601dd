#pragma once

#include <cstdint>
#include <random>

namespace qalam {

/// Portable seeded randomness. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; the distributions below are
/// spelled out here instead of using <random>'s, whose algorithms vary
/// between standard libraries. Corpora are therefore reproducible across
/// platforms and can be regenerated in any language that has MT19937-64.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Raw 64-bit draw.
  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n) by rejection: draws x until
  /// x < floor(2^64 / n) * n, returns x mod n. Requires n >= 1.
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// (next() >> 11) * 2^-53, uniform in [0, 1).
  double unit();

  /// unit() < p.
  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qalam
