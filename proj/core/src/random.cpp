#include "qalam/random.hpp"

#include <limits>

#include "qalam/error.hpp"

namespace qalam {

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("SeededRng::below: n must be >= 1");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of n not exceeding 2^64, minus one.
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x = next();
  while (x > limit) x = next();
  return x % n;
}

std::int64_t SeededRng::between(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidArgument("SeededRng::between: lo > hi");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  return lo + static_cast<std::int64_t>(below(span));
}

double SeededRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace qalam
