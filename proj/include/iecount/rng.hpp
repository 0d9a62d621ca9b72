#pragma once

#include <cstdint>
#include <random>

namespace iecount {

// Seeded random stream used by every randomized component.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Bounded draws and reals are derived here by rejection sampling and
// bit extraction rather than through std::uniform_*_distribution, whose
// algorithms are implementation-defined; this keeps generated instances
// byte-identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool coin() { return (engine_() >> 63) != 0; }

  // Uniform in [0, 1) with 53 bits of resolution.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Independent stream derived from this stream's seed and a tag. Does not
  // advance this stream.
  Rng derive(std::uint64_t tag) const;

private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

} // namespace iecount
