#pragma once

#include <cstdint>
#include <random>

namespace fpprace {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for a child stream identified by `tag` under `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept
{
  return mix64(mix64(seed) ^ mix64(tag + 0x632be59bd9b4e019ULL));
}

/// Random stream with platform-independent conversions.
///
/// The engine is std::mt19937_64 (fully specified by the standard); the
/// conversions to doubles and bounded integers are done here rather than via
/// <random> distributions, whose output is implementation-defined.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0,1), 53-bit resolution.
  double uniform01()
  {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound)
  {
    // rejection on the largest multiple of bound
    std::uint64_t const limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
    for (;;) {
      std::uint64_t const x = engine_();
      if (x <= limit) return x % bound;
    }
  }

private:
  std::mt19937_64 engine_;
};

} // namespace fpprace
