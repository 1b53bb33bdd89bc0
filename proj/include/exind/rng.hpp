#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace exind {

/// Identifier persisted in sample metadata. Bumped whenever the stream
/// derivation or any variate transform below changes.
inline constexpr std::string_view kRngAlgorithm = "xoshiro256ss+splitmix64-substream/v1";

/// Stream tags keep the substreams used by different consumers disjoint.
enum class Stream : std::uint64_t {
  kMaxStable = 1,
  kConditional = 2,
  kPermutation = 3,
  kGrid = 4,
  kMeasure = 5,
  kBattery = 6,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

/// Generator for item `index` of stream `stream` under `seed`. Depends only on
/// the triple, so work can be split across threads in any order.
inline Xoshiro256 substream(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t key = splitmix64(state);
  state = key ^ (static_cast<std::uint64_t>(stream) * 0xD1B54A32D192ED03ULL);
  key = splitmix64(state);
  state = key ^ index;
  return Xoshiro256(splitmix64(state));
}

/// Uniform on [0, 1) with 53 random bits.
template <class Gen>
double uniform01(Gen& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1].
template <class Gen>
double uniform_positive(Gen& gen) {
  return 1.0 - uniform01(gen);
}

/// Unit-mean exponential by inversion.
template <class Gen>
double standard_exponential(Gen& gen) {
  return -std::log(uniform_positive(gen));
}

__extension__ using uint128 = unsigned __int128;

/// Unbiased integer in [0, n) (Lemire's multiply-shift with rejection).
template <class Gen>
std::uint64_t uniform_index(Gen& gen, std::uint64_t n) {
  uint128 m = static_cast<uint128>(gen()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<uint128>(gen()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace exind
