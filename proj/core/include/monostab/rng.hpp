#pragma once

// Counter-based random streams.
//
// A stream is identified by (master seed, purpose tag, index). Its key is a
// hash of those three values, and the n-th output is a bijective mix of
// key + n * golden-gamma (the SplitMix64 finalizer). Streams are therefore
// independent of how many other streams exist or the order they are drawn in,
// which is what makes replication results invariant to worker count.

#include <cstdint>
#include <limits>
#include <string_view>

namespace monostab {

/// 64-bit finalizer from SplitMix64 (Steele, Lea, Flood).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a over the bytes of `s`.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Key of stream `index` for `purpose` under `master_seed`.
constexpr std::uint64_t stream_key(std::uint64_t master_seed, std::string_view purpose,
                                   std::uint64_t index) noexcept {
  std::uint64_t k = mix64(master_seed ^ 0x6a09e667f3bcc909ULL);
  k = mix64(k ^ fnv1a64(purpose));
  return mix64(k ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

/// UniformRandomBitGenerator whose n-th output depends only on (key, n).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}
  constexpr CounterRng(std::uint64_t master_seed, std::string_view purpose,
                       std::uint64_t index) noexcept
      : key_(stream_key(master_seed, purpose, index)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform draw on the open interval (0, 1) with 53 random bits.
inline double uniform_open01(CounterRng& rng) noexcept {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Uniform draw on [lo, hi].
inline double uniform_between(CounterRng& rng, double lo, double hi) noexcept {
  const double u = uniform_open01(rng);
  const double x = lo + u * (hi - lo);
  return x > hi ? hi : x;
}

}  // namespace monostab
