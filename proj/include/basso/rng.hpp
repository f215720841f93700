#ifndef BASSO_RNG_HPP
#define BASSO_RNG_HPP

#include <cstdint>
#include <cstddef>

namespace basso {

/// Deterministic, splittable random stream. A given (seed, stream_id) pair
/// produces the same sequence on every platform: the generator is
/// xoshiro256** with state expanded from the pair by splitmix64, and doubles
/// are built from the top 53 bits directly, bypassing std::uniform_real_distribution
/// (whose output is implementation-defined).
///
/// Streams are cheap to construct; each logical consumer of randomness
/// (subregion selection, point generation, Monte Carlo estimation, ...) should
/// hold its own stream_id so that consumers never perturb one another.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1));
    for (auto& s : state_) s = splitmix64(x);
    // xoshiro state must not be all zero
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Uniform index in {0, ..., n-1}. n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_[4];
};

/// Stream-id layout shared by the engine and the experiment harness: each
/// replication owns a block of ids, one per consumer, so common random
/// numbers hold across solver variants run with the same (seed, replication).
enum class RngConsumer : std::uint64_t {
  subregion_selection = 0,
  point_generation = 1,
  mc_estimation = 2,
  auxiliary = 3,
};

inline RngStream make_stream(std::uint64_t seed, std::uint64_t replication,
                             RngConsumer consumer) {
  return RngStream(seed, replication * 8 + static_cast<std::uint64_t>(consumer));
}

}  // namespace basso

#endif  // BASSO_RNG_HPP
