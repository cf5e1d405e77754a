#ifndef CPRLAB_RNG_HPP_
#define CPRLAB_RNG_HPP_

#include <complex>
#include <cstdint>
#include <limits>

namespace cprlab {

// Counter-based splittable generator. The key is derived from (seed, stream)
// and the n-th output is a SplitMix64 finalization of key + n * golden, so
// any substream can be reconstructed without replaying its siblings.
//
// Gaussian draws use Box-Muller on our own uniforms rather than
// std::normal_distribution, whose output differs across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), key_(derive_key(seed, stream)) {}

  // Independent stream for instance `index` of a campaign seeded like this one.
  Rng substream(std::uint64_t index) const {
    return Rng(seed_, mix(stream_ + 0x632BE59BD9B4E019ULL) ^ index);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();

  // Standard complex Gaussian: E|z|^2 = 1.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * 0.70710678118654752440, im * 0.70710678118654752440};
  }

  // +1 or -1 with equal probability.
  int sign() { return ((*this)() >> 63) ? -1 : 1; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static constexpr std::uint64_t derive_key(std::uint64_t seed,
                                            std::uint64_t stream) {
    return mix(mix(seed ^ 0x5851F42D4C957F2DULL) + stream * 0xD1B54A32D192ED03ULL);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace cprlab

#endif  // CPRLAB_RNG_HPP_
