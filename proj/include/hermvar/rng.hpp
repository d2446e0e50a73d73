#ifndef HERMVAR_RNG_HPP
#define HERMVAR_RNG_HPP

#include <cstdint>
#include <random>

namespace hermvar {

// Stream tags partition the seed space so that streams drawn for different
// purposes can never collide. Tags occupy the top byte of the derivation input.
inline constexpr std::uint64_t kPathStreamTag = 0x50;
inline constexpr std::uint64_t kEtaStreamTag = 0xE7;

// Collision-free seed derivation: (master, tag, replicate) -> 64-bit seed.
// For a fixed master the map (tag, replicate) -> seed is injective as long as
// replicate < 2^56 and tag < 2^8, because the mixing step is a bijection.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_tag,
                          std::uint64_t replicate);

// Bijective 64-bit finalizer used by derive_seed (exposed for tests).
std::uint64_t mix64(std::uint64_t x);

// Inverse of the standard normal CDF, accurate to about 1e-15 relative error
// over (0,1). Input must lie strictly inside (0,1).
double inverse_normal_cdf(double p);

// Deterministic Gaussian stream: a seeded 64-bit Mersenne engine mapped through
// the inverse CDF. All samplers draw normals exclusively through this class so
// results are reproducible across platforms that share IEEE doubles.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0,1).
  double next_uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  double next_normal() { return inverse_normal_cdf(next_uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hermvar

#endif
