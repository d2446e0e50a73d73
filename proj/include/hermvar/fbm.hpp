#ifndef HERMVAR_FBM_HPP
#define HERMVAR_FBM_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "hermvar/covariance.hpp"

namespace hermvar {

enum class GeneratorMethod { cholesky, circulant };

const char* method_name(GeneratorMethod m);

// A sampled path on the uniform grid {0, 1/n, ..., 1}. values holds the n+1
// path points with values[0] = 0; deltas holds the n increments the generator
// actually produced, so increment/cumulative-sum round trips are exact.
struct FbmPath {
  HurstParam H;
  std::int64_t n;
  std::vector<double> values;
  std::vector<double> deltas;
  std::uint64_t seed;
  GeneratorMethod method;
};

struct IncrementVector {
  HurstParam H;
  std::int64_t n;
  std::vector<double> deltas;
};

IncrementVector increments(const FbmPath& path);

// Restriction of a path to the coarser grid with n/stride points; stride must
// divide n. The restriction of the motion to a subgrid has the law of the
// coarser-grid motion, which makes dyadic-grid experiments shareable across n.
FbmPath subsample(const FbmPath& path, std::int64_t stride);

// Exact sampler from the dense increment covariance. Factorization costs
// O(n^3), so construction is capped (default 4096) and the factor is reused
// across samples. Not safe to share one instance between threads.
class CholeskySampler {
 public:
  CholeskySampler(const HurstParam& H, std::int64_t n, std::int64_t cap = 4096);
  ~CholeskySampler();
  CholeskySampler(const CholeskySampler&) = delete;
  CholeskySampler& operator=(const CholeskySampler&) = delete;

  FbmPath sample(std::uint64_t seed) const;
  std::int64_t n() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Exact sampler by circulant embedding of the increment covariance in a
// size-2n circulant, synthesized with an FFT in O(n log n) per path.
// Embeddings whose spectrum dips below -1e-10 * (max eigenvalue) are rejected;
// tiny negatives inside that tolerance are clipped to zero.
// Not safe to share one instance between threads.
class CirculantSampler {
 public:
  CirculantSampler(const HurstParam& H, std::int64_t n);
  ~CirculantSampler();
  CirculantSampler(const CirculantSampler&) = delete;
  CirculantSampler& operator=(const CirculantSampler&) = delete;

  FbmPath sample(std::uint64_t seed) const;
  std::int64_t n() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Eigenvalues of the size-2n circulant embedding (n+1 distinct entries),
// exposed for spectrum diagnostics.
std::vector<double> circulant_spectrum(const HurstParam& H, std::int64_t n);

// One-shot helpers wrapping sampler construction plus a single draw.
FbmPath generate_cholesky(const HurstParam& H, std::int64_t n, std::uint64_t seed,
                          std::int64_t cap = 4096);
FbmPath generate_circulant(const HurstParam& H, std::int64_t n, std::uint64_t seed);

// CSV export (k, t, B_t) with a versioned header comment; byte-stable for a
// given (H, n, seed, method).
void write_path_csv(const FbmPath& path, std::ostream& out);

}  // namespace hermvar

#endif
