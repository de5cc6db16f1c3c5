#pragma once

#include "tiltlab/complex.hpp"
#include "tiltlab/fp_module.hpp"

#include <cstdint>
#include <random>

namespace tiltlab {

/// splitmix64 step; used to derive independent per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);
/// Seed of sample `index` in a suite run with `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Bounds of the sampling distributions. Defaults: complex width <= 4,
/// ranks <= 3, entries |a| <= 10.
struct SamplingBounds {
  int max_width = 4;
  std::size_t max_rank = 3;
  long max_entry = 10;
};

/// Seeded generator of integer matrices, fp-Z modules, morphisms and bounded
/// complexes. All draws are uniform over the documented ranges.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, SamplingBounds bounds = {});

  [[nodiscard]] const SamplingBounds& bounds() const { return bounds_; }
  long integer(long lo, long hi);
  std::size_t count(std::size_t lo, std::size_t hi);
  bool coin(double p = 0.5);

  Matrix matrix(std::size_t rows, std::size_t cols, long bound);
  Matrix matrix(std::size_t rows, std::size_t cols) { return matrix(rows, cols, bounds_.max_entry); }
  /// A unimodular matrix (product of random elementary operations).
  Matrix unimodular(std::size_t n);

  /// Presentation with up to max_rank generators and relations.
  FpModule module();
  FpModule free_module();
  /// Finite module: nonzero diagonal presentation scrambled by unimodulars.
  FpModule torsion_module();
  /// Uniform-ish element of Hom(source, target) over the integers.
  FpMorphism morphism(const FpModule& source, const FpModule& target);

  /// Complex of fp modules in degrees [lo, lo + width - 1].
  Complex fp_complex(int lo, int width);
  /// Complex of free modules in degrees [lo, lo + width - 1]; d^{k+1} is a
  /// random combination of the left kernel of d^k.
  Complex free_complex(int lo, int width);
  /// An exact (split) free complex disguised by random changes of basis.
  Complex exact_free_complex(int lo, int width);

 private:
  std::mt19937_64 rng_;
  SamplingBounds bounds_;
};

}  // namespace tiltlab
