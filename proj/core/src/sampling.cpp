#include "tiltlab/sampling.hpp"

namespace tiltlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(splitmix64(seed) ^ index); }

Sampler::Sampler(std::uint64_t seed, SamplingBounds bounds) : rng_(seed), bounds_(bounds) {}

long Sampler::integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

std::size_t Sampler::count(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

bool Sampler::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Matrix Sampler::matrix(std::size_t rows, std::size_t cols, long bound) {
  std::vector<long> entries(rows * cols);
  for (auto& e : entries) e = integer(-bound, bound);
  return Matrix::integers(rows, cols, entries);
}

Matrix Sampler::unimodular(std::size_t n) {
  Matrix u = Matrix::identity(RingTag::Integers, n);
  if (n < 2) return coin() ? u : -u;
  for (std::size_t step = 0; step < 2 * n; ++step) {
    const std::size_t i = count(0, n - 1);
    std::size_t j = count(0, n - 2);
    if (j >= i) ++j;
    Matrix e = Matrix::identity(RingTag::Integers, n);
    e.set(i, j, Element(Integer(integer(-2, 2))));
    u = e * u;
  }
  return u;
}

FpModule Sampler::module() {
  const std::size_t b = count(0, bounds_.max_rank), a = count(0, bounds_.max_rank);
  return FpModule(matrix(b, a));
}

FpModule Sampler::free_module() { return FpModule::free(RingTag::Integers, count(0, bounds_.max_rank)); }

FpModule Sampler::torsion_module() {
  const std::size_t b = count(0, bounds_.max_rank);
  std::vector<Element> diag;
  for (std::size_t i = 0; i < b; ++i) diag.emplace_back(Integer(integer(2, bounds_.max_entry)));
  Matrix d = Matrix::diagonal(RingTag::Integers, b, b, diag);
  return FpModule(unimodular(b) * d * unimodular(b));
}

FpMorphism Sampler::morphism(const FpModule& source, const FpModule& target) {
  HomGroup h = hom_group(source, target);
  const std::size_t g = h.module().generators();
  Matrix c = matrix(g, 1, 3);
  return h.to_morphism(c);
}

Complex Sampler::fp_complex(int lo, int width) {
  std::vector<FpModule> objs{module()};
  std::vector<FpMorphism> diffs;
  for (int k = 1; k < width; ++k) {
    FpModule next = module();
    if (diffs.empty()) {
      diffs.push_back(morphism(objs.back(), next));
    } else {
      CokernelResult q = cokernel(diffs.back());
      diffs.push_back(morphism(q.module, next) * q.projection);
    }
    objs.push_back(std::move(next));
  }
  return Complex(ComplexBase::FpModules, RingTag::Integers, lo, std::move(objs), std::move(diffs));
}

Complex Sampler::free_complex(int lo, int width) {
  std::vector<FpModule> objs{free_module()};
  std::vector<FpMorphism> diffs;
  for (int k = 1; k < width; ++k) {
    FpModule next = free_module();
    Matrix m;
    if (diffs.empty()) {
      m = matrix(next.generators(), objs.back().generators());
    } else {
      Matrix lk = left_kernel_matrix(diffs.back().matrix());
      m = matrix(next.generators(), lk.rows(), 3) * lk;
    }
    diffs.push_back(FpMorphism::from_matrix(objs.back(), next, m));
    objs.push_back(std::move(next));
  }
  return Complex(ComplexBase::FreeModules, RingTag::Integers, lo, std::move(objs), std::move(diffs));
}

Complex Sampler::exact_free_complex(int lo, int width) {
  // X^k = B_{k-1} (+) B_k where B_k is hit isomorphically by d^k.
  std::vector<std::size_t> b(width + 1, 0);
  for (int k = 0; k + 1 < width; ++k) b[k + 1] = count(0, bounds_.max_rank - 1);
  std::vector<std::size_t> dims(width);
  std::vector<Matrix> basis(width);
  std::vector<FpModule> objs;
  for (int k = 0; k < width; ++k) {
    dims[k] = b[k] + b[k + 1];
    basis[k] = unimodular(dims[k]);
    objs.push_back(FpModule::free(RingTag::Integers, dims[k]));
  }
  std::vector<FpMorphism> diffs;
  for (int k = 0; k + 1 < width; ++k) {
    // The B_k summand of X^k maps identically onto the B_k summand of X^{k+1}.
    Matrix split = Matrix::zero(RingTag::Integers, dims[k + 1], dims[k]);
    for (std::size_t i = 0; i < b[k + 1]; ++i) split.set(i, b[k] + i, Element(Integer(1)));
    Matrix d = basis[k + 1] * split * *inverse(basis[k]);
    diffs.push_back(FpMorphism::from_matrix(objs[k], objs[k + 1], d));
  }
  return Complex(ComplexBase::FreeModules, RingTag::Integers, lo, std::move(objs), std::move(diffs));
}

}  // namespace tiltlab
