#include "tiltlab/complex.hpp"

#include <algorithm>
#include <map>

namespace tiltlab {
namespace {

FpModule zero_module(RingTag ring) { return FpModule::zero(ring); }

bool all_relation_free(const std::vector<FpModule>& objects) {
  return std::all_of(objects.begin(), objects.end(), [](const FpModule& m) { return m.is_relation_free(); });
}

void require_free_entried(const Complex& c, const char* op) {
  if (!c.is_free_entried()) throw NonFreeEntries(std::string(op) + ": complex has non-free entries");
}

// Layout of Hom^m(X, Y) = (+)_p Hom(X^p, Y^{p+m}) as one column vector.
struct HomLayout {
  std::map<int, std::size_t> offset;  // p -> offset
  std::size_t total = 0;
};

HomLayout hom_layout(const Complex& x, const Complex& y, int m) {
  HomLayout layout;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    if (!y.in_window(p + m)) continue;
    layout.offset[p] = layout.total;
    layout.total += x.object(p).generators() * y.object(p + m).generators();
  }
  return layout;
}

}  // namespace

std::string to_string(ComplexBase base) { return base == ComplexBase::FreeModules ? "FreeModules" : "FpModules"; }

// ------------------------------------------------------------------ Complex

Complex::Complex(ComplexBase base, RingTag ring, int lo, std::vector<FpModule> objects,
                 std::vector<FpMorphism> differentials)
    : base_(base),
      ring_(ring),
      lo_(lo),
      objects_(std::move(objects)),
      differentials_(std::move(differentials)),
      zero_(zero_module(ring)) {
  const std::size_t expected = objects_.empty() ? 0 : objects_.size() - 1;
  if (differentials_.size() != expected) throw DimensionMismatch("complex: need one differential between consecutive objects");
  for (const auto& m : objects_)
    if (m.ring() != ring_) throw RingMismatch("complex: object over a different ring");
  if (base_ == ComplexBase::FreeModules && !all_relation_free(objects_))
    throw NonFreeEntries("complex over FreeModules has an object with relations");
  for (std::size_t k = 0; k < differentials_.size(); ++k) {
    if (!(differentials_[k].source() == objects_[k]) || !(differentials_[k].target() == objects_[k + 1]))
      throw DimensionMismatch("complex: differential does not match its objects");
    if (k + 1 < differentials_.size() && !is_zero(differentials_[k + 1] * differentials_[k]))
      throw std::invalid_argument("complex: d * d != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
  }
}

Complex Complex::zero(RingTag ring, ComplexBase base) { return Complex(base, ring, 0, {}, {}); }

Complex Complex::stalk(const FpModule& m, int degree) {
  const ComplexBase base = m.is_relation_free() ? ComplexBase::FreeModules : ComplexBase::FpModules;
  return Complex(base, m.ring(), degree, {m}, {});
}

Complex Complex::two_term(const FpMorphism& d, int lo) {
  const bool free = d.source().is_relation_free() && d.target().is_relation_free();
  return Complex(free ? ComplexBase::FreeModules : ComplexBase::FpModules, d.ring(), lo, {d.source(), d.target()}, {d});
}

const FpModule& Complex::object(int n) const { return in_window(n) ? objects_[n - lo_] : zero_; }

FpMorphism Complex::differential(int n) const {
  if (n >= lo_ && n < hi()) return differentials_[n - lo_];
  return FpMorphism::zero(object(n), object(n + 1));
}

bool Complex::is_free_entried() const { return all_relation_free(objects_); }

Complex Complex::trimmed() const {
  int a = lo_, b = hi();
  while (a <= b && object(a).is_zero()) ++a;
  while (b >= a && object(b).is_zero()) --b;
  if (a > b) return zero(ring_, base_);
  std::vector<FpModule> objs(objects_.begin() + (a - lo_), objects_.begin() + (b - lo_ + 1));
  std::vector<FpMorphism> diffs(differentials_.begin() + (a - lo_), differentials_.begin() + (b - lo_));
  return Complex(base_, ring_, a, std::move(objs), std::move(diffs));
}

Complex Complex::as_fp() const {
  Complex c = *this;
  c.base_ = ComplexBase::FpModules;
  return c;
}

bool operator==(const Complex& a, const Complex& b) {
  if (a.ring_ != b.ring_ || a.lo_ != b.lo_ || a.objects_.size() != b.objects_.size()) return false;
  for (std::size_t k = 0; k < a.objects_.size(); ++k)
    if (!(a.objects_[k] == b.objects_[k])) return false;
  for (std::size_t k = 0; k < a.differentials_.size(); ++k)
    if (!(a.differentials_[k].matrix() == b.differentials_[k].matrix())) return false;
  return true;
}

// ----------------------------------------------------------------- ChainMap

ChainMap::ChainMap(Complex source, Complex target, int lo, std::vector<FpMorphism> components)
    : source_(std::move(source)), target_(std::move(target)), lo_(lo), components_(std::move(components)) {
  for (std::size_t k = 0; k < components_.size(); ++k) {
    const int n = lo_ + static_cast<int>(k);
    if (!(components_[k].source() == source_.object(n)) || !(components_[k].target() == target_.object(n)))
      throw DimensionMismatch("chain map component does not match objects in degree " + std::to_string(n));
  }
  for (int n = this->lo() - 1; n <= this->hi(); ++n)
    if (!morphism_equal(target_.differential(n) * component(n), component(n + 1) * source_.differential(n)))
      throw std::invalid_argument("chain map does not commute with differentials at degree " + std::to_string(n));
}

ChainMap ChainMap::identity(const Complex& c) {
  std::vector<FpMorphism> comps;
  for (int n = c.lo(); n <= c.hi(); ++n) comps.push_back(FpMorphism::identity(c.object(n)));
  return ChainMap(c, c, c.lo(), std::move(comps));
}

ChainMap ChainMap::zero(const Complex& source, const Complex& target) { return ChainMap(source, target, 0, {}); }

FpMorphism ChainMap::component(int n) const {
  const int k = n - lo_;
  if (k >= 0 && k < static_cast<int>(components_.size())) return components_[k];
  return FpMorphism::zero(source_.object(n), target_.object(n));
}

int ChainMap::lo() const { return std::min(source_.lo(), target_.lo()); }
int ChainMap::hi() const { return std::max(source_.hi(), target_.hi()); }

namespace {

template <class Op>
ChainMap combine(const ChainMap& a, const ChainMap& b, Op op) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw DimensionMismatch("chain maps are not parallel");
  std::vector<FpMorphism> comps;
  for (int n = a.lo(); n <= a.hi(); ++n) comps.push_back(op(a.component(n), b.component(n)));
  return ChainMap(a.source(), a.target(), a.lo(), std::move(comps));
}

}  // namespace

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
  return combine(a, b, [](const FpMorphism& x, const FpMorphism& y) { return x + y; });
}

ChainMap operator-(const ChainMap& a, const ChainMap& b) {
  return combine(a, b, [](const FpMorphism& x, const FpMorphism& y) { return x - y; });
}

ChainMap operator-(const ChainMap& a) {
  std::vector<FpMorphism> comps;
  for (int n = a.lo(); n <= a.hi(); ++n) comps.push_back(-a.component(n));
  return ChainMap(a.source(), a.target(), a.lo(), std::move(comps));
}

ChainMap operator*(const ChainMap& g, const ChainMap& f) {
  if (!(f.target() == g.source())) throw DimensionMismatch("chain map composition: complexes do not match");
  const int lo = std::min(f.lo(), g.lo()), hi = std::max(f.hi(), g.hi());
  std::vector<FpMorphism> comps;
  for (int n = lo; n <= hi; ++n) comps.push_back(g.component(n) * f.component(n));
  return ChainMap(f.source(), g.target(), lo, std::move(comps));
}

bool chain_map_equal(const ChainMap& f, const ChainMap& g) {
  const int lo = std::min(f.lo(), g.lo()), hi = std::max(f.hi(), g.hi());
  for (int n = lo; n <= hi; ++n)
    if (!morphism_equal(f.component(n), g.component(n))) return false;
  return true;
}

// ---------------------------------------------------------------- homotopy

bool certifies_nullhomotopy(const ChainMap& f, const Homotopy& h) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  auto comp = [&](int n) {
    const int k = n - h.lo;
    if (k >= 0 && k < static_cast<int>(h.components.size())) return h.components[k];
    return FpMorphism::zero(x.object(n), y.object(n - 1));
  };
  for (int n = f.lo(); n <= f.hi(); ++n) {
    FpMorphism rhs = y.differential(n - 1) * comp(n) + comp(n + 1) * x.differential(n);
    if (!morphism_equal(f.component(n), rhs)) return false;
  }
  return true;
}

std::optional<Homotopy> is_nullhomotopic(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const int hlo = std::max(x.lo(), y.lo() + 1), hhi = std::min(x.hi(), y.hi() + 1);
  const int elo = std::max(x.lo(), y.lo()), ehi = std::min(x.hi(), y.hi());
  MatrixEquations sys(x.ring());
  std::map<int, std::pair<std::size_t, std::size_t>> unknowns;  // n -> (H^n, W^n)
  for (int n = hlo; n <= hhi; ++n) {
    const FpModule& src = x.object(n);
    const FpModule& tgt = y.object(n - 1);
    const auto h = sys.add_unknown(tgt.generators(), src.generators());
    const auto w = sys.add_unknown(tgt.relations(), src.relations());
    const auto eq = sys.add_equation(tgt.generators(), src.relations());
    sys.add_right(eq, h, src.presentation());
    sys.add_left(eq, -tgt.presentation(), w);
    unknowns[n] = {h, w};
  }
  for (int n = elo; n <= ehi; ++n) {
    const FpModule& src = x.object(n);
    const FpModule& tgt = y.object(n);
    const auto eq = sys.add_equation(tgt.generators(), src.generators());
    if (auto it = unknowns.find(n); it != unknowns.end())
      sys.add_left(eq, y.differential(n - 1).matrix(), it->second.first);
    if (auto it = unknowns.find(n + 1); it != unknowns.end())
      sys.add_right(eq, it->second.first, x.differential(n).matrix());
    const auto z = sys.add_unknown(tgt.relations(), src.generators());
    sys.add_left(eq, -tgt.presentation(), z);
    sys.set_rhs(eq, f.component(n).matrix());
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Homotopy out;
  out.lo = hlo;
  for (int n = hlo; n <= hhi; ++n) {
    const auto [h, w] = unknowns[n];
    out.components.emplace_back(x.object(n), y.object(n - 1), (*sol)[h], (*sol)[w]);
  }
  return out;
}

bool homotopic(const ChainMap& f, const ChainMap& g) { return is_nullhomotopic(f - g).has_value(); }

bool is_contractible(const Complex& c) { return is_nullhomotopic(ChainMap::identity(c)).has_value(); }

// ------------------------------------------------------------ constructions

Complex shift(const Complex& c, int k) {
  std::vector<FpModule> objs;
  std::vector<FpMorphism> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    objs.push_back(c.object(n));
    if (n < c.hi()) diffs.push_back(k % 2 == 0 ? c.differential(n) : -c.differential(n));
  }
  return Complex(c.base(), c.ring(), c.lo() - k, std::move(objs), std::move(diffs));
}

ChainMap shift(const ChainMap& f, int k) {
  std::vector<FpMorphism> comps;
  for (int n = f.lo(); n <= f.hi(); ++n) comps.push_back(f.component(n));
  return ChainMap(shift(f.source(), k), shift(f.target(), k), f.lo() - k, std::move(comps));
}

Complex direct_sum(const Complex& a, const Complex& b) {
  if (a.ring() != b.ring()) throw RingMismatch("direct sum of complexes over different rings");
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<FpModule> objs;
  std::vector<FpMorphism> diffs;
  for (int n = lo; n <= hi; ++n) {
    objs.push_back(direct_sum(std::vector<FpModule>{a.object(n), b.object(n)}));
    if (n < hi) diffs.push_back(direct_sum(a.differential(n), b.differential(n)));
  }
  const bool free = a.base() == ComplexBase::FreeModules && b.base() == ComplexBase::FreeModules;
  if (lo > hi) return Complex::zero(a.ring(), free ? ComplexBase::FreeModules : ComplexBase::FpModules);
  return Complex(free ? ComplexBase::FreeModules : ComplexBase::FpModules, a.ring(), lo, std::move(objs),
                 std::move(diffs));
}

Cone cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  const int lo = std::min(y.lo(), x.lo() - 1), hi = std::max(y.hi(), x.hi() - 1);
  std::vector<FpModule> objs;
  std::vector<FpMorphism> diffs, incl, proj;
  for (int n = lo; n <= hi; ++n) {
    const std::vector<FpModule> parts{y.object(n), x.object(n + 1)};
    objs.push_back(direct_sum(parts));
    if (n < hi) {
      const std::vector<FpModule> next{y.object(n + 1), x.object(n + 2)};
      diffs.push_back(block_morphism(parts, next,
                                     {{y.differential(n), f.component(n + 1)},
                                      {FpMorphism::zero(y.object(n), x.object(n + 2)), -x.differential(n + 1)}}));
    }
    incl.push_back(block_morphism({y.object(n)}, parts,
                                  {{FpMorphism::identity(y.object(n))}, {FpMorphism::zero(y.object(n), x.object(n + 1))}}));
    proj.push_back(block_morphism(parts, {x.object(n + 1)},
                                  {{FpMorphism::zero(y.object(n), x.object(n + 1)), FpMorphism::identity(x.object(n + 1))}}));
  }
  const bool free = x.base() == ComplexBase::FreeModules && y.base() == ComplexBase::FreeModules;
  Complex c(free ? ComplexBase::FreeModules : ComplexBase::FpModules, x.ring(), lo, std::move(objs), std::move(diffs));
  ChainMap inclusion(y, c, lo, std::move(incl));
  ChainMap projection(c, shift(x, 1), lo, std::move(proj));
  return {c, inclusion, projection};
}

// -------------------------------------------------------------- cohomology

CohomologyData cohomology_data(const Complex& c, int n) {
  KernelResult cycles = kernel(c.differential(n));
  auto boundary = lift_along(cycles.inclusion, c.differential(n - 1));
  if (!boundary) throw std::logic_error("cohomology: boundaries are not cycles");
  return {cycles, cokernel(*boundary)};
}

FpModule cohomology(const Complex& c, int n) { return cohomology_data(c, n).classes.module; }

FpMorphism cohomology_map(const ChainMap& f, int n) {
  CohomologyData hx = cohomology_data(f.source(), n);
  CohomologyData hy = cohomology_data(f.target(), n);
  auto on_cycles = lift_along(hy.cycles.inclusion, f.component(n) * hx.cycles.inclusion);
  if (!on_cycles) throw std::logic_error("cohomology_map: cycles are not mapped to cycles");
  auto induced = extend_along(hx.classes.projection, hy.classes.projection * *on_cycles);
  if (!induced) throw std::logic_error("cohomology_map: boundaries are not mapped to boundaries");
  return *std::move(induced);
}

bool is_exact(const Complex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (!cohomology(c, n).is_zero()) return false;
  return true;
}

bool is_quasi_isomorphism(const ChainMap& f) {
  for (int n = f.lo(); n <= f.hi(); ++n)
    if (!is_iso(cohomology_map(f, n))) return false;
  return true;
}

bool derived_isomorphic(const Complex& a, const Complex& b) {
  if (a.ring() != b.ring()) return false;
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int n = lo; n <= hi; ++n)
    if (!cohomology(a, n).isomorphic_to(cohomology(b, n))) return false;
  return true;
}

// --------------------------------------------------------------- hom complex

Matrix hom_differential(const Complex& x, const Complex& y, int m) {
  require_free_entried(x, "hom_differential");
  require_free_entried(y, "hom_differential");
  const RingTag ring = x.ring();
  const HomLayout src = hom_layout(x, y, m), dst = hom_layout(x, y, m + 1);
  Matrix out = Matrix::zero(ring, dst.total, src.total);
  for (const auto& [p, row] : dst.offset) {
    const std::size_t bx = x.object(p).generators();
    if (auto it = src.offset.find(p); it != src.offset.end()) {
      Matrix blk = Matrix::kronecker(Matrix::identity(ring, bx), y.differential(p + m).matrix());
      out.set_block(row, it->second, out.block(row, it->second, blk.rows(), blk.cols()) + blk);
    }
    if (auto it = src.offset.find(p + 1); it != src.offset.end()) {
      const std::size_t by = y.object(p + m + 1).generators();
      Matrix blk = Matrix::kronecker(x.differential(p).matrix().transpose(), Matrix::identity(ring, by));
      blk = (m % 2 == 0) ? -blk : blk;
      out.set_block(row, it->second, out.block(row, it->second, blk.rows(), blk.cols()) + blk);
    }
  }
  return out;
}

DerivedHom derived_hom_data(const Complex& x, const Complex& y, int n) {
  Matrix delta = hom_differential(x, y, n);
  Matrix before = hom_differential(x, y, n - 1);
  Matrix cycles = kernel_matrix(delta);
  auto rel = solve_lift(cycles, before);
  if (!rel) throw std::logic_error("derived_hom: boundaries are not cycles");
  Reduction r = reduce(FpModule(*rel));
  return {r.module, cycles * r.from.matrix(), n};
}

FpModule derived_hom(const Complex& x, const Complex& y, int n) { return derived_hom_data(x, y, n).module; }

ChainMap chain_map_from_vector(const Complex& x, const Complex& y, int n, const Matrix& v) {
  const HomLayout layout = hom_layout(x, y, n);
  if (v.rows() != layout.total || v.cols() != 1) throw DimensionMismatch("hom vector has the wrong length");
  Complex target = shift(y, n);
  std::vector<FpMorphism> comps;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    auto it = layout.offset.find(p);
    if (it == layout.offset.end()) {
      comps.push_back(FpMorphism::zero(x.object(p), target.object(p)));
      continue;
    }
    const std::size_t bx = x.object(p).generators(), by = y.object(p + n).generators();
    Matrix g = Matrix::unvec(v.block(it->second, 0, bx * by, 1), by, bx);
    comps.push_back(FpMorphism::from_matrix(x.object(p), target.object(p), g));
  }
  return ChainMap(x, target, x.lo(), std::move(comps));
}

// ------------------------------------------------------------ free models

FreeModel free_model(const Complex& c) {
  if (c.is_free_entried()) {
    std::vector<FpModule> objs;
    std::vector<FpMorphism> diffs;
    for (int n = c.lo(); n <= c.hi(); ++n) {
      objs.push_back(c.object(n));
      if (n < c.hi()) diffs.push_back(c.differential(n));
    }
    Complex f(ComplexBase::FreeModules, c.ring(), c.lo(), std::move(objs), std::move(diffs));
    std::vector<FpMorphism> comps;
    for (int n = c.lo(); n <= c.hi(); ++n) comps.push_back(FpMorphism::identity(c.object(n)));
    return {f, ChainMap(f, c, c.lo(), std::move(comps))};
  }
  const RingTag ring = c.ring();
  std::map<int, Matrix> pres;
  auto p = [&](int k) -> const Matrix& {
    auto it = pres.find(k);
    if (it != pres.end()) return it->second;
    Matrix m = c.in_window(k) ? with_injective_presentation(c.object(k)).presentation() : Matrix::zero(ring, 0, 0);
    return pres.emplace(k, std::move(m)).first->second;
  };
  auto g = [&](int k) { return c.differential(k).matrix(); };
  auto solve = [](const Matrix& a, const Matrix& b) {
    auto s = solve_lift(a, b);
    if (!s) throw std::logic_error("free_model: relation lift failed");
    return *std::move(s);
  };
  auto h = [&](int k) { return solve(p(k + 2), g(k + 1) * g(k)); };
  auto w = [&](int k) { return solve(p(k + 1), g(k) * p(k)); };

  const int lo = c.lo() - 1, hi = c.hi();
  std::vector<FpModule> objs;
  for (int k = lo; k <= hi; ++k) objs.push_back(FpModule::free(ring, p(k).rows() + p(k + 1).cols()));
  std::vector<FpMorphism> diffs;
  for (int k = lo; k < hi; ++k) {
    Matrix top = Matrix::hstack(g(k), p(k + 1));
    Matrix bottom = Matrix::hstack(-h(k), -w(k + 1));
    diffs.push_back(FpMorphism::from_matrix(objs[k - lo], objs[k - lo + 1], Matrix::vstack(top, bottom)));
  }
  Complex t(ComplexBase::FreeModules, ring, lo, objs, std::move(diffs));
  std::vector<FpMorphism> comps;
  for (int k = lo; k <= hi; ++k) {
    const std::size_t b = c.object(k).generators();
    Matrix a = Matrix::hstack(Matrix::identity(ring, b), Matrix::zero(ring, b, p(k + 1).cols()));
    comps.push_back(FpMorphism::from_matrix(objs[k - lo], c.object(k), a));
  }
  return {t, ChainMap(t, c, lo, std::move(comps))};
}

Complex formal_model(const Complex& c) {
  Complex out = Complex::zero(c.ring(), ComplexBase::FreeModules);
  for (int n = c.lo(); n <= c.hi(); ++n) {
    FpModule h = cohomology(c, n);
    if (h.is_zero()) continue;
    FpModule inj = with_injective_presentation(h);
    FpModule rel = FpModule::free(c.ring(), inj.relations());
    FpModule gen = FpModule::free(c.ring(), inj.generators());
    out = direct_sum(out, Complex::two_term(FpMorphism::from_matrix(rel, gen, inj.presentation()), n - 1));
  }
  return out;
}

// -------------------------------------------------------------- acyclicity

std::optional<std::vector<ImageFactorization>> acyclicity_witness(const Complex& c, const ExactStructure& ex) {
  std::vector<ImageFactorization> images;
  for (int n = c.lo() - 1; n <= c.hi(); ++n) images.push_back(image(c.differential(n)));
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const auto& in = images[n - c.lo()];
    const auto& out = images[n - c.lo() + 1];
    if (!ex.contains(in.module) || !ex.contains(out.module)) return std::nullopt;
    if (!is_conflation(in.mono, out.epi, ex)) return std::nullopt;
  }
  return images;
}

bool is_acyclic_wrt(const Complex& c, const ExactStructure& ex) { return acyclicity_witness(c, ex).has_value(); }

}  // namespace tiltlab
