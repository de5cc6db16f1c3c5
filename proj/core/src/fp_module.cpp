#include "tiltlab/fp_module.hpp"

#include <sstream>

namespace tiltlab {

struct ModuleAccess {
  static FpModule make(Matrix presentation, ModuleInvariants invariants) {
    return FpModule(std::move(presentation), std::move(invariants));
  }
};

namespace {

ModuleInvariants invariants_from_smith(const SmithForm& s, std::size_t generators) {
  ModuleInvariants inv;
  for (const auto& d : s.diagonal())
    if (!element_is_unit(d)) inv.torsion.push_back(d);
  inv.free_rank = generators - s.rank;
  return inv;
}

ModuleInvariants compute_invariants(const Matrix& presentation) {
  if (presentation.cols() == 0) return {{}, presentation.rows()};
  return invariants_from_smith(smith_normal_form(presentation), presentation.rows());
}

void require_composable(const FpModule& a, const FpModule& b, const char* what) {
  if (!(a == b)) throw DimensionMismatch(std::string(what) + ": modules do not match");
}

Matrix identity_like(const FpModule& m) { return Matrix::identity(m.ring(), m.generators()); }

}  // namespace

std::string ModuleInvariants::to_string(RingTag ring) const {
  const bool ints = ring == RingTag::Integers;
  const std::string base = ints ? "Z" : "Q[x]";
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0) {
    out << base;
    if (free_rank > 1) out << "^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) out << " + ";
    if (ints) out << "Z/" << element_to_string(t);
    else out << "Q[x]/(" << element_to_string(t) << ")";
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

// --------------------------------------------------------------- FpModule

FpModule::FpModule() : FpModule(Matrix::zero(RingTag::Integers, 0, 0)) {}

FpModule::FpModule(Matrix presentation)
    : presentation_(std::move(presentation)), invariants_(compute_invariants(presentation_)) {}

FpModule FpModule::free(RingTag ring, std::size_t rank) {
  return FpModule(Matrix::zero(ring, rank, 0), ModuleInvariants{{}, rank});
}

FpModule FpModule::cyclic(const Element& d) {
  return FpModule(Matrix::column(ring_of(d), {d}));
}

FpModule FpModule::from_invariants(RingTag ring, const std::vector<Element>& torsion, std::size_t free_rank) {
  return FpModule(Matrix::diagonal(ring, torsion.size() + free_rank, torsion.size(), torsion));
}

// ------------------------------------------------------------- FpMorphism

FpMorphism::FpMorphism(FpModule source, FpModule target, Matrix matrix, Matrix witness)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)), witness_(std::move(witness)) {
  if (source_.ring() != target_.ring() || matrix_.ring() != source_.ring() || witness_.ring() != source_.ring())
    throw RingMismatch("morphism components over different rings");
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators())
    throw DimensionMismatch("morphism matrix shape does not match generators");
  if (witness_.rows() != target_.relations() || witness_.cols() != source_.relations())
    throw DimensionMismatch("morphism witness shape does not match relations");
  if (!(matrix_ * source_.presentation() == target_.presentation() * witness_))
    throw IllDefinedMorphism("witness equation fails: relations are not mapped to relations");
}

std::optional<FpMorphism> FpMorphism::try_from_matrix(FpModule source, FpModule target, Matrix matrix) {
  if (matrix.rows() != target.generators() || matrix.cols() != source.generators())
    throw DimensionMismatch("morphism matrix shape does not match generators");
  auto w = solve_lift(target.presentation(), matrix * source.presentation());
  if (!w) return std::nullopt;
  return FpMorphism(std::move(source), std::move(target), std::move(matrix), std::move(*w));
}

FpMorphism FpMorphism::from_matrix(FpModule source, FpModule target, Matrix matrix) {
  auto f = try_from_matrix(std::move(source), std::move(target), std::move(matrix));
  if (!f) throw IllDefinedMorphism("generator matrix does not define a module map");
  return *std::move(f);
}

FpMorphism FpMorphism::identity(const FpModule& m) {
  return FpMorphism(m, m, identity_like(m), Matrix::identity(m.ring(), m.relations()));
}

FpMorphism FpMorphism::zero(const FpModule& source, const FpModule& target) {
  if (source.ring() != target.ring()) throw RingMismatch("zero morphism between modules over different rings");
  return FpMorphism(source, target, Matrix::zero(source.ring(), target.generators(), source.generators()),
                    Matrix::zero(source.ring(), target.relations(), source.relations()));
}

FpMorphism operator+(const FpMorphism& a, const FpMorphism& b) {
  require_composable(a.source_, b.source_, "morphism sum");
  require_composable(a.target_, b.target_, "morphism sum");
  return FpMorphism(a.source_, a.target_, a.matrix_ + b.matrix_, a.witness_ + b.witness_);
}

FpMorphism operator-(const FpMorphism& a, const FpMorphism& b) {
  require_composable(a.source_, b.source_, "morphism difference");
  require_composable(a.target_, b.target_, "morphism difference");
  return FpMorphism(a.source_, a.target_, a.matrix_ - b.matrix_, a.witness_ - b.witness_);
}

FpMorphism operator-(const FpMorphism& a) { return FpMorphism(a.source_, a.target_, -a.matrix_, -a.witness_); }

FpMorphism operator*(const FpMorphism& g, const FpMorphism& f) {
  require_composable(f.target_, g.source_, "composition");
  return FpMorphism(f.source_, g.target_, g.matrix_ * f.matrix_, g.witness_ * f.witness_);
}

bool morphism_equal(const FpMorphism& f, const FpMorphism& g) {
  if (f.matrix().rows() != g.matrix().rows() || f.matrix().cols() != g.matrix().cols())
    throw DimensionMismatch("morphism_equal: morphisms are not parallel");
  return solve_lift(f.target().presentation(), f.matrix() - g.matrix()).has_value();
}

bool is_zero(const FpMorphism& f) { return solve_lift(f.target().presentation(), f.matrix()).has_value(); }

// ---------------------------------------------------------- constructions

Reduction reduce(const FpModule& m) {
  if (m.is_relation_free()) return {m, FpMorphism::identity(m), FpMorphism::identity(m)};
  const RingTag ring = m.ring();
  const auto s = smith_normal_form(m.presentation());
  std::vector<std::size_t> keep, torsion_idx;
  std::vector<Element> torsion;
  for (std::size_t i = 0; i < s.rank; ++i) {
    Element d = s.D.at(i, i);
    if (element_is_unit(d)) continue;
    keep.push_back(i);
    torsion_idx.push_back(i);
    torsion.push_back(d);
  }
  for (std::size_t i = s.rank; i < m.generators(); ++i) keep.push_back(i);

  ModuleInvariants inv{torsion, m.generators() - s.rank};
  FpModule reduced = ModuleAccess::make(Matrix::diagonal(ring, keep.size(), torsion.size(), torsion), inv);
  FpMorphism to(m, reduced, s.U.select_rows(keep), s.V_inv.select_rows(torsion_idx));
  FpMorphism from(reduced, m, s.U_inv.select_cols(keep), s.V.select_cols(torsion_idx));
  return {std::move(reduced), std::move(to), std::move(from)};
}

KernelResult kernel(const FpMorphism& f) {
  const FpModule& src = f.source();
  const FpModule& tgt = f.target();
  // x with G x in im P_target.
  Matrix joint = kernel_matrix(Matrix::hstack(f.matrix(), tgt.presentation()));
  Matrix gens = joint.row_range(0, src.generators());
  // Relations among those generators: c with gens c in im P_source.
  Matrix rel_joint = kernel_matrix(Matrix::hstack(gens, src.presentation()));
  const std::size_t k = gens.cols();
  Matrix relations = rel_joint.row_range(0, k);
  Matrix witness = -rel_joint.row_range(k, src.relations());
  FpModule raw(relations);
  FpMorphism incl(raw, src, gens, witness);
  Reduction r = reduce(raw);
  return {r.module, incl * r.from};
}

CokernelResult cokernel(const FpMorphism& f) {
  const FpModule& tgt = f.target();
  FpModule raw(Matrix::hstack(tgt.presentation(), f.matrix()));
  Matrix witness = Matrix::vstack(Matrix::identity(tgt.ring(), tgt.relations()),
                                  Matrix::zero(tgt.ring(), f.source().generators(), tgt.relations()));
  FpMorphism proj(tgt, raw, identity_like(tgt), witness);
  Reduction r = reduce(raw);
  return {r.module, r.to * proj};
}

ImageFactorization image(const FpMorphism& f) {
  KernelResult k = kernel(f);
  CokernelResult q = cokernel(k.inclusion);
  auto mono = extend_along(q.projection, f);
  if (!mono) throw std::logic_error("image: map does not factor through its coimage");
  return {q.module, q.projection, *std::move(mono)};
}

bool is_mono(const FpMorphism& f) { return kernel(f).module.is_zero(); }
bool is_epi(const FpMorphism& f) { return cokernel(f).module.is_zero(); }
bool is_iso(const FpMorphism& f) { return is_mono(f) && is_epi(f); }

std::optional<FpMorphism> inverse(const FpMorphism& f) {
  if (!is_iso(f)) return std::nullopt;
  return lift_along(f, FpMorphism::identity(f.target()));
}

std::optional<FpMorphism> lift_along(const FpMorphism& f, const FpMorphism& g) {
  require_composable(f.target(), g.target(), "lift_along");
  const FpModule& a = f.source();
  const FpModule& b = f.target();
  const FpModule& c = g.source();
  if (c.is_relation_free()) {
    // Only f H = g + P_b Z remains, one column at a time.
    auto x = solve_lift(Matrix::hstack(f.matrix(), b.presentation()), g.matrix());
    if (!x) return std::nullopt;
    return FpMorphism(c, a, x->row_range(0, a.generators()), Matrix::zero(f.ring(), a.relations(), 0));
  }
  MatrixEquations sys(f.ring());
  const auto h = sys.add_unknown(a.generators(), c.generators());
  const auto w = sys.add_unknown(a.relations(), c.relations());
  const auto z = sys.add_unknown(b.relations(), c.generators());
  const auto well_defined = sys.add_equation(a.generators(), c.relations());
  sys.add_right(well_defined, h, c.presentation());
  sys.add_left(well_defined, -a.presentation(), w);
  const auto commutes = sys.add_equation(b.generators(), c.generators());
  sys.add_left(commutes, f.matrix(), h);
  sys.add_left(commutes, -b.presentation(), z);
  sys.set_rhs(commutes, g.matrix());
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return FpMorphism(c, a, (*sol)[h], (*sol)[w]);
}

std::optional<FpMorphism> extend_along(const FpMorphism& f, const FpMorphism& g) {
  require_composable(f.source(), g.source(), "extend_along");
  const FpModule& a = f.source();
  const FpModule& b = f.target();
  const FpModule& c = g.target();
  MatrixEquations sys(f.ring());
  const auto h = sys.add_unknown(c.generators(), b.generators());
  const auto w = sys.add_unknown(c.relations(), b.relations());
  const auto z = sys.add_unknown(c.relations(), a.generators());
  const auto well_defined = sys.add_equation(c.generators(), b.relations());
  sys.add_right(well_defined, h, b.presentation());
  sys.add_left(well_defined, -c.presentation(), w);
  const auto commutes = sys.add_equation(c.generators(), a.generators());
  sys.add_right(commutes, h, f.matrix());
  sys.add_left(commutes, -c.presentation(), z);
  sys.set_rhs(commutes, g.matrix());
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return FpMorphism(b, c, (*sol)[h], (*sol)[w]);
}

FpMorphism lift_through_epi(const FpMorphism& p, const FpMorphism& g) {
  auto h = lift_along(p, g);
  if (!h) throw std::invalid_argument("lift_through_epi: no lift (map is not epi or source is not projective)");
  return *std::move(h);
}

DirectSum direct_sum(const FpModule& a, const FpModule& b) {
  require_same_ring(a.presentation(), b.presentation(), "direct_sum");
  const RingTag ring = a.ring();
  ModuleInvariants inv;
  FpModule sum(Matrix::block_diag(a.presentation(), b.presentation()));
  const std::size_t ga = a.generators(), gb = b.generators(), ra = a.relations(), rb = b.relations();
  auto embed = [&](std::size_t rows, std::size_t n, std::size_t offset) {
    Matrix m = Matrix::zero(ring, rows, n);
    m.set_block(offset, 0, Matrix::identity(ring, n));
    return m;
  };
  FpMorphism i1(a, sum, embed(ga + gb, ga, 0), embed(ra + rb, ra, 0));
  FpMorphism i2(b, sum, embed(ga + gb, gb, ga), embed(ra + rb, rb, ra));
  FpMorphism p1(sum, a, embed(ga + gb, ga, 0).transpose(), embed(ra + rb, ra, 0).transpose());
  FpMorphism p2(sum, b, embed(ga + gb, gb, ga).transpose(), embed(ra + rb, rb, ra).transpose());
  return {sum, i1, i2, p1, p2};
}

FpModule direct_sum(const std::vector<FpModule>& parts) {
  if (parts.empty()) return FpModule();
  Matrix p = parts.front().presentation();
  for (std::size_t k = 1; k < parts.size(); ++k) p = Matrix::block_diag(p, parts[k].presentation());
  return FpModule(p);
}

FpMorphism direct_sum(const FpMorphism& f, const FpMorphism& g) {
  return block_morphism({f.source(), g.source()}, {f.target(), g.target()},
                        {{f, FpMorphism::zero(g.source(), f.target())}, {FpMorphism::zero(f.source(), g.target()), g}});
}

FpMorphism block_morphism(const std::vector<FpModule>& sources, const std::vector<FpModule>& targets,
                          const std::vector<std::vector<FpMorphism>>& blocks) {
  if (sources.empty() || targets.empty()) throw std::invalid_argument("block_morphism: empty source or target list");
  const RingTag ring = sources.front().ring();
  if (blocks.size() != targets.size()) throw DimensionMismatch("block_morphism: wrong number of block rows");
  std::size_t gs = 0, rs = 0, gt = 0, rt = 0;
  for (const auto& s : sources) gs += s.generators(), rs += s.relations();
  for (const auto& t : targets) gt += t.generators(), rt += t.relations();
  Matrix gen = Matrix::zero(ring, gt, gs);
  Matrix wit = Matrix::zero(ring, rt, rs);
  std::size_t row_g = 0, row_r = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (blocks[i].size() != sources.size()) throw DimensionMismatch("block_morphism: wrong number of block columns");
    std::size_t col_g = 0, col_r = 0;
    for (std::size_t j = 0; j < sources.size(); ++j) {
      const FpMorphism& b = blocks[i][j];
      require_composable(b.source(), sources[j], "block_morphism source");
      require_composable(b.target(), targets[i], "block_morphism target");
      gen.set_block(row_g, col_g, b.matrix());
      wit.set_block(row_r, col_r, b.witness());
      col_g += sources[j].generators();
      col_r += sources[j].relations();
    }
    row_g += targets[i].generators();
    row_r += targets[i].relations();
  }
  return FpMorphism(direct_sum(sources), direct_sum(targets), gen, wit);
}

Pullback pullback(const FpMorphism& f, const FpMorphism& g) {
  require_composable(f.target(), g.target(), "pullback");
  const FpModule& a = f.source();
  const FpModule& b = g.source();
  FpMorphism diff = block_morphism({a, b}, {f.target()}, {{f, -g}});
  KernelResult k = kernel(diff);
  FpMorphism p1 = block_morphism({a, b}, {a}, {{FpMorphism::identity(a), FpMorphism::zero(b, a)}});
  FpMorphism p2 = block_morphism({a, b}, {b}, {{FpMorphism::zero(a, b), FpMorphism::identity(b)}});
  return {k.module, p1 * k.inclusion, p2 * k.inclusion};
}

Pushout pushout(const FpMorphism& f, const FpMorphism& g) {
  require_composable(f.source(), g.source(), "pushout");
  const FpModule& b = f.target();
  const FpModule& c = g.target();
  FpMorphism diff = block_morphism({f.source()}, {b, c}, {{f}, {-g}});
  CokernelResult q = cokernel(diff);
  FpMorphism i1 = block_morphism({b}, {b, c}, {{FpMorphism::identity(b)}, {FpMorphism::zero(b, c)}});
  FpMorphism i2 = block_morphism({c}, {b, c}, {{FpMorphism::zero(c, b)}, {FpMorphism::identity(c)}});
  return {q.module, q.projection * i1, q.projection * i2};
}

bool is_short_exact(const FpMorphism& i, const FpMorphism& p) {
  if (!(i.target() == p.source())) return false;
  if (!is_zero(p * i) || !is_mono(i) || !is_epi(p)) return false;
  return lift_along(i, kernel(p).inclusion).has_value();
}

// ---------------------------------------------------------------- HomGroup

HomGroup::HomGroup(FpModule source, FpModule target, FpModule module, Matrix basis, Matrix trivial)
    : source_(std::move(source)),
      target_(std::move(target)),
      module_(std::move(module)),
      basis_(std::move(basis)),
      trivial_(std::move(trivial)) {}

FpMorphism HomGroup::to_morphism(const Matrix& coordinates) const {
  Matrix v = basis_ * coordinates;
  return FpMorphism::from_matrix(source_, target_, Matrix::unvec(v, target_.generators(), source_.generators()));
}

Matrix HomGroup::coordinates(const FpMorphism& f) const {
  auto sol = solve_lift(Matrix::hstack(basis_, trivial_), f.matrix().vec());
  if (!sol) throw std::invalid_argument("HomGroup::coordinates: morphism has different source or target");
  return sol->row_range(0, basis_.cols());
}

FpMorphism HomGroup::generator(std::size_t k) const {
  Matrix e = Matrix::zero(module_.ring(), module_.generators(), 1);
  e.set(k, 0, element_one(module_.ring()));
  return to_morphism(e);
}

HomGroup hom_group(const FpModule& m, const FpModule& n) {
  if (m.ring() != RingTag::Integers || n.ring() != RingTag::Integers)
    throw UnsupportedRing("hom_group is only available over the integers");
  const RingTag ring = m.ring();
  const std::size_t gm = m.generators(), gn = n.generators();
  MatrixEquations sys(ring);
  const auto h = sys.add_unknown(gn, gm);
  const auto w = sys.add_unknown(n.relations(), m.relations());
  const auto eq = sys.add_equation(gn, m.relations());
  sys.add_right(eq, h, m.presentation());
  sys.add_left(eq, -n.presentation(), w);
  Matrix solutions = kernel_matrix(sys.coefficient_matrix());
  Matrix gens = solutions.row_range(sys.unknown_offset(h), gn * gm);
  Matrix trivial = Matrix::kronecker(Matrix::identity(ring, gm), n.presentation());
  Matrix rel = kernel_matrix(Matrix::hstack(gens, trivial)).row_range(0, gens.cols());
  Reduction r = reduce(FpModule(rel));
  return HomGroup(m, n, r.module, gens * r.from.matrix(), trivial);
}

// ----------------------------------------------------------------- torsion

TorsionDecomposition torsion_split(const FpModule& m) {
  const RingTag ring = m.ring();
  Reduction r = reduce(m);
  const FpModule& red = r.module;
  const std::size_t t = red.relations();
  const std::size_t f = red.generators() - t;
  FpModule tors = ModuleAccess::make(red.presentation().row_range(0, t), {red.invariants().torsion, 0});
  Matrix inc = Matrix::zero(ring, red.generators(), t);
  inc.set_block(0, 0, Matrix::identity(ring, t));
  FpMorphism incl(tors, red, inc, Matrix::identity(ring, t));
  FpModule quot = FpModule::free(ring, f);
  Matrix pr = Matrix::zero(ring, f, red.generators());
  pr.set_block(0, t, Matrix::identity(ring, f));
  FpMorphism proj(red, quot, pr, Matrix::zero(ring, 0, t));
  return {tors, r.from * incl, quot, proj * r.to};
}

TorsionDecomposition torsion_decompose(const FpModule& m) {
  if (m.ring() != RingTag::Integers) throw UnsupportedRing("the torsion pair is defined over the integers only");
  return torsion_split(m);
}

std::vector<Matrix> projective_resolution(const FpModule& m, std::size_t max_len) {
  if (m.relations() == 0) return {};
  const auto s = smith_normal_form(m.presentation());
  if (s.rank == 0) return {};
  if (max_len < 1) throw ResolutionTooLong("module is not free but max_len is 0");
  // P * V restricted to the first rank columns is injective with image im P.
  return {m.presentation() * s.V.col_range(0, s.rank)};
}

FpModule with_injective_presentation(const FpModule& m) {
  auto res = projective_resolution(m, 1);
  if (res.empty()) return ModuleAccess::make(Matrix::zero(m.ring(), m.generators(), 0), m.invariants());
  if (res.front().cols() == m.relations() && res.front() == m.presentation()) return m;
  return ModuleAccess::make(res.front(), m.invariants());
}

FpMorphism free_cover(const FpModule& m) {
  FpModule f = FpModule::free(m.ring(), m.generators());
  return FpMorphism(f, m, identity_like(m), Matrix::zero(m.ring(), m.relations(), 0));
}

}  // namespace tiltlab
