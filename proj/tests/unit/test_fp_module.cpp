#include "convert.hpp"
#include "oracles.hpp"
#include "tiltlab/fp_module.hpp"

#include <doctest.h>

using namespace tiltlab;
using testing_support::to_matrix;

namespace {

const RingTag Z = RingTag::Integers;

FpModule zmod(long n) { return FpModule::cyclic(n); }
FpModule free_z(std::size_t r) { return FpModule::free(Z, r); }

ModuleInvariants inv(std::vector<long> torsion, std::size_t free_rank) {
  ModuleInvariants out;
  for (long t : torsion) out.torsion.emplace_back(Integer(t));
  out.free_rank = free_rank;
  return out;
}

long order_of(const FpModule& m) {
  REQUIRE(m.is_torsion());
  long n = 1;
  for (const auto& t : m.invariants().torsion) n *= std::get<Integer>(t).get_si();
  return n;
}

FpModule random_module(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(0, 3);
  const std::size_t b = dim(rng), a = dim(rng);
  return FpModule(to_matrix(oracle::random_grid(rng, b, a, 6), a));
}

std::optional<FpMorphism> random_morphism(std::mt19937_64& rng, const FpModule& s, const FpModule& t) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    Matrix g = to_matrix(oracle::random_grid(rng, t.generators(), s.generators(), 5), s.generators());
    if (auto f = FpMorphism::try_from_matrix(s, t, g)) return f;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("module invariants and isomorphism") {
  CHECK(zmod(6).invariants() == inv({6}, 0));
  CHECK(zmod(1).is_zero());
  CHECK(zmod(0).invariants() == inv({}, 1));
  CHECK(FpModule(Matrix::integers({{2, 0}, {0, 3}})).isomorphic_to(zmod(6)));
  CHECK(FpModule().is_zero());
  CHECK(zmod(4).to_string() == "Z/4");
}

TEST_CASE("kernel examples") {
  CHECK(kernel(FpMorphism::from_matrix(free_z(1), free_z(1), Matrix::integers({{2}}))).module.is_zero());

  auto proj = FpMorphism::from_matrix(free_z(1), zmod(2), Matrix::integers({{1}}));
  auto k = kernel(proj);
  CHECK(k.module.invariants() == inv({}, 1));
  // The inclusion is x2 up to sign.
  const Integer g = std::get<Integer>(k.inclusion.matrix().at(0, 0));
  CHECK(abs(g) == 2);

  // x2 on Z/4: brute force the kernel of the 4-element group.
  long brute = 0;
  for (long x = 0; x < 4; ++x)
    if ((2 * x) % 4 == 0) ++brute;
  auto k4 = kernel(FpMorphism::from_matrix(zmod(4), zmod(4), Matrix::integers({{2}})));
  CHECK(order_of(k4.module) == brute);
  CHECK(k4.module.invariants() == inv({2}, 0));
  CHECK(is_mono(k4.inclusion));
  CHECK_FALSE(is_zero(k4.inclusion));
}

TEST_CASE("cokernel examples") {
  auto c = cokernel(FpMorphism::from_matrix(free_z(2), free_z(2), Matrix::integers({{2, 0}, {0, 3}})));
  CHECK(c.module.invariants() == inv({6}, 0));
  CHECK(cokernel(FpMorphism::identity(zmod(5))).module.is_zero());
  CHECK(cokernel(FpMorphism::zero(free_z(1), free_z(1))).module.invariants() == inv({}, 1));
  CHECK(is_epi(c.projection));
}

TEST_CASE("ill-defined maps are rejected") {
  CHECK_FALSE(FpMorphism::try_from_matrix(zmod(2), free_z(1), Matrix::integers({{1}})).has_value());
  CHECK_THROWS_AS(FpMorphism::from_matrix(zmod(2), zmod(3), Matrix::integers({{1}})), IllDefinedMorphism);
  CHECK(FpMorphism::try_from_matrix(zmod(2), zmod(4), Matrix::integers({{2}})).has_value());
}

TEST_CASE("hom groups match brute force counts") {
  auto h = hom_group(zmod(4), zmod(6));
  CHECK(h.module().invariants() == inv({2}, 0));
  CHECK(order_of(h.module()) == oracle::count_homs_from_cyclic(4, {{6}}));
  CHECK(hom_group(free_z(1), zmod(6)).module().isomorphic_to(zmod(6)));
  CHECK(hom_group(free_z(1), FpModule::from_invariants(Z, {Integer(2)}, 2)).module().invariants() == inv({2}, 2));
  CHECK(hom_group(zmod(2), free_z(1)).module().is_zero());
  CHECK_THROWS_AS(hom_group(FpModule::free(RingTag::RationalPolynomials, 1), FpModule::free(RingTag::RationalPolynomials, 1)),
                  UnsupportedRing);

  for (long a = 1; a <= 8; ++a)
    for (long b1 = 1; b1 <= 6; ++b1)
      for (long b2 : {1L, 2L, 3L}) {
        FpModule target(Matrix::integers({{b1, 0}, {0, b2}}));
        auto hg = hom_group(zmod(a), target);
        REQUIRE(order_of(hg.module()) == oracle::count_homs_from_cyclic(a, {{b1, b2}}));
      }
}

TEST_CASE("hom group elements convert to morphisms and back") {
  FpModule m = FpModule::from_invariants(Z, {Integer(2)}, 1);
  FpModule n = FpModule::from_invariants(Z, {Integer(4)}, 1);
  auto h = hom_group(m, n);
  for (std::size_t k = 0; k < h.module().generators(); ++k) {
    FpMorphism g = h.generator(k);
    Matrix c = h.coordinates(g);
    Matrix e = Matrix::zero(Z, h.module().generators(), 1);
    e.set(k, 0, Element(Integer(1)));
    CHECK(solve_lift(h.module().presentation(), c - e).has_value());
  }
  // A morphism that is zero as a map has zero coordinates modulo relations.
  Matrix zc = h.coordinates(FpMorphism::zero(m, n));
  CHECK(solve_lift(h.module().presentation(), zc).has_value());
}

TEST_CASE("torsion decomposition") {
  auto d = torsion_decompose(FpModule::from_invariants(Z, {Integer(4)}, 1));
  CHECK(d.torsion.invariants() == inv({4}, 0));
  CHECK(d.quotient.invariants() == inv({}, 1));
  CHECK(is_short_exact(d.inclusion, d.projection));
  CHECK(torsion_decompose(free_z(3)).torsion.is_zero());
  auto e = torsion_decompose(FpModule(Matrix::integers({{2, 1}, {0, 2}})));
  CHECK(e.torsion.invariants() == inv({4}, 0));
  CHECK(e.quotient.is_zero());
  CHECK(torsion_decompose(e.torsion).torsion.isomorphic_to(e.torsion));
  CHECK_THROWS_AS(torsion_decompose(FpModule::free(RingTag::RationalPolynomials, 1)), UnsupportedRing);
}

TEST_CASE("torsion pair is orthogonal on samples") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto t = torsion_decompose(random_module(rng)).torsion;
    auto y = free_z(rng() % 3);
    REQUIRE(hom_group(t, y).module().is_zero());
  }
}

TEST_CASE("projective resolutions have length at most one") {
  auto r = projective_resolution(zmod(6), 1);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == Matrix::integers({{6}}));
  CHECK(projective_resolution(free_z(2), 0).empty());
  auto r2 = projective_resolution(FpModule(Matrix::integers({{2, 4}, {6, 8}})), 1);
  REQUIRE(r2.size() == 1);
  CHECK(rank(r2[0]) == 2);
  CHECK_THROWS_AS(projective_resolution(zmod(2), 0), ResolutionTooLong);
  // Redundant relations are pruned to an injective map.
  FpModule redundant(Matrix::integers({{2, 4, 0}}));
  auto r3 = projective_resolution(redundant, 1);
  REQUIRE(r3.size() == 1);
  CHECK(kernel_matrix(r3[0]).cols() == 0);
}

TEST_CASE("kernel and cokernel universal properties on random diagrams") {
  std::mt19937_64 rng(17);
  int tested = 0;
  for (int trial = 0; trial < 120; ++trial) {
    FpModule a = random_module(rng), b = random_module(rng), c = random_module(rng);
    auto f = random_morphism(rng, a, b);
    if (!f) continue;
    auto k = kernel(*f);
    REQUIRE(is_zero(*f * k.inclusion));
    REQUIRE(is_mono(k.inclusion));
    auto q = cokernel(*f);
    REQUIRE(is_zero(q.projection * *f));
    REQUIRE(is_epi(q.projection));
    // g : C -> A with f g = 0 factors through the kernel.
    auto g = random_morphism(rng, c, a);
    if (g && is_zero(*f * *g)) {
      auto h = lift_along(k.inclusion, *g);
      REQUIRE(h);
      REQUIRE(morphism_equal(k.inclusion * *h, *g));
    }
    // The inclusion of the kernel itself always factors, uniquely.
    auto self = lift_along(k.inclusion, k.inclusion);
    REQUIRE(self);
    REQUIRE(morphism_equal(*self, FpMorphism::identity(k.module)));
    auto e = extend_along(q.projection, q.projection);
    REQUIRE(e);
    REQUIRE(morphism_equal(*e, FpMorphism::identity(q.module)));
    ++tested;
  }
  CHECK(tested > 50);
}

TEST_CASE("subgroups of free groups are free") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    FpModule a = free_z(rng() % 4), b = free_z(rng() % 4);
    Matrix g = to_matrix(oracle::random_grid(rng, b.generators(), a.generators(), 6), a.generators());
    auto k = kernel(FpMorphism::from_matrix(a, b, g));
    REQUIRE(k.module.is_relation_free());
  }
}

TEST_CASE("pullback, pushout, direct sums and images") {
  auto ds = direct_sum(zmod(2), zmod(3));
  CHECK(ds.module.isomorphic_to(zmod(6)));
  CHECK(morphism_equal(ds.project_first * ds.inject_first, FpMorphism::identity(zmod(2))));
  CHECK(is_zero(ds.project_second * ds.inject_first));

  auto p = FpMorphism::from_matrix(free_z(1), zmod(4), Matrix::integers({{1}}));
  auto i = FpMorphism::from_matrix(zmod(2), zmod(4), Matrix::integers({{2}}));
  auto pb = pullback(p, i);
  CHECK(pb.module.invariants() == inv({}, 1));
  CHECK(morphism_equal(p * pb.to_first, i * pb.to_second));

  auto po = pushout(i, FpMorphism::zero(zmod(2), free_z(1)));
  CHECK(po.module.invariants() == inv({2}, 1));

  auto im = image(FpMorphism::from_matrix(zmod(4), zmod(4), Matrix::integers({{2}})));
  CHECK(im.module.invariants() == inv({2}, 0));
  CHECK(is_epi(im.epi));
  CHECK(is_mono(im.mono));

  auto iso = FpMorphism::from_matrix(zmod(5), zmod(5), Matrix::integers({{2}}));
  auto invs = inverse(iso);
  REQUIRE(invs);
  CHECK(morphism_equal(*invs * iso, FpMorphism::identity(zmod(5))));
  CHECK_FALSE(inverse(p).has_value());
}

TEST_CASE("modules over Q[x]") {
  Polynomial x = Polynomial::x();
  Polynomial xm1 = x - Polynomial::monomial(Rational(1), 0);
  const RingTag Q = RingTag::RationalPolynomials;
  FpModule m(Matrix::from_elements(Q, 2, 2, {Element(x), Element(Polynomial()), Element(Polynomial()), Element(xm1)}));
  CHECK(m.invariants().torsion.size() == 1);
  CHECK(m.invariants().free_rank == 0);
  auto d = torsion_split(FpModule::from_invariants(Q, {Element(x)}, 1));
  CHECK(d.torsion.invariants().torsion.size() == 1);
  CHECK(d.quotient.invariants().free_rank == 1);
}
