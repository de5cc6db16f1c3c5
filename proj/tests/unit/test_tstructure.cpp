#include "tiltlab/sampling.hpp"
#include "tiltlab/tstructure.hpp"

#include <doctest.h>

using namespace tiltlab;

namespace {

const RingTag Z = RingTag::Integers;
FpModule fz(std::size_t r) { return FpModule::free(Z, r); }
FpMorphism zmap(long a) { return FpMorphism::from_matrix(fz(1), fz(1), Matrix::integers({{a}})); }
Complex segment(long a, int lo) { return Complex::two_term(zmap(a), lo); }

const TStructureSpec natural = TStructureSpec::natural();
const TStructureSpec left = TStructureSpec::left();
const TStructureSpec right = TStructureSpec::right();
const TStructureSpec hrs = TStructureSpec::hrs_tilt();

}  // namespace

TEST_CASE("spec strings round-trip and reject unsupported combinations") {
  for (const char* s : {"variant=Natural", "variant=Left,carrier=FreeZ,flavor=Split",
                        "variant=Right,carrier=FreeZ,flavor=Maximal", "variant=HRSTilt,pair=torsion/free",
                        "variant=StarAisle,class=Torsion,n=1", "variant=StarAisle,class=FpZ,n=3",
                        "variant=CorruptedNatural"}) {
    TStructureSpec spec = TStructureSpec::parse(s);
    CHECK(spec.to_string() == s);
    CHECK(TStructureSpec::parse(spec.to_string()) == spec);
  }
  CHECK_THROWS_AS(TStructureSpec::parse("variant=StarAisle,class=Torsion,n=2"), UnsupportedSpec);
  CHECK_THROWS_AS(TStructureSpec::parse("variant=StarAisle,class=Free,n=1"), UnsupportedSpec);
  CHECK_THROWS_AS(TStructureSpec::parse("variant=Left,carrier=FpZ,flavor=Maximal"), UnsupportedSpec);
  CHECK_THROWS_AS(TStructureSpec::parse("variant=Bogus"), std::invalid_argument);
  CHECK_THROWS_AS(TStructureSpec::parse("variant=Left"), std::invalid_argument);
}

TEST_CASE("left truncation of [Z -2-> Z] in degrees 0, 1 vanishes at n = 0") {
  Complex x = segment(2, 0);
  Truncation t = truncate_le(left, 0, x);
  CHECK(is_zero_object(left, t.complex));
  CHECK(t.complex.object(0).is_zero());
  // The natural truncation keeps nothing either, but the cone differs: X is
  // not exact, so X is in neither natural half on its own.
  CHECK(cohomology(truncate_le(natural, 0, x).complex, 0).is_zero());
  CHECK(cohomology(x, 1).isomorphic_to(FpModule::cyclic(2)));
}

TEST_CASE("natural truncations split Z[0] + (Z/2)[-1]") {
  Complex x = direct_sum(Complex::stalk(fz(1), 0), Complex::stalk(FpModule::cyclic(2), -1));
  Truncation le = truncate_le(natural, -1, x);
  Truncation ge = truncate_ge(natural, 0, x);
  CHECK(cohomology(le.complex, -1).isomorphic_to(FpModule::cyclic(2)));
  CHECK(cohomology(le.complex, 0).is_zero());
  CHECK(cohomology(ge.complex, 0).isomorphic_to(fz(1)));
  CHECK(cohomology(ge.complex, -1).is_zero());
  CHECK(is_quasi_isomorphism(le.map) == false);
  CHECK(is_exact(cone(ge.map * le.map).complex) == false);
  CHECK(approximating_triangle(natural, shift(x, -1)).valid());
}

TEST_CASE("HRS truncation of (Z + Z/4)[0] keeps the torsion in the aisle") {
  FpModule m = direct_sum(fz(1), FpModule::cyclic(4)).module;
  Complex x = Complex::stalk(m, 0);
  Truncation le = truncate_le(hrs, 0, x);
  Truncation ge = truncate_ge(hrs, 1, x);
  CHECK(cohomology(le.complex, 0).isomorphic_to(FpModule::cyclic(4)));
  CHECK(cohomology(ge.complex, 0).isomorphic_to(fz(1)));
  CHECK(cohomology(ge.complex, -1).is_zero());
  CHECK_FALSE(in_aisle(hrs, x));
  CHECK(in_aisle(hrs, Complex::stalk(FpModule::cyclic(4), 0)));
  CHECK(in_coaisle(hrs, Complex::stalk(fz(1), -1)));
  CHECK(heart_membership(hrs, Complex::stalk(FpModule::cyclic(3), 0)));
  CHECK(heart_membership(hrs, Complex::stalk(fz(2), -1)));
  CHECK_FALSE(heart_membership(hrs, Complex::stalk(fz(1), 0)));
  CHECK(approximating_triangle(hrs, x).valid());
}

TEST_CASE("left and right hearts on FreeZ") {
  Complex c = segment(2, -1);
  CHECK(heart_membership(left, c));
  CHECK_FALSE(heart_membership(right, c));
  CHECK(heart_to_module(c).isomorphic_to(FpModule::cyclic(2)));
  // Free stalks in degree zero lie in both hearts.
  Complex f = Complex::stalk(fz(2), 0);
  CHECK(heart_membership(left, f));
  CHECK(heart_membership(right, f));
  auto nf = intersection_normal_form(left, right, f);
  REQUIRE(nf);
  CHECK(nf->isomorphic_to(fz(2)));
  CHECK_FALSE(intersection_normal_form(left, right, c));
  // Right heart: [Z -2-> Z] in degrees 0, 1.
  CHECK(heart_membership(right, segment(2, 0)));
  CHECK_FALSE(heart_membership(left, segment(2, 0)));
}

TEST_CASE("left and right truncations are approximating triangles") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Sampler s(seed);
    Complex x = s.free_complex(static_cast<int>(s.integer(-2, 0)), static_cast<int>(s.count(1, 4)));
    for (const auto& spec : {left, right}) {
      ApproximatingTriangle tri = approximating_triangle(spec, x);
      CHECK(tri.valid());
      CHECK(in_aisle(spec, tri.a.complex));
      CHECK(in_coaisle(spec, shift(tri.b.complex, 1)));
      CHECK(hom_vanishes(spec, tri.a.complex, tri.b.complex));
    }
  }
}

TEST_CASE("the corrupted pair violates orthogonality") {
  Complex x = Complex::stalk(FpModule::cyclic(3), 1);
  TStructureSpec bad = TStructureSpec::corrupted();
  Complex a = truncate_le(bad, 0, x).complex;
  Complex b = truncate_ge(bad, 1, x).complex;
  CHECK_FALSE(hom_vanishes(bad, a, b));
  CHECK(hom_vanishes(natural, truncate_le(natural, 0, x).complex, truncate_ge(natural, 1, x).complex));
}

TEST_CASE("axiom checks pass for catalogued variants and fail for the control") {
  for (const auto& spec : {natural, left, right, hrs, TStructureSpec::star(ClassTag::FpZ, 2)}) {
    CheckReport r = check_tstructure_axioms(spec, 6, 11);
    CHECK_MESSAGE(r.passed(), spec.to_string());
  }
  CheckReport bad = check_tstructure_axioms(TStructureSpec::corrupted(), 12, 11);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("star aisles") {
  // (Z/4)[0] with Z in degree -1 sits in D^{<=-1} * T.
  Complex x = direct_sum(Complex::stalk(FpModule::cyclic(4), 0), Complex::stalk(fz(1), -1));
  auto d = star_membership(x, ClassTag::Torsion, 1);
  REQUIRE(d);
  REQUIRE(d->factors.size() == 1);
  CHECK(d->factors[0].isomorphic_to(FpModule::cyclic(4)));
  CHECK(cohomology(d->tail.complex, -1).isomorphic_to(fz(1)));
  CHECK_FALSE(star_membership(Complex::stalk(fz(1), 0), ClassTag::Torsion, 1));
  CHECK_FALSE(star_membership(Complex::stalk(FpModule::cyclic(2), 1), ClassTag::FpZ, 2));

  auto e = star_membership(x, ClassTag::FpZ, 2);
  REQUIRE(e);
  CHECK(e->factors[1].isomorphic_to(fz(1)));
  CHECK(is_exact(e->tail.complex));
  CHECK_THROWS_AS(star_membership(x, ClassTag::Torsion, 2), UnsupportedSpec);
  CHECK_THROWS_AS(star_membership(x, ClassTag::Free, 1), UnsupportedSpec);
}

TEST_CASE("tilting classes") {
  CheckReport free_tilt = tilting_class_check(ClassTag::Free, TiltMode::Tilting, 1, 10, 5);
  CHECK_FALSE(free_tilt.property("cogeneration").passed());
  CHECK(free_tilt.property("cogeneration").counterexamples.front().detail.find("Z/2") != std::string::npos);
  CHECK(free_tilt.property("extension closure").passed());
  CHECK(free_tilt.property("kernels").passed());
  CHECK(hom_group(FpModule::cyclic(2), fz(1)).module().is_zero());

  CHECK(tilting_class_check(ClassTag::Free, TiltMode::Cotilting, 1, 10, 5).passed());
  CHECK(tilting_class_check(ClassTag::FpZ, TiltMode::Tilting, 2, 10, 5).passed());
  CHECK(tilting_class_check(ClassTag::FpZ, TiltMode::Cotilting, 2, 10, 5).passed());

  CheckReport tors = tilting_class_check(ClassTag::Torsion, TiltMode::Cotilting, 1, 10, 5);
  CHECK_FALSE(tors.property("generation").passed());
  CHECK(tors.property("extension closure").passed());
  CHECK(tors.property("cokernels").passed());
  CHECK_FALSE(tilting_class_check(ClassTag::Torsion, TiltMode::Tilting, 1, 10, 5).property("cogeneration").passed());
}

TEST_CASE("left heart equivalence on modules") {
  FpModule m(Matrix::integers({{2, 0}, {0, 3}}));
  Complex c = module_to_heart(m);
  CHECK(heart_membership(left, c));
  CHECK(heart_to_module(c).isomorphic_to(FpModule::cyclic(6)));

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sampler s(seed);
    FpModule a = s.module(), b = s.module();
    Complex ca = module_to_heart(a);
    CHECK(heart_membership(left, ca));
    CHECK(heart_to_module(ca).isomorphic_to(a));
    CHECK(is_iso(heart_hom_comparison(a, b)));

    FpMorphism u = s.morphism(a, b);
    ChainMap f = module_map_to_heart(u);
    FpMorphism back = heart_map_to_module(f);
    // H^0 of C(a) is a quotient of the same generators, so u and back agree
    // after identifying both sides with a, b.
    auto to_h = [](const FpModule& m, const FpModule& h) {
      return FpMorphism::from_matrix(m, h, Matrix::identity(Z, m.generators()));
    };
    CohomologyData da = cohomology_data(ca, 0), db = cohomology_data(module_to_heart(b), 0);
    FpMorphism pa = FpMorphism::from_matrix(a, da.classes.module, da.classes.projection.matrix());
    FpMorphism pb = FpMorphism::from_matrix(b, db.classes.module, db.classes.projection.matrix());
    CHECK(morphism_equal(back * pa, pb * u));
    (void)to_h;
  }
}
