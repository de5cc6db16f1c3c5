#include "tiltlab/sampling.hpp"
#include "tiltlab/serialize.hpp"

#include <doctest.h>

using namespace tiltlab;

namespace {

const RingTag Z = RingTag::Integers;
const RingTag Q = RingTag::RationalPolynomials;
FpModule fz(std::size_t r) { return FpModule::free(Z, r); }

template <class T, class Load>
T reload(const T& value, Load load) {
  return load(Json::parse(to_json(value).dump()));
}

}  // namespace

TEST_CASE("integer matrices round trip exactly") {
  Integer big("123456789012345678901234567890", 10);
  Matrix m = Matrix::from_elements(Z, 2, 2, {Element(big), Element(Integer(-7)), Element(Integer(0)), Element(-big)});
  Json j = to_json(m);
  CHECK(j["entries"][0][0] == "123456789012345678901234567890");
  CHECK(reload(m, matrix_from_json) == m);
  CHECK(reload(Matrix::zero(Z, 0, 3), matrix_from_json) == Matrix::zero(Z, 0, 3));
  CHECK(reload(Matrix::zero(Z, 2, 0), matrix_from_json).rows() == 2);
}

TEST_CASE("polynomial matrices keep rational coefficients") {
  Polynomial p({Rational(1, 3), Rational(0), Rational(-5, 7)});
  Matrix m = Matrix::from_elements(Q, 1, 2, {Element(p), Element(Polynomial::x())});
  Json j = to_json(m);
  CHECK(j["entries"][0][0] == Json({"1/3", "0", "-5/7"}));
  CHECK(reload(m, matrix_from_json) == m);
}

TEST_CASE("modules, morphisms and complexes round trip") {
  FpModule z6 = FpModule::cyclic(6);
  FpMorphism f = FpMorphism::from_matrix(fz(1), z6, Matrix::integers({{5}}));
  FpMorphism g = reload(f, morphism_from_json);
  CHECK(g.matrix() == f.matrix());
  CHECK(g.witness() == f.witness());
  CHECK(g.target().presentation() == z6.presentation());

  Complex c = Complex::two_term(f, -1);
  Complex d = reload(c, complex_from_json);
  CHECK(d.lo() == -1);
  CHECK(d.hi() == 0);
  CHECK(d.base() == c.base());
  CHECK(d.differential(-1).matrix() == f.matrix());

  ChainMap id = ChainMap::identity(c);
  ChainMap id2 = reload(id, chain_map_from_json);
  CHECK(id2.component(0).matrix() == id.component(0).matrix());
}

TEST_CASE("random complexes survive a round trip") {
  Sampler sampler(2024);
  for (int i = 0; i < 20; ++i) {
    Complex c = i % 2 ? sampler.fp_complex(-1, 3) : sampler.free_complex(0, 4);
    Complex d = complex_from_json(Json::parse(to_json(c).dump()));
    REQUIRE(d.lo() == c.lo());
    REQUIRE(d.hi() == c.hi());
    for (int n = c.lo(); n < c.hi(); ++n) CHECK(d.differential(n).matrix() == c.differential(n).matrix());
  }
}

TEST_CASE("Freyd data and fractions round trip") {
  const ExactStructure fp_max{Carrier::FpZ, Flavor::Maximal};
  FpMorphism two = FpMorphism::from_matrix(fz(1), fz(1), Matrix::integers({{2}}));
  FreydObject apex(two);
  CHECK(reload(apex, freyd_object_from_json).carrier().matrix() == two.matrix());

  FreydObject z2 = FreydObject::representable(FpModule::cyclic(2));
  auto s = FreydMorphism::induced(apex, z2, FpMorphism::from_matrix(fz(1), FpModule::cyclic(2), Matrix::integers({{1}})));
  REQUIRE(s);
  FreydMorphism s2 = reload(*s, freyd_morphism_from_json);
  CHECK(freyd_equal(s2, *s));

  Fraction a = Fraction::from_weak_iso(*s, fp_max);
  Fraction b = reload(a, fraction_from_json);
  CHECK(b.chain().size() == a.chain().size());
  CHECK(quotient_equal(a, b));
}

TEST_CASE("reports round trip with payloads") {
  CheckReport r{"demo", {}};
  r.property("p").record(true, 1, "");
  r.property("p").record(false, 2, "broken", Json{{"k", 3}});
  r.property("q").record(true, 3, "");
  CheckReport s = reload(r, report_from_json);
  CHECK(s.subject == "demo");
  CHECK_FALSE(s.passed());
  REQUIRE(s.properties.size() == 2);
  CHECK(s.properties[0].samples == 2);
  CHECK(s.properties[0].counterexamples[0].payload["k"] == 3);
  CHECK(s.properties[1].passed());
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(matrix_from_json(Json{{"ring", "Z"}}), SerializationError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"ring":"nope","rows":0,"cols":0,"entries":[]})")),
                  SerializationError);
  Json bad = to_json(Matrix::integers({{1, 2}}));
  bad["entries"][0][1] = "2x";
  CHECK_THROWS_AS(matrix_from_json(bad), SerializationError);
  bad["entries"][0][1] = "2";
  bad["cols"] = 3;
  CHECK_THROWS_AS(matrix_from_json(bad), SerializationError);

  // A witness that does not satisfy the defining equation.
  FpMorphism f = FpMorphism::from_matrix(fz(1), FpModule::cyclic(6), Matrix::integers({{5}}));
  Json j = to_json(f);
  j["source"] = to_json(FpModule::cyclic(4));
  j["witness"] = to_json(Matrix::integers({{0}}));
  CHECK_THROWS_AS(morphism_from_json(j), SerializationError);
}
