#include "tiltlab/verify.hpp"

#include "tiltlab/freyd.hpp"
#include "tiltlab/linalg.hpp"
#include "tiltlab/serialize.hpp"
#include "tiltlab/tstructure.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace tiltlab {

const char* const kSamplingVersion = "tiltlab-sampling/1";
const char* const kSamplingDescription =
    "matrix entries uniform in [-max_entry, max_entry]; ranks and matrix sizes uniform in [0, max_rank] "
    "(linear algebra: [1, max_rank]); complex widths uniform in [1, max_width]; polynomial entries of degree "
    "<= 2 with integer coefficients in the entry range; sample k of a run with seed s uses mt19937_64 seeded "
    "by splitmix64(splitmix64(s) xor k)";

namespace {

const ExactStructure kFreeSplit{Carrier::FreeZ, Flavor::Split};
const ExactStructure kFreeMaximal{Carrier::FreeZ, Flavor::Maximal};
const ExactStructure kFpMaximal{Carrier::FpZ, Flavor::Maximal};
const ExactStructure kFpSplit{Carrier::FpZ, Flavor::Split};
const ExactStructure kTorsion{Carrier::TorsionClassZ, Flavor::Inherited};

Complex sample_window(Sampler& s, bool free) {
  const int width = static_cast<int>(s.count(1, static_cast<std::size_t>(s.bounds().max_width)));
  Complex x = free ? s.free_complex(0, width) : s.fp_complex(0, width);
  const int d = static_cast<int>(s.integer(x.lo(), x.hi()));
  return shift(x, d + static_cast<int>(s.integer(-1, 1)));
}

// ------------------------------------------------------------ linear algebra

Matrix polynomial_matrix(Sampler& s, std::size_t rows, std::size_t cols) {
  std::vector<Element> entries;
  const long b = s.bounds().max_entry;
  for (std::size_t k = 0; k < rows * cols; ++k) {
    std::vector<Rational> coeffs(s.count(0, 3));
    for (auto& c : coeffs) c = Rational(s.integer(-b, b));
    entries.emplace_back(Polynomial(std::move(coeffs)));
  }
  return Matrix::from_elements(RingTag::RationalPolynomials, rows, cols, entries);
}

bool divides(const Element& a, const Element& b) {
  if (const auto* x = std::get_if<Integer>(&a)) return *x != 0 ? std::get<Integer>(b) % *x == 0 : std::get<Integer>(b) == 0;
  const auto& p = std::get<Polynomial>(a);
  if (p.is_zero()) return std::get<Polynomial>(b).is_zero();
  return Polynomial::divmod(std::get<Polynomial>(b), p).second.is_zero();
}

CheckReport smith_suite(const SuiteContext& c) {
  CheckReport r{"Smith normal form over " + std::string(to_string(c.ring)), {}};
  auto& identity = r.property("transform identity");
  auto& chain = r.property("divisibility chain");
  auto& units = r.property("unimodular transforms");
  for (std::size_t k = 0; k < c.budget; ++k) {
    const std::uint64_t sd = sample_seed(c.seed, k);
    Sampler s(sd, c.bounds);
    const std::size_t rows = s.count(1, c.bounds.max_rank), cols = s.count(1, c.bounds.max_rank);
    Matrix m = c.ring == RingTag::Integers ? s.matrix(rows, cols) : polynomial_matrix(s, rows, cols);
    SmithForm f = smith_normal_form(m);
    auto payload = [&] { return Json{{"matrix", to_json(m)}}; };

    bool diagonal = f.U * m * f.V == f.D;
    for (std::size_t i = 0; i < f.D.rows() && diagonal; ++i)
      for (std::size_t j = 0; j < f.D.cols() && diagonal; ++j)
        if (i != j && !element_is_zero(f.D.at(i, j))) diagonal = false;
    identity.record_with(diagonal, sd, "U M V is not the diagonal D", payload);

    const auto d = f.diagonal();
    bool divisible = d.size() == f.rank && f.rank == rank(m);
    for (std::size_t i = 0; i + 1 < d.size() && divisible; ++i) divisible = divides(d[i], d[i + 1]);
    for (std::size_t i = f.rank; i < std::min(f.D.rows(), f.D.cols()) && divisible; ++i)
      divisible = element_is_zero(f.D.at(i, i));
    chain.record_with(divisible, sd, "diagonal entries do not form a divisibility chain", payload);

    const bool inverses = f.U * f.U_inv == Matrix::identity(c.ring, rows) &&
                          f.U_inv * f.U == Matrix::identity(c.ring, rows) &&
                          f.V * f.V_inv == Matrix::identity(c.ring, cols) && f.V_inv * f.V == Matrix::identity(c.ring, cols);
    units.record_with(inverses, sd, "U or V is not invertible over the ring", payload);
  }
  return r;
}

// ------------------------------------------------------------ fp modules

CheckReport universal_suite(const SuiteContext& c) {
  CheckReport r{"kernels and cokernels of fp-Z modules", {}};
  auto& ker_exist = r.property("kernel factorization exists");
  auto& ker_unique = r.property("kernel factorization is unique");
  auto& coker_exist = r.property("cokernel factorization exists");
  auto& coker_unique = r.property("cokernel factorization is unique");
  auto& obstruction = r.property("no factorization without vanishing");
  for (std::size_t k = 0; k < c.budget; ++k) {
    const std::uint64_t sd = sample_seed(c.seed, k);
    Sampler s(sd, c.bounds);
    FpModule a = s.module(), b = s.module(), t = s.module();
    FpMorphism f = s.morphism(a, b);
    auto payload = [&] { return Json{{"map", to_json(f)}, {"test object", to_json(t)}}; };

    // g = incl h satisfies f g = 0, so it must factor through the kernel.
    KernelResult ker = kernel(f);
    FpMorphism g = ker.inclusion * s.morphism(t, ker.module);
    auto u = lift_along(ker.inclusion, g);
    ker_exist.record_with(u && morphism_equal(ker.inclusion * *u, g) && is_zero(f * ker.inclusion), sd,
                          "f g = 0 but g does not factor through ker f", payload);
    if (u) {
      FpMorphism v = *u + s.morphism(t, ker.module);
      const bool same = morphism_equal(ker.inclusion * v, g);
      ker_unique.record_with(!same || morphism_equal(v, *u), sd, "two different factorizations through ker f", payload);
    }

    CokernelResult cok = cokernel(f);
    FpMorphism h = s.morphism(cok.module, t) * cok.projection;
    auto w = extend_along(cok.projection, h);
    coker_exist.record_with(w && morphism_equal(*w * cok.projection, h) && is_zero(cok.projection * f), sd,
                            "h f = 0 but h does not factor through coker f", payload);
    if (w) {
      FpMorphism v = *w + s.morphism(cok.module, t);
      const bool same = morphism_equal(v * cok.projection, h);
      coker_unique.record_with(!same || morphism_equal(v, *w), sd, "two different factorizations through coker f",
                               payload);
    }

    // An arbitrary g : T -> A factors through ker f exactly when f g = 0.
    FpMorphism g2 = s.morphism(t, a);
    obstruction.record_with(lift_along(ker.inclusion, g2).has_value() == is_zero(f * g2), sd,
                            "factorization through ker f disagrees with f g = 0", payload);
  }
  return r;
}

CheckReport global_dimension_suite(const SuiteContext& c) {
  const ExactStructure ex = c.ex.value_or(kFreeSplit);
  const TStructureSpec left = TStructureSpec::left(ex), right = TStructureSpec::right(ex);
  CheckReport r{"projective dimension and aisle inclusion on " + ex.to_string(), {}};
  auto& length = r.property("resolution length at most 1");
  auto& inclusion = r.property("right aisle shifted by one inside left aisle");
  for (std::size_t k = 0; k < c.budget; ++k) {
    const std::uint64_t sd = sample_seed(c.seed, k);
    Sampler s(sd, c.bounds);
    FpModule m = s.module();
    bool ok = false;
    try {
      const auto res = projective_resolution(m, 1);
      if (res.empty()) ok = m.is_free();
      else ok = res.size() == 1 && kernel_matrix(res[0]).cols() == 0 && FpModule(res[0]).isomorphic_to(m);
    } catch (const ResolutionTooLong&) {
      ok = false;
    }
    length.record_with(ok, sd, "no free resolution of length <= 1 for " + m.to_string(),
                       [&] { return Json{{"module", to_json(m)}}; });

    Complex x = sample_window(s, true);
    Complex a = truncate_le(right, -1, x).complex;
    inclusion.record_with(in_aisle(left, a), sd, "right truncation at -1 is not in the left aisle",
                          [&] { return Json{{"x", to_json(x)}}; });
  }
  return r;
}

// ------------------------------------------------------------ t-structures

CheckReport axioms_suite(const TStructureSpec& spec, const SuiteContext& c) {
  return check_tstructure_axioms(spec, c.budget, c.seed, c.bounds);
}

CheckReport heart_identification_suite(const SuiteContext& c) {
  const TStructureSpec left = TStructureSpec::left(kFreeSplit);
  CheckReport r{"left heart on free abelian groups versus fp-Z modules", {}};
  auto& objects = r.property("object round trip");
  auto& membership = r.property("image lies in the heart");
  auto& maps = r.property("morphism round trip");
  auto& bijection = r.property("hom comparison is bijective");
  for (std::size_t k = 0; k < c.budget; ++k) {
    const std::uint64_t sd = sample_seed(c.seed, k);
    Sampler s(sd, c.bounds);
    FpModule m = s.module();
    Complex x = module_to_heart(m);
    auto payload = [&] { return Json{{"module", to_json(m)}}; };
    objects.record_with(heart_to_module(x).invariants() == m.invariants() && is_iso(heart_unit(m)), sd,
                        "invariant factors of " + m.to_string() + " not recovered", payload);
    membership.record_with(heart_membership(left, x), sd, "module complex outside the heart", payload);
    if (2 * k >= c.budget) continue;

    FpModule n = s.module();
    auto pair = [&] { return Json{{"source", to_json(m)}, {"target", to_json(n)}}; };
    FpMorphism u = s.morphism(m, n);
    FpMorphism back = heart_map_to_module(module_map_to_heart(u));
    maps.record_with(morphism_equal(back * heart_unit(m), heart_unit(n) * u), sd,
                     "module map not recovered from its chain map", pair);
    bijection.record_with(is_iso(heart_hom_comparison(m, n)), sd,
                          "Hom(" + m.to_string() + ", " + n.to_string() + ") not matched", pair);
  }
  return r;
}

CheckReport heart_intersection_suite(const SuiteContext& c) {
  const TStructureSpec left = TStructureSpec::left(kFreeSplit), right = TStructureSpec::right(kFreeSplit);
  CheckReport r{"intersection of the left and right hearts", {}};
  auto& constructed = r.property("constructed objects normalize to free stalks");
  auto& random = r.property("random objects in both hearts are free stalks");
  auto& stalks = r.property("free stalks lie in both hearts");
  auto& ext = r.property("no extensions between free stalks");
  for (std::size_t k = 0; k < c.budget; ++k) {
    const std::uint64_t sd = sample_seed(c.seed, k);
    Sampler s(sd, c.bounds);

    // F[0] plus a split exact complex in a random basis.
    FpModule f = s.free_module();
    const int width = static_cast<int>(s.count(1, static_cast<std::size_t>(c.bounds.max_width)));
    Complex x = direct_sum(Complex::stalk(f, 0), s.exact_free_complex(static_cast<int>(s.integer(-2, 0)), width));
    auto nf = intersection_normal_form(left, right, x);
    constructed.record_with(nf && nf->is_free() && nf->isomorphic_to(f), sd, "F[0] plus a contractible complex",
                            [&] { return Json{{"x", to_json(x)}}; });

    Complex y = sample_window(s, true);
    auto ny = intersection_normal_form(left, right, y);
    bool ok = true;
    if (ny) ok = ny->is_free() && derived_isomorphic(y, Complex::stalk(*ny, 0));
    random.record_with(ok, sd, "object in both hearts is not a free stalk", [&] { return Json{{"x", to_json(y)}}; });

    Complex st = Complex::stalk(f, 0);
    stalks.record_with(heart_membership(left, st) && heart_membership(right, st), sd,
                       "stalk of rank " + std::to_string(f.generators()) + " rejected",
                       [&] { return Json{{"module", to_json(f)}}; });
    if (2 * k >= c.budget) continue;
    Complex z = Complex::stalk(FpModule::free(RingTag::Integers, 1), 0);
    ext.record_with(derived_hom(st, z, 1).is_zero(), sd, "Hom(F[0], Z[1]) is nonzero",
                    [&] { return Json{{"module", to_json(f)}}; });
  }
  return r;
}

CheckReport hrs_consistency_suite(const SuiteContext& c) {
  const TStructureSpec hrs = TStructureSpec::hrs_tilt(), natural = TStructureSpec::natural();
  CheckReport r{"tilted aisle versus one-step star aisle", {}};
  auto& agree = r.property("star membership agrees with the tilted aisle");
  auto& decomposition = r.property("heart objects split by the tilted torsion pair");
  auto& orthogonal = r.property("tilted torsion pair is orthogonal");
  for (std::size_t k = 0; k < c.budget; ++k) {
    const std::uint64_t sd = sample_seed(c.seed, k);
    Sampler s(sd, c.bounds);
    Complex x = sample_window(s, false);
    auto payload = [&] { return Json{{"x", to_json(x)}}; };
    agree.record_with(star_membership(x, ClassTag::Torsion, 1).has_value() == in_aisle(hrs, x), sd,
                      "star membership and tilted aisle disagree", payload);
    if (2 * k >= c.budget) continue;

    // A heart object: the tilted truncations to degree 0.
    Complex h = truncate_ge(hrs, 0, truncate_le(hrs, 0, x).complex).complex;
    Complex tors = truncate_le(natural, -1, h).complex;
    Complex free = truncate_ge(natural, 0, h).complex;
    const bool ok = heart_membership(hrs, h) && cohomology(h, -1).is_free() && cohomology(h, 0).is_torsion() &&
                    heart_membership(hrs, tors) && heart_membership(hrs, free) &&
                    approximating_triangle(natural, shift(h, -1)).valid();
    decomposition.record_with(ok, sd, "heart object does not split as H^-1[1] -> X -> H^0[0]", payload);
    orthogonal.record_with(hom_vanishes(natural, tors, free), sd, "nonzero map from H^-1[1] to H^0[0]", payload);
  }
  return r;
}

CheckReport tilting_suite(ClassTag cls, TiltMode mode, int n, const SuiteContext& c) {
  return tilting_class_check(cls, mode, n, c.budget, c.seed, c.bounds);
}

CheckReport acyclicity_suite(const SuiteContext& c) {
  const ExactStructure ex = c.ex.value_or(kFreeSplit);
  CheckReport r{"acyclicity of bounded free complexes", {}};
  auto& agree = r.property("exact, contractible and acyclic agree");
  auto& exact_seen = r.property("acyclic samples drawn");
  std::size_t exact_count = 0;
  for (std::size_t k = 0; k < c.budget; ++k) {
    const std::uint64_t sd = sample_seed(c.seed, k);
    Sampler s(sd, c.bounds);
    const int width = static_cast<int>(s.count(1, static_cast<std::size_t>(c.bounds.max_width)));
    Complex x = s.coin() ? s.exact_free_complex(0, width) : s.free_complex(0, width);
    const bool exact = is_exact(x.as_fp()), contractible = is_contractible(x), acyclic = is_acyclic_wrt(x, ex);
    exact_count += exact ? 1 : 0;
    agree.record_with(exact == contractible && contractible == acyclic, sd,
                      "exact=" + std::to_string(exact) + " contractible=" + std::to_string(contractible) +
                          " acyclic=" + std::to_string(acyclic),
                      [&] { return Json{{"x", to_json(x)}}; });
  }
  // A run where every sample is non-exact would be vacuous.
  if (c.budget >= 10) exact_seen.record(exact_count > 0, c.seed, "no acyclic complex was sampled");
  return r;
}

// ------------------------------------------------------------ effaceables

CheckReport serre_suite(const SuiteContext& c, SerreControl control) {
  return serre_closure_check(c.ex.value_or(kFpMaximal), c.budget, c.seed, control, c.bounds);
}

CheckReport auslander_suite(const SuiteContext& c) {
  return auslander_check(c.ex.value_or(kFpMaximal), c.budget, c.seed, c.bounds);
}

std::vector<SuiteInfo> build_registry() {
  using enum ClassTag;
  std::vector<SuiteInfo> r;
  auto add = [&](SuiteInfo s) { r.push_back(std::move(s)); };

  SuiteInfo smith{"linalg.smith", "Smith normal form: U M V = D with invertible U, V and a divisibility chain on D."};
  smith.rings = {RingTag::Integers, RingTag::RationalPolynomials};
  smith.run = smith_suite;
  add(smith);
  add({"fp.universal",
       "Kernels and cokernels of fp-Z modules have the universal property: factorizations exist and are unique.",
       false, {RingTag::Integers}, {}, {}, universal_suite});
  add({"fp.global-dimension",
       "Every fp-Z module has a free resolution of length at most one, so the right aisle shifted by one lies in "
       "the left aisle.",
       false, {RingTag::Integers}, {kFreeSplit, kFreeMaximal}, {kFreeSplit}, global_dimension_suite});
  add({"tstructure.natural", "The standard truncations of fp-Z complexes satisfy the t-structure axioms.", false,
       {RingTag::Integers}, {}, {}, [](const SuiteContext& c) { return axioms_suite(TStructureSpec::natural(), c); }});
  add({"tstructure.left", "Kernel truncations of free complexes satisfy the t-structure axioms up to homotopy.", false,
       {RingTag::Integers}, {kFreeSplit, kFreeMaximal}, {kFreeSplit},
       [](const SuiteContext& c) { return axioms_suite(TStructureSpec::left(c.ex.value_or(kFreeSplit)), c); }});
  add({"tstructure.right", "Cokernel truncations of free complexes satisfy the t-structure axioms up to homotopy.",
       false, {RingTag::Integers}, {kFreeSplit, kFreeMaximal}, {kFreeSplit},
       [](const SuiteContext& c) { return axioms_suite(TStructureSpec::right(c.ex.value_or(kFreeSplit)), c); }});
  add({"tstructure.hrs", "Tilting by the torsion pair (finite, free) gives a t-structure on fp-Z complexes.", false,
       {RingTag::Integers}, {}, {}, [](const SuiteContext& c) { return axioms_suite(TStructureSpec::hrs_tilt(), c); }});
  add({"heart.identification",
       "The left heart on free abelian groups is equivalent to fp-Z modules, on objects and on morphisms.", false,
       {RingTag::Integers}, {}, {}, heart_identification_suite});
  add({"heart.intersection",
       "Objects lying in both the left and the right heart are exactly the free groups placed in degree zero.",
       false, {RingTag::Integers}, {}, {}, heart_intersection_suite});
  add({"hrs.consistency",
       "The tilted aisle agrees with the one-step star aisle of the torsion class, and its heart splits by the "
       "tilted torsion pair.",
       false, {RingTag::Integers}, {}, {}, hrs_consistency_suite});
  add({"tilting.free", "Free groups form a 1-cotilting class of fp-Z modules.", false, {RingTag::Integers}, {}, {},
       [](const SuiteContext& c) { return tilting_suite(Free, TiltMode::Cotilting, 1, c); }});
  add({"tilting.whole", "All of fp-Z is a 2-tilting and 2-cotilting class of itself.", false, {RingTag::Integers}, {},
       {}, [](const SuiteContext& c) {
         CheckReport a = tilting_suite(FpZ, TiltMode::Tilting, 2, c);
         CheckReport b = tilting_suite(FpZ, TiltMode::Cotilting, 2, c);
         CheckReport out{"fp-Z as a 2-tilting and 2-cotilting class", {}};
         for (auto& p : a.properties) out.properties.push_back(p), out.properties.back().property = "tilting: " + p.property;
         for (auto& p : b.properties)
           out.properties.push_back(p), out.properties.back().property = "cotilting: " + p.property;
         for (auto& p : out.properties)
           for (auto& ce : p.counterexamples) ce.property = p.property;
         return out;
       }});
  add({"acyclicity.transfer",
       "A bounded free complex is exact as fp-Z modules iff contractible iff acyclic for the exact structure.", false,
       {RingTag::Integers}, {kFreeSplit, kFreeMaximal}, {kFreeSplit}, acyclicity_suite});
  add({"serre", "Effaceable functors are closed under extensions, admissible subobjects and quotients.", false,
       {RingTag::Integers}, {kFreeSplit, kFreeMaximal, kFpMaximal, kFpSplit, kTorsion},
       {kFreeSplit, kFreeMaximal, kFpMaximal, kFpSplit, kTorsion},
       [](const SuiteContext& c) { return serre_suite(c, SerreControl::Genuine); }});
  add({"auslander",
       "Projecting finitely presented functors to modules kills exactly the effaceables and is full, faithful "
       "and essentially surjective on fractions.",
       false, {RingTag::Integers}, {kFreeSplit, kFreeMaximal, kFpMaximal}, {kFreeSplit, kFpMaximal},
       auslander_suite});
  add({"control.corrupted-tstructure",
       "Control: truncations shifted by one degree must violate orthogonality or the triangle.", true,
       {RingTag::Integers}, {}, {}, [](const SuiteContext& c) { return axioms_suite(TStructureSpec::corrupted(), c); }});
  add({"control.free-cogeneration", "Control: free groups must fail to cogenerate fp-Z (Z/2 has no embedding).", true,
       {RingTag::Integers}, {}, {}, [](const SuiteContext& c) { return tilting_suite(Free, TiltMode::Tilting, 1, c); }});
  add({"control.non-effaceable",
       "Control: starting from a non-effaceable functor, subobjects and quotients must leave the effaceables.",
       true, {RingTag::Integers}, {kFreeSplit, kFreeMaximal, kFpMaximal, kFpSplit, kTorsion}, {kFpMaximal},
       [](const SuiteContext& c) { return serre_suite(c, SerreControl::NonEffaceableMiddle); }});
  return r;
}

// ------------------------------------------------------------ scenario json

template <class T>
T field(const Json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ScenarioError(std::string("scenario: '") + key + "' must be " + what);
  }
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ScenarioError(where + " must be an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) throw ScenarioError(where + ": unknown key '" + key + "'");
}

SamplingBounds bounds_from_json(const Json& j, SamplingBounds b) {
  check_keys(j, {"max_rank", "max_entry", "max_width"}, "bounds");
  if (j.contains("max_rank")) b.max_rank = field<std::size_t>(j, "max_rank", "a non-negative integer");
  if (j.contains("max_entry")) b.max_entry = field<long>(j, "max_entry", "an integer");
  if (j.contains("max_width")) b.max_width = field<int>(j, "max_width", "an integer");
  if (b.max_rank < 1 || b.max_entry < 2 || b.max_width < 1)
    throw ScenarioError("bounds: need max_rank >= 1, max_entry >= 2, max_width >= 1");
  return b;
}

Json bounds_to_json(const SamplingBounds& b) {
  return {{"max_rank", b.max_rank}, {"max_entry", b.max_entry}, {"max_width", b.max_width}};
}

std::optional<ExactStructure> structure_from_json(const Json& j, const std::string& where) {
  const bool has_c = j.contains("carrier"), has_f = j.contains("flavor");
  if (!has_c && !has_f) return std::nullopt;
  if (has_c != has_f) throw ScenarioError(where + ": carrier and flavor must be given together");
  const std::string tag = "carrier=" + field<std::string>(j, "carrier", "a string") +
                          ",flavor=" + field<std::string>(j, "flavor", "a string");
  try {
    return ExactStructure::parse(tag);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(where + ": " + e.what());
  }
}

void structure_to_json(Json& j, const std::optional<ExactStructure>& ex) {
  if (!ex) return;
  j["carrier"] = to_string(ex->carrier);
  j["flavor"] = to_string(ex->flavor);
}

bool contains(const std::vector<ExactStructure>& v, const ExactStructure& ex) {
  return std::find(v.begin(), v.end(), ex) != v.end();
}

std::string format_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << s << "s";
  return out.str();
}

}  // namespace

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> registry = build_registry();
  return registry;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return &s;
  return nullptr;
}

Scenario Scenario::from_json(const Json& j) {
  check_keys(j, {"ring", "carrier", "flavor", "suites", "sample_budget", "seed", "bounds"}, "scenario");
  Scenario s;
  if (j.contains("ring")) {
    try {
      s.ring = ring_from_string(field<std::string>(j, "ring", "a string"));
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("scenario: ") + e.what());
    }
  }
  s.ex = structure_from_json(j, "scenario");
  if (j.contains("sample_budget")) s.sample_budget = field<std::size_t>(j, "sample_budget", "a non-negative integer");
  if (j.contains("seed")) s.seed = field<std::uint64_t>(j, "seed", "an unsigned 64-bit integer");
  if (j.contains("bounds")) s.bounds = bounds_from_json(j.at("bounds"), s.bounds);
  if (j.contains("suites")) {
    const Json& list = j.at("suites");
    if (!list.is_array()) throw ScenarioError("scenario: 'suites' must be an array");
    for (const auto& item : list) {
      SuiteRequest req;
      if (item.is_string()) {
        req.name = item.get<std::string>();
      } else {
        check_keys(item, {"name", "carrier", "flavor", "budget", "bounds"}, "suite entry");
        req.name = field<std::string>(item, "name", "a string");
        req.ex = structure_from_json(item, "suite '" + req.name + "'");
        if (item.contains("budget")) req.budget = field<std::size_t>(item, "budget", "a non-negative integer");
        if (item.contains("bounds")) req.bounds = bounds_from_json(item.at("bounds"), s.bounds);
      }
      if (!find_suite(req.name)) throw ScenarioError("scenario: unknown suite '" + req.name + "'");
      s.suites.push_back(std::move(req));
    }
  }
  return s;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ScenarioError("scenario '" + path + "': " + e.what());
  }
  return from_json(j);
}

Json Scenario::to_json() const {
  Json j = {{"ring", std::string(to_string(ring))},
            {"sample_budget", sample_budget},
            {"seed", seed},
            {"bounds", bounds_to_json(bounds)}};
  structure_to_json(j, ex);
  Json list = Json::array();
  for (const auto& req : suites) {
    Json item = {{"name", req.name}};
    structure_to_json(item, req.ex);
    if (req.budget) item["budget"] = *req.budget;
    if (req.bounds) item["bounds"] = bounds_to_json(*req.bounds);
    list.push_back(std::move(item));
  }
  j["suites"] = list;
  return j;
}

std::vector<SuiteRun> plan(const Scenario& s) {
  std::vector<SuiteRequest> requests = s.suites;
  if (requests.empty())
    for (const auto& info : suite_registry())
      if (!info.control) requests.push_back({info.name, std::nullopt, std::nullopt, std::nullopt});

  std::vector<SuiteRun> runs;
  for (const auto& req : requests) {
    const SuiteInfo* info = find_suite(req.name);
    if (!info) throw ScenarioError("unknown suite '" + req.name + "'");
    if (std::find(info->rings.begin(), info->rings.end(), s.ring) == info->rings.end())
      throw UnsupportedCombination("suite '" + info->name + "' does not run over " + std::string(to_string(s.ring)));
    SuiteContext ctx{s.ring, std::nullopt, req.budget.value_or(s.sample_budget), s.seed, req.bounds.value_or(s.bounds)};

    std::vector<std::optional<ExactStructure>> structures;
    if (info->structures.empty()) {
      if (req.ex) throw UnsupportedCombination("suite '" + info->name + "' takes no exact structure");
      structures.emplace_back();
    } else if (auto ex = req.ex ? req.ex : s.ex) {
      if (!contains(info->structures, *ex))
        throw UnsupportedCombination("suite '" + info->name + "' does not support " + ex->to_string());
      structures.emplace_back(ex);
    } else {
      for (const auto& d : info->default_structures) structures.emplace_back(d);
    }
    for (const auto& ex : structures) {
      ctx.ex = ex;
      runs.push_back({info, ctx});
    }
  }
  return runs;
}

std::size_t SuiteResult::samples() const {
  std::size_t n = 0;
  for (const auto& p : report.properties) n += p.samples;
  return n;
}

std::size_t SuiteResult::failures() const {
  std::size_t n = 0;
  for (const auto& p : report.properties) n += p.failures;
  return n;
}

bool RunReport::passed() const { return failures() == 0; }

std::size_t RunReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.failures();
  return n;
}

Json RunReport::to_json() const {
  Json suites = Json::array();
  for (const auto& r : results) {
    const SuiteContext& c = r.run.context;
    Json item = {{"name", r.run.suite->name},
                 {"statement", r.run.suite->statement},
                 {"control", r.run.suite->control},
                 {"ring", std::string(to_string(c.ring))},
                 {"exact_structure", c.ex ? Json(c.ex->to_string()) : Json()},
                 {"seed", c.seed},
                 {"budget", c.budget},
                 {"bounds", bounds_to_json(c.bounds)},
                 {"samples", r.samples()},
                 {"failures", r.failures()},
                 {"passed", r.failures() == 0},
                 {"wall_time_seconds", r.wall_seconds},
                 {"report", tiltlab::to_json(r.report)}};
    suites.push_back(std::move(item));
  }
  return {{"format_version", 1},
          {"sampling", {{"version", kSamplingVersion}, {"description", kSamplingDescription}}},
          {"scenario", scenario.to_json()},
          {"passed", passed()},
          {"failures", failures()},
          {"wall_time_seconds", wall_seconds},
          {"suites", suites}};
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "tiltlab report (" << kSamplingVersion << ", seed " << scenario.seed << ")\n";
  for (const auto& r : results) {
    const SuiteContext& c = r.run.context;
    out << "\n== " << r.run.suite->name;
    if (c.ex) out << " [" << c.ex->to_string() << "]";
    if (c.ring != RingTag::Integers) out << " [" << to_string(c.ring) << "]";
    out << "\n   " << r.run.suite->statement << "\n";
    for (const auto& p : r.report.properties) {
      out << "   " << (p.passed() ? "ok  " : "FAIL") << " " << p.property << " (" << p.samples << " samples";
      if (!p.passed()) out << ", " << p.failures << " failed";
      out << ")\n";
      if (!p.counterexamples.empty())
        out << "        first counterexample: sample seed " << p.counterexamples.front().seed << ": "
            << p.counterexamples.front().detail << "\n";
    }
    out << "   " << (r.failures() == 0 ? "PASS" : "FAIL") << " in " << format_seconds(r.wall_seconds) << "\n";
  }
  out << "\n" << (passed() ? "PASS" : "FAIL") << ": " << results.size() << " suite runs, " << failures()
      << " failures, " << format_seconds(wall_seconds) << "\n";
  return out.str();
}

SuiteResult run_suite(const SuiteRun& run) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  try {
    report = run.suite->run(run.context);
  } catch (const std::exception& e) {
    report.subject = run.suite->name;
    report.property("completed").record(false, run.context.seed, e.what());
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {run, std::move(report), elapsed.count()};
}

RunReport run_scenario(const Scenario& s, unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<SuiteRun> runs = plan(s);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(runs.size(), 1)));

  std::vector<std::optional<SuiteResult>> slots(runs.size());
  std::vector<std::exception_ptr> errors(runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        slots[i] = run_suite(runs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunReport report{s, {}, 0};
  for (auto& slot : slots) report.results.push_back(std::move(*slot));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report.wall_seconds = elapsed.count();
  return report;
}

}  // namespace tiltlab
