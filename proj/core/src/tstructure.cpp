#include "tiltlab/tstructure.hpp"

#include "tiltlab/sampling.hpp"
#include "tiltlab/serialize.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tiltlab {
namespace {

Complex make_complex(RingTag ring, int lo, std::vector<FpModule> objs, std::vector<FpMorphism> diffs) {
  const bool free =
      std::all_of(objs.begin(), objs.end(), [](const FpModule& m) { return m.is_relation_free(); });
  const ComplexBase base = free ? ComplexBase::FreeModules : ComplexBase::FpModules;
  if (objs.empty()) return Complex::zero(ring, base);
  return Complex(base, ring, lo, std::move(objs), std::move(diffs));
}

Truncation identity_truncation(const Complex& x) { return {x, ChainMap::identity(x)}; }

Truncation zero_le(const Complex& x) {
  Complex z = Complex::zero(x.ring(), x.base());
  return {z, ChainMap::zero(z, x)};
}

Truncation zero_ge(const Complex& x) {
  Complex z = Complex::zero(x.ring(), x.base());
  return {z, ChainMap::zero(x, z)};
}

// ... X^{n-1} -> K at degree n, where incl : K -> X^n is a subobject of the
// cycles.
Truncation sub_truncation(const Complex& x, int n, const FpMorphism& incl) {
  std::vector<FpModule> objs;
  std::vector<FpMorphism> diffs, comps;
  for (int k = x.lo(); k < n; ++k) {
    objs.push_back(x.object(k));
    comps.push_back(FpMorphism::identity(x.object(k)));
    if (k < n - 1) diffs.push_back(x.differential(k));
  }
  if (n - 1 >= x.lo()) {
    auto lift = lift_along(incl, x.differential(n - 1));
    if (!lift) throw std::logic_error("truncation: boundaries do not land in the chosen subobject");
    diffs.push_back(*lift);
  }
  objs.push_back(incl.source());
  comps.push_back(incl);
  Complex t = make_complex(x.ring(), x.lo(), std::move(objs), std::move(diffs));
  return {t, ChainMap(t, x, x.lo(), std::move(comps))};
}

// proj : X^n ->> Q at degree n followed by X^{n+1}, ... ; proj kills the
// image of d^{n-1}.
Truncation quotient_truncation(const Complex& x, int n, const FpMorphism& proj) {
  std::vector<FpModule> objs{proj.target()};
  std::vector<FpMorphism> diffs, comps{proj};
  if (n + 1 <= x.hi()) {
    auto ext = extend_along(proj, x.differential(n));
    if (!ext) throw std::logic_error("truncation: differential does not factor through the quotient");
    diffs.push_back(*ext);
  }
  for (int k = n + 1; k <= x.hi(); ++k) {
    objs.push_back(x.object(k));
    comps.push_back(FpMorphism::identity(x.object(k)));
    if (k < x.hi()) diffs.push_back(x.differential(k));
  }
  Complex t = make_complex(x.ring(), n, std::move(objs), std::move(diffs));
  return {t, ChainMap(x, t, n, std::move(comps))};
}

Truncation natural_le(const Complex& x, int n) {
  if (n >= x.hi()) return identity_truncation(x);
  if (n < x.lo()) return zero_le(x);
  return sub_truncation(x, n, kernel(x.differential(n)).inclusion);
}

Truncation natural_ge(const Complex& x, int n) {
  if (n <= x.lo()) return identity_truncation(x);
  if (n > x.hi()) return zero_ge(x);
  return quotient_truncation(x, n, cokernel(x.differential(n - 1)).projection);
}

Truncation left_le(const Complex& x, int n, const ExactStructure& ex) {
  if (n >= x.hi()) return identity_truncation(x);
  if (n < x.lo()) return zero_le(x);
  return sub_truncation(x, n, e_kernel(x.differential(n), ex).inclusion);
}

// Ker_E d^{m-1} in degree m - 2, then X^{m-1}, X^m, ...
Truncation left_ge(const Complex& x, int m, const ExactStructure& ex) {
  if (m <= x.lo()) return identity_truncation(x);
  if (m - 1 > x.hi()) return zero_ge(x);
  KernelResult k = e_kernel(x.differential(m - 1), ex);
  std::vector<FpModule> objs{k.module};
  std::vector<FpMorphism> diffs{k.inclusion};
  auto into_kernel = lift_along(k.inclusion, x.differential(m - 2));
  if (!into_kernel) throw std::logic_error("left truncation: d^{m-2} does not factor through the kernel");
  std::vector<FpMorphism> comps{*into_kernel};
  for (int j = m - 1; j <= x.hi(); ++j) {
    objs.push_back(x.object(j));
    comps.push_back(FpMorphism::identity(x.object(j)));
    if (j < x.hi()) diffs.push_back(x.differential(j));
  }
  Complex t = make_complex(x.ring(), m - 2, std::move(objs), std::move(diffs));
  return {t, ChainMap(x, t, m - 2, std::move(comps))};
}

// ... X^n, X^{n+1}, Coker_E d^n in degree n + 2.
Truncation right_le(const Complex& x, int n, const ExactStructure& ex) {
  if (n >= x.hi()) return identity_truncation(x);
  if (n + 1 < x.lo()) return zero_le(x);
  CokernelResult c = e_cokernel(x.differential(n), ex);
  std::vector<FpModule> objs;
  std::vector<FpMorphism> diffs, comps;
  for (int k = x.lo(); k <= n + 1; ++k) {
    objs.push_back(x.object(k));
    comps.push_back(FpMorphism::identity(x.object(k)));
    diffs.push_back(k <= n ? x.differential(k) : c.projection);
  }
  objs.push_back(c.module);
  auto out = extend_along(c.projection, x.differential(n + 1));
  if (!out) throw std::logic_error("right truncation: d^{n+1} does not factor through the cokernel");
  comps.push_back(*out);
  Complex t = make_complex(x.ring(), x.lo(), std::move(objs), std::move(diffs));
  return {t, ChainMap(t, x, x.lo(), std::move(comps))};
}

Truncation right_ge(const Complex& x, int n, const ExactStructure& ex) {
  if (n <= x.lo()) return identity_truncation(x);
  if (n > x.hi()) return zero_ge(x);
  return quotient_truncation(x, n, e_cokernel(x.differential(n - 1), ex).projection);
}

// Preimage in ker d^n of the torsion part of H^n.
FpMorphism torsion_cycles(const Complex& x, int n) {
  CohomologyData cd = cohomology_data(x, n);
  TorsionDecomposition t = torsion_split(cd.classes.module);
  Pullback pb = pullback(cd.classes.projection, t.inclusion);
  return cd.cycles.inclusion * pb.to_first;
}

Truncation hrs_le(const Complex& x, int n) {
  if (n > x.hi()) return identity_truncation(x);
  if (n < x.lo()) return zero_le(x);
  return sub_truncation(x, n, torsion_cycles(x, n));
}

Truncation hrs_ge(const Complex& x, int n) {
  if (n <= x.lo()) return identity_truncation(x);
  if (n - 1 > x.hi()) return zero_ge(x);
  return quotient_truncation(x, n - 1, cokernel(torsion_cycles(x, n - 1)).projection);
}

bool uses_hrs(const TStructureSpec& spec) {
  return spec.variant == TVariant::HRSTilt || (spec.variant == TVariant::StarAisle && spec.star_class == ClassTag::Torsion);
}

void require_ambient(const TStructureSpec& spec, const Complex& x) {
  spec.validate();
  if (spec.on_homotopy_category()) {
    if (!x.is_free_entried()) throw NonFreeEntries("left/right truncation needs a complex of free modules");
    if (!spec.ex.contains(FpModule::zero(x.ring())))
      throw RingMismatch("complex ring does not match the exact structure's carrier");
  } else if (x.ring() != RingTag::Integers && spec.variant != TVariant::Natural) {
    throw UnsupportedRing("this t-structure is defined on complexes over the integers");
  }
}

std::string value_of(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("t-structure config: missing key '" + key + "'");
  return it->second;
}

}  // namespace

std::string to_string(TVariant v) {
  switch (v) {
    case TVariant::Natural: return "Natural";
    case TVariant::Left: return "Left";
    case TVariant::Right: return "Right";
    case TVariant::HRSTilt: return "HRSTilt";
    case TVariant::StarAisle: return "StarAisle";
    case TVariant::CorruptedNatural: return "CorruptedNatural";
  }
  return "?";
}

std::string to_string(ClassTag c) {
  switch (c) {
    case ClassTag::FpZ: return "FpZ";
    case ClassTag::Free: return "Free";
    case ClassTag::Torsion: return "Torsion";
  }
  return "?";
}

ClassTag class_from_string(const std::string& s) {
  for (ClassTag c : {ClassTag::FpZ, ClassTag::Free, ClassTag::Torsion})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown class tag '" + s + "'");
}

std::string to_string(TiltMode m) { return m == TiltMode::Tilting ? "tilting" : "cotilting"; }

// ----------------------------------------------------------------- the spec

TStructureSpec TStructureSpec::left(ExactStructure ex) {
  TStructureSpec s;
  s.variant = TVariant::Left;
  s.ex = ex;
  return s;
}

TStructureSpec TStructureSpec::right(ExactStructure ex) {
  TStructureSpec s;
  s.variant = TVariant::Right;
  s.ex = ex;
  return s;
}

TStructureSpec TStructureSpec::hrs_tilt() {
  TStructureSpec s;
  s.variant = TVariant::HRSTilt;
  return s;
}

TStructureSpec TStructureSpec::star(ClassTag c, int n) {
  TStructureSpec s;
  s.variant = TVariant::StarAisle;
  s.star_class = c;
  s.star_n = n;
  return s;
}

TStructureSpec TStructureSpec::corrupted() {
  TStructureSpec s;
  s.variant = TVariant::CorruptedNatural;
  return s;
}

TStructureSpec TStructureSpec::parse(const std::string& config) {
  std::map<std::string, std::string> kv;
  std::istringstream in(config);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("t-structure config: expected key=value in '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  const std::string variant = value_of(kv, "variant");
  TStructureSpec s;
  if (variant == "Natural") {
    s = natural();
  } else if (variant == "Left" || variant == "Right") {
    ExactStructure ex = ExactStructure::parse("carrier=" + value_of(kv, "carrier") + ",flavor=" + value_of(kv, "flavor"));
    s = variant == "Left" ? left(ex) : right(ex);
  } else if (variant == "HRSTilt") {
    if (kv.count("pair") && kv["pair"] != "torsion/free")
      throw UnsupportedSpec("only the torsion/free pair on fp-Z is catalogued");
    s = hrs_tilt();
  } else if (variant == "StarAisle") {
    s = star(class_from_string(value_of(kv, "class")), std::stoi(value_of(kv, "n")));
  } else if (variant == "CorruptedNatural") {
    s = corrupted();
  } else {
    throw std::invalid_argument("t-structure config: unknown variant '" + variant + "'");
  }
  s.validate();
  return s;
}

std::string TStructureSpec::to_string() const {
  switch (variant) {
    case TVariant::Left:
    case TVariant::Right:
      return "variant=" + tiltlab::to_string(variant) + "," + ex.to_string();
    case TVariant::HRSTilt: return "variant=HRSTilt,pair=torsion/free";
    case TVariant::StarAisle:
      return "variant=StarAisle,class=" + tiltlab::to_string(star_class) + ",n=" + std::to_string(star_n);
    default: return "variant=" + tiltlab::to_string(variant);
  }
}

void TStructureSpec::validate() const {
  switch (variant) {
    case TVariant::Left:
    case TVariant::Right:
      if (!ex.valid()) throw UnsupportedSpec("invalid exact structure " + ex.to_string());
      if (ex.carrier != Carrier::FreeZ && ex.carrier != Carrier::FreePolyQ)
        throw UnsupportedSpec("left/right t-structures are implemented on FreeZ and FreePolyQ only");
      return;
    case TVariant::StarAisle:
      if (star_n < 1) throw UnsupportedSpec("star aisle needs n >= 1");
      if (star_class == ClassTag::Free) throw UnsupportedSpec("free modules do not cogenerate fp-Z; no star aisle");
      if (star_class == ClassTag::Torsion && star_n > 1)
        throw UnsupportedSpec("star aisle of the torsion class is implemented for n = 1 only");
      return;
    default: return;
  }
}

bool TStructureSpec::on_homotopy_category() const { return variant == TVariant::Left || variant == TVariant::Right; }

// -------------------------------------------------------------- truncations

Truncation truncate_le(const TStructureSpec& spec, int n, const Complex& x) {
  require_ambient(spec, x);
  if (uses_hrs(spec)) return hrs_le(x, n);
  switch (spec.variant) {
    case TVariant::Left: return left_le(x, n, spec.ex);
    case TVariant::Right: return right_le(x, n, spec.ex);
    case TVariant::CorruptedNatural: return natural_le(x, n + 1);
    default: return natural_le(x, n);
  }
}

Truncation truncate_ge(const TStructureSpec& spec, int n, const Complex& x) {
  require_ambient(spec, x);
  if (uses_hrs(spec)) return hrs_ge(x, n);
  switch (spec.variant) {
    case TVariant::Left: return left_ge(x, n, spec.ex);
    case TVariant::Right: return right_ge(x, n, spec.ex);
    default: return natural_ge(x, n);
  }
}

bool is_zero_object(const TStructureSpec& spec, const Complex& x) {
  return spec.on_homotopy_category() ? is_contractible(x) : is_exact(x);
}

bool is_ambient_iso(const TStructureSpec& spec, const ChainMap& f) { return is_zero_object(spec, cone(f).complex); }

bool hom_vanishes(const TStructureSpec& spec, const Complex& a, const Complex& b) {
  if (spec.on_homotopy_category()) return derived_hom(a, b, 0).is_zero();
  return derived_hom(formal_model(a), formal_model(b), 0).is_zero();
}

bool in_aisle(const TStructureSpec& spec, const Complex& x) {
  return is_zero_object(spec, truncate_ge(spec, 1, x).complex);
}

bool in_coaisle(const TStructureSpec& spec, const Complex& x) {
  return is_zero_object(spec, truncate_le(spec, -1, x).complex);
}

bool heart_membership(const TStructureSpec& spec, const Complex& x) { return in_aisle(spec, x) && in_coaisle(spec, x); }

ApproximatingTriangle approximating_triangle(const TStructureSpec& spec, const Complex& x) {
  ApproximatingTriangle tri{truncate_le(spec, 0, x), truncate_ge(spec, 1, x)};
  const ChainMap& c = tri.a.map;
  const ChainMap& u = tri.b.map;
  auto h = is_nullhomotopic(u * c);
  tri.composite_null = h.has_value();
  if (!h) return tri;
  const Complex& a = tri.a.complex;
  const Complex& b = tri.b.complex;
  auto hcomp = [&](int n) {
    const int k = n - h->lo;
    if (k >= 0 && k < static_cast<int>(h->components.size())) return h->components[k];
    return FpMorphism::zero(a.object(n), b.object(n - 1));
  };
  Cone cc = cone(c);
  std::vector<FpMorphism> comps;
  for (int n = cc.complex.lo(); n <= cc.complex.hi(); ++n)
    comps.push_back(block_morphism({x.object(n), a.object(n + 1)}, {b.object(n)}, {{u.component(n), hcomp(n + 1)}}));
  try {
    ChainMap phi(cc.complex, b, cc.complex.lo(), std::move(comps));
    tri.cone_matches = is_ambient_iso(spec, phi);
  } catch (const std::invalid_argument&) {
    tri.cone_matches = false;
  }
  return tri;
}

std::optional<StarDecomposition> star_membership(const Complex& x, ClassTag c, int n) {
  TStructureSpec::star(c, n).validate();
  for (int k = 1; k <= x.hi(); ++k)
    if (!cohomology(x, k).is_zero()) return std::nullopt;
  StarDecomposition out{natural_le(x, -n), {}};
  for (int i = 0; i < n; ++i) {
    FpModule h = cohomology(x, -i);
    if (!class_contains(c, h)) return std::nullopt;
    out.factors.push_back(h);
  }
  return out;
}

// ------------------------------------------------------------ axiom checks

namespace {

Complex sample_object(const TStructureSpec& spec, Sampler& s) {
  const int width = static_cast<int>(s.count(1, static_cast<std::size_t>(s.bounds().max_width)));
  const int lo = static_cast<int>(s.integer(-2, 0));
  Complex x = spec.on_homotopy_category() ? s.free_complex(lo, width) : s.fp_complex(lo, width);
  // Move a random degree of the window to 1 so the cut at 0 | 1 is exercised.
  const int d = static_cast<int>(s.integer(x.lo(), x.hi()));
  return shift(x, d - 1);
}

}  // namespace

CheckReport check_tstructure_axioms(const TStructureSpec& spec, std::size_t budget, std::uint64_t seed,
                                    const SamplingBounds& bounds) {
  spec.validate();
  CheckReport report{spec.to_string(), {}};
  auto& shift_closure = report.property("shift closure");
  auto& orthogonality = report.property("orthogonality");
  auto& triangle = report.property("approximating triangle");
  for (std::size_t k = 0; k < budget; ++k) {
    const std::uint64_t s = sample_seed(seed, k);
    Sampler smp(s, bounds);
    Complex x = sample_object(spec, smp);
    Complex y = sample_object(spec, smp);
    Complex a = truncate_le(spec, 0, x).complex;
    Complex b = truncate_ge(spec, 1, x).complex;
    Complex b2 = truncate_ge(spec, 1, y).complex;

    const bool shifts = in_aisle(spec, a) && in_aisle(spec, shift(a, 1)) && in_coaisle(spec, shift(b, 1)) &&
                        in_coaisle(spec, shift(b, -1)) && in_coaisle(spec, b);
    shift_closure.record_with(shifts, s, "truncation or its shift left the aisle/co-aisle",
                              [&] { return Json{{"x", to_json(x)}}; });
    const bool orth = hom_vanishes(spec, a, b) && hom_vanishes(spec, a, b2);
    orthogonality.record_with(orth, s, "nonzero morphism from tau<=0 X to tau>=1 X or tau>=1 Y",
                              [&] { return Json{{"x", to_json(x)}, {"y", to_json(y)}}; });
    triangle.record_with(approximating_triangle(spec, x).valid(), s, "tau<=0 X -> X -> tau>=1 X is not a triangle",
                         [&] { return Json{{"x", to_json(x)}}; });
  }
  return report;
}

// ----------------------------------------------------------- tilting classes

bool class_contains(ClassTag c, const FpModule& m) {
  if (m.ring() != RingTag::Integers) return false;
  switch (c) {
    case ClassTag::FpZ: return true;
    case ClassTag::Free: return m.is_free();
    case ClassTag::Torsion: return m.is_torsion();
  }
  return false;
}

std::optional<FpMorphism> cogeneration_witness(ClassTag c, const FpModule& m) {
  // Free: maps into free groups kill torsion, so an embedding exists iff the
  // torsion part vanishes. Torsion: a free summand never embeds into a
  // finite group.
  if (!class_contains(c, m)) return std::nullopt;
  return FpMorphism::identity(m);
}

std::optional<FpMorphism> generation_witness(ClassTag c, const FpModule& m) {
  if (c == ClassTag::Free) return free_cover(m);
  if (!class_contains(c, m)) return std::nullopt;
  return FpMorphism::identity(m);
}

namespace {

FpModule sample_in_class(ClassTag c, Sampler& s) {
  switch (c) {
    case ClassTag::Free: return s.free_module();
    case ClassTag::Torsion: return s.torsion_module();
    case ClassTag::FpZ: return s.module();
  }
  return FpModule();
}

ExactStructure class_structure(ClassTag c) {
  switch (c) {
    case ClassTag::Free: return {Carrier::FreeZ, Flavor::Split};
    case ClassTag::Torsion: return {Carrier::TorsionClassZ, Flavor::Inherited};
    case ClassTag::FpZ: return {Carrier::FpZ, Flavor::Maximal};
  }
  return {};
}

// 0 -> A -> E -> B -> 0 with E presented by [[P_A, C], [0, P_B]]. P_B must
// be injective, otherwise C can add relations to A.
std::pair<FpMorphism, FpMorphism> random_extension(const FpModule& a, const FpModule& b_in, Sampler& s) {
  const RingTag z = RingTag::Integers;
  const FpModule b = with_injective_presentation(b_in);
  Matrix top = Matrix::hstack(a.presentation(), s.matrix(a.generators(), b.relations(), 5));
  Matrix bottom = Matrix::hstack(Matrix::zero(z, b.generators(), a.relations()), b.presentation());
  FpModule e(Matrix::vstack(top, bottom));
  auto embed = [&](std::size_t rows, std::size_t n, std::size_t offset) {
    Matrix m = Matrix::zero(z, rows, n);
    m.set_block(offset, 0, Matrix::identity(z, n));
    return m;
  };
  const std::size_t g = a.generators() + b.generators(), r = a.relations() + b.relations();
  FpMorphism i(a, e, embed(g, a.generators(), 0), embed(r, a.relations(), 0));
  FpMorphism p(e, b, embed(g, b.generators(), a.generators()).transpose(),
               embed(r, b.relations(), a.relations()).transpose());
  return {i, p};
}

}  // namespace

CheckReport tilting_class_check(ClassTag c, TiltMode mode, int n, std::size_t budget, std::uint64_t seed,
                                const SamplingBounds& bounds) {
  if (n < 1) throw std::invalid_argument("tilting_class_check needs n >= 1");
  CheckReport report{to_string(c) + " " + to_string(mode) + " n=" + std::to_string(n), {}};
  const bool tilting = mode == TiltMode::Tilting;
  auto& gen = report.property(tilting ? "cogeneration" : "generation");
  auto& ext = report.property("extension closure");
  auto& kers = report.property(tilting ? "kernels" : "cokernels");
  auto& nfold = report.property(tilting ? "n-fold cokernel" : "n-fold kernel");
  const ExactStructure ex = class_structure(c);

  // Probes first: Z/2 is the obstruction for the free class, Z for torsion.
  const std::vector<FpModule> probes{FpModule::cyclic(2), FpModule::free(RingTag::Integers, 1)};
  for (std::size_t k = 0; k < budget + probes.size(); ++k) {
    const std::uint64_t s = sample_seed(seed, k);
    Sampler smp(s, bounds);
    FpModule m = k < probes.size() ? probes[k] : smp.module();
    if (tilting) {
      auto w = cogeneration_witness(c, m);
      gen.record_with(w && is_mono(*w) && class_contains(c, w->target()), s,
                      "no embedding of " + m.to_string() + " into the class", [&] { return Json{{"module", to_json(m)}}; });
    } else {
      auto w = generation_witness(c, m);
      gen.record_with(w && is_epi(*w) && class_contains(c, w->source()), s, "no class object maps onto " + m.to_string(),
                      [&] { return Json{{"module", to_json(m)}}; });
    }
    if (k < probes.size()) continue;

    FpModule a = sample_in_class(c, smp), b = sample_in_class(c, smp);
    auto [i, p] = random_extension(a, b, smp);
    ext.record(is_short_exact(i, p) && class_contains(c, i.target()), s,
               "extension of " + b.to_string() + " by " + a.to_string() + " is " + i.target().to_string());

    FpMorphism f = smp.morphism(a, b);
    if (tilting) {
      DKernel dk = d_kernel(f, ex);
      FpModule t = sample_in_class(c, smp);
      bool ok = class_contains(c, dk.module) && is_zero(f * dk.inclusion);
      if (ok && !dk.module.is_zero()) {
        FpMorphism j = dk.inclusion * smp.morphism(t, dk.module);
        DeflationFactor fac = dk.factor(j);
        ok = morphism_equal(j * fac.cover, dk.inclusion * fac.map);
      }
      kers.record(ok, s, "kernel of a map between class objects is not a class kernel");
    } else {
      DCokernel dc = d_cokernel(f, ex);
      kers.record(class_contains(c, dc.module) && is_zero(dc.projection * f), s,
                  "cokernel of a map between class objects is not a class cokernel");
    }

    // X_n -> ... -> X_1 -> B -> 0 (tilting) or 0 -> A -> X_1 -> ... -> X_n (cotilting).
    bool ok = true;
    std::string detail;
    if (n == 1) {
      FpModule x1 = sample_in_class(c, smp);
      FpModule other = smp.module();
      if (tilting) {
        FpModule quotient = cokernel(smp.morphism(other, x1)).module;
        ok = class_contains(c, quotient);
        detail = "quotient " + quotient.to_string() + " of " + x1.to_string();
      } else {
        FpModule sub = kernel(smp.morphism(x1, other)).module;
        ok = class_contains(c, sub);
        detail = "subobject " + sub.to_string() + " of " + x1.to_string();
      }
    } else {
      FpModule x1 = sample_in_class(c, smp), x2 = sample_in_class(c, smp);
      if (tilting) {
        FpMorphism d2 = smp.morphism(x2, x1);
        // X_3 ... X_n only need to make the sequence exact at X_2, which
        // does not change B = coker d_2.
        FpModule bmod = cokernel(d2).module;
        ok = class_contains(c, bmod);
        detail = "cokernel " + bmod.to_string() + " of a map between class objects";
      } else {
        FpModule amod = kernel(smp.morphism(x1, x2)).module;
        ok = class_contains(c, amod);
        detail = "kernel " + amod.to_string() + " of a map between class objects";
      }
    }
    nfold.record(ok, s, detail);
  }
  return report;
}

// ------------------------------------------------------- hearts and E

std::optional<FpModule> intersection_normal_form(const TStructureSpec& a, const TStructureSpec& b, const Complex& x) {
  if (!heart_membership(a, x) || !heart_membership(b, x)) return std::nullopt;
  return cohomology(x, 0);
}

FpModule heart_to_module(const Complex& x) { return cohomology(x, 0); }

Complex module_to_heart(const FpModule& m) {
  FpModule inj = with_injective_presentation(m);
  FpModule rel = FpModule::free(m.ring(), inj.relations());
  FpModule gen = FpModule::free(m.ring(), inj.generators());
  return Complex::two_term(FpMorphism::from_matrix(rel, gen, inj.presentation()), -1);
}

FpMorphism heart_map_to_module(const ChainMap& f) { return cohomology_map(f, 0); }

FpMorphism heart_unit(const FpModule& m) {
  Complex x = module_to_heart(m);
  CohomologyData h = cohomology_data(x, 0);
  // X^0 has the generators of m; express them as cycles, then take classes.
  auto coords = lift_along(h.cycles.inclusion, FpMorphism::identity(x.object(0)));
  if (!coords) throw std::logic_error("heart_unit: degree 0 is not all cycles");
  return FpMorphism::from_matrix(m, h.classes.module, (h.classes.projection * *coords).matrix());
}

ChainMap module_map_to_heart(const FpMorphism& u) {
  Complex cm = module_to_heart(u.source());
  Complex cn = module_to_heart(u.target());
  const Matrix pm = cm.differential(-1).matrix();
  const Matrix pn = cn.differential(-1).matrix();
  auto w = solve_lift(pn, u.matrix() * pm);
  if (!w) throw IllDefinedMorphism("module_map_to_heart: relations are not preserved");
  FpMorphism top = FpMorphism::from_matrix(cm.object(-1), cn.object(-1), *w);
  FpMorphism bottom = FpMorphism::from_matrix(cm.object(0), cn.object(0), u.matrix());
  return ChainMap(cm, cn, -1, {top, bottom});
}

FpMorphism heart_hom_comparison(const FpModule& m, const FpModule& n) {
  Complex cm = module_to_heart(m);
  Complex cn = module_to_heart(n);
  DerivedHom dh = derived_hom_data(cm, cn, 0);
  HomGroup hg = hom_group(m, n);
  Matrix coords = Matrix::zero(RingTag::Integers, hg.module().generators(), dh.module.generators());
  for (std::size_t k = 0; k < dh.module.generators(); ++k) {
    ChainMap f = chain_map_from_vector(cm, cn, 0, dh.cycles.col_range(k, 1));
    FpMorphism u = FpMorphism::from_matrix(m, n, f.component(0).matrix());
    coords.set_block(0, k, hg.coordinates(u));
  }
  return FpMorphism::from_matrix(dh.module, hg.module(), coords);
}

}  // namespace tiltlab
