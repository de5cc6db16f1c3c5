#include "tiltlab/freyd.hpp"

#include "tiltlab/sampling.hpp"
#include "tiltlab/serialize.hpp"

namespace tiltlab {
namespace {

bool same_object(const FreydObject& a, const FreydObject& b) {
  return a.relations() == b.relations() && a.generators() == b.generators() &&
         a.carrier().matrix() == b.carrier().matrix();
}

void require_same(const FreydObject& a, const FreydObject& b, const char* what) {
  if (!same_object(a, b)) throw std::invalid_argument(std::string(what) + ": objects do not match");
}

FpMorphism row(const std::vector<FpModule>& sources, const FpModule& target, const std::vector<FpMorphism>& maps) {
  return block_morphism(sources, {target}, {maps});
}

FpMorphism column(const FpModule& source, const std::vector<FpModule>& targets, const std::vector<FpMorphism>& maps) {
  std::vector<std::vector<FpMorphism>> blocks;
  for (const auto& m : maps) blocks.push_back({m});
  return block_morphism({source}, targets, blocks);
}

FpMorphism injection(const std::vector<FpModule>& parts, std::size_t k) {
  std::vector<FpMorphism> maps;
  for (std::size_t i = 0; i < parts.size(); ++i)
    maps.push_back(i == k ? FpMorphism::identity(parts[k]) : FpMorphism::zero(parts[k], parts[i]));
  return column(parts[k], parts, maps);
}

FpMorphism projection(const std::vector<FpModule>& parts, std::size_t k) {
  std::vector<FpMorphism> maps;
  for (std::size_t i = 0; i < parts.size(); ++i)
    maps.push_back(i == k ? FpMorphism::identity(parts[k]) : FpMorphism::zero(parts[i], parts[k]));
  return row(parts, parts[k], maps);
}

FpMorphism require(std::optional<FpMorphism> m, const char* what) {
  if (!m) throw std::logic_error(what);
  return *std::move(m);
}

void require_in(const ExactStructure& ex, const FreydObject& f) {
  if (!ex.contains(f.relations()) || !ex.contains(f.generators()))
    throw CarrierMismatch("Freyd object carrier is not in " + ex.to_string());
}

// Hom(X, source h) -> Hom(X, target h) by post-composition.
FpMorphism post_composition(const FpModule& x, const FpMorphism& h) {
  HomGroup from = hom_group(x, h.source());
  HomGroup to = hom_group(x, h.target());
  Matrix m = Matrix::zero(RingTag::Integers, to.module().generators(), from.module().generators());
  for (std::size_t k = 0; k < from.module().generators(); ++k)
    m.set_block(0, k, to.coordinates(h * from.generator(k)));
  return FpMorphism::from_matrix(from.module(), to.module(), m);
}

}  // namespace

// ------------------------------------------------------------- objects

FreydObject::FreydObject(FpMorphism carrier) : carrier_(std::move(carrier)) {}

FreydObject FreydObject::representable(const FpModule& x) {
  return FreydObject(FpMorphism::zero(FpModule::zero(x.ring()), x));
}

FreydObject FreydObject::zero(RingTag ring) { return representable(FpModule::zero(ring)); }

FreydMorphism::FreydMorphism(FreydObject source, FreydObject target, FpMorphism on_generators, FpMorphism on_relations)
    : source_(std::move(source)), target_(std::move(target)), gens_(std::move(on_generators)),
      rels_(std::move(on_relations)) {
  if (!(gens_.source() == source_.generators()) || !(gens_.target() == target_.generators()) ||
      !(rels_.source() == source_.relations()) || !(rels_.target() == target_.relations()))
    throw IllDefinedMorphism("Freyd morphism: components do not match the presentations");
  if (!morphism_equal(target_.carrier() * rels_, gens_ * source_.carrier()))
    throw IllDefinedMorphism("Freyd morphism: components do not commute with the carriers");
}

std::optional<FreydMorphism> FreydMorphism::induced(const FreydObject& source, const FreydObject& target,
                                                    const FpMorphism& on_generators) {
  auto rels = lift_along(target.carrier(), on_generators * source.carrier());
  if (!rels) return std::nullopt;
  return FreydMorphism(source, target, on_generators, *rels);
}

FreydMorphism FreydMorphism::identity(const FreydObject& f) {
  return {f, f, FpMorphism::identity(f.generators()), FpMorphism::identity(f.relations())};
}

FreydMorphism FreydMorphism::zero(const FreydObject& source, const FreydObject& target) {
  return {source, target, FpMorphism::zero(source.generators(), target.generators()),
          FpMorphism::zero(source.relations(), target.relations())};
}

FreydMorphism operator*(const FreydMorphism& g, const FreydMorphism& f) {
  require_same(f.target(), g.source(), "Freyd composition");
  return {f.source(), g.target(), g.gens_ * f.gens_, g.rels_ * f.rels_};
}

FreydMorphism operator-(const FreydMorphism& a, const FreydMorphism& b) {
  require_same(a.source(), b.source(), "Freyd difference");
  require_same(a.target(), b.target(), "Freyd difference");
  return {a.source(), a.target(), a.gens_ - b.gens_, a.rels_ - b.rels_};
}

bool freyd_equal(const FreydMorphism& a, const FreydMorphism& b) {
  if (!same_object(a.source(), b.source()) || !same_object(a.target(), b.target())) return false;
  return lift_along(a.target().carrier(), a.on_generators() - b.on_generators()).has_value();
}

bool freyd_is_zero(const FreydObject& f) {
  return lift_along(f.carrier(), FpMorphism::identity(f.generators())).has_value();
}

// ------------------------------------------------ kernels and cokernels

FreydKernel freyd_kernel(const FreydMorphism& f) {
  // Generators of F whose image lies in the relations of G, modulo those
  // already in the relations of F.
  Pullback p = pullback(f.on_generators(), f.target().carrier());
  Pullback q = pullback(p.to_first, f.source().carrier());
  FreydObject k(q.to_first);
  return {k, FreydMorphism(k, f.source(), p.to_first, q.to_second)};
}

FreydCokernel freyd_cokernel(const FreydMorphism& f) {
  const FreydObject& g = f.target();
  const std::vector<FpModule> parts{f.source().generators(), g.relations()};
  FreydObject c(row(parts, g.generators(), {f.on_generators(), g.carrier()}));
  return {c, FreydMorphism(g, c, FpMorphism::identity(g.generators()), injection(parts, 1))};
}

FreydImage freyd_image(const FreydMorphism& f) {
  const FreydObject& src = f.source();
  Pullback p = pullback(f.on_generators(), f.target().carrier());
  const std::vector<FpModule> parts{src.relations(), p.module};
  FreydObject im(row(parts, src.generators(), {src.carrier(), p.to_first}));
  FreydMorphism epi(src, im, FpMorphism::identity(src.generators()), injection(parts, 0));
  FreydMorphism mono(im, f.target(), f.on_generators(), row(parts, f.target().relations(), {f.on_relations(), p.to_second}));
  return {im, epi, mono};
}

bool freyd_is_mono(const FreydMorphism& f) { return freyd_is_zero(freyd_kernel(f).object); }
bool freyd_is_epi(const FreydMorphism& f) { return freyd_is_zero(freyd_cokernel(f).object); }

FreydSum freyd_direct_sum(const FreydObject& a, const FreydObject& b) {
  const std::vector<FpModule> gens{a.generators(), b.generators()};
  const std::vector<FpModule> rels{a.relations(), b.relations()};
  FreydObject s(block_morphism(rels, gens,
                               {{a.carrier(), FpMorphism::zero(b.relations(), a.generators())},
                                {FpMorphism::zero(a.relations(), b.generators()), b.carrier()}}));
  return {s,
          FreydMorphism(a, s, injection(gens, 0), injection(rels, 0)),
          FreydMorphism(b, s, injection(gens, 1), injection(rels, 1)),
          FreydMorphism(s, a, projection(gens, 0), projection(rels, 0)),
          FreydMorphism(s, b, projection(gens, 1), projection(rels, 1))};
}

FreydPullback freyd_pullback(const FreydMorphism& f, const FreydMorphism& g) {
  require_same(f.target(), g.target(), "Freyd pullback");
  FreydSum s = freyd_direct_sum(f.source(), g.source());
  const FreydObject& z = f.target();
  FreydMorphism diff(s.object, z,
                     row({f.source().generators(), g.source().generators()}, z.generators(),
                         {f.on_generators(), -g.on_generators()}),
                     row({f.source().relations(), g.source().relations()}, z.relations(),
                         {f.on_relations(), -g.on_relations()}));
  FreydKernel k = freyd_kernel(diff);
  return {k.object, s.project_first * k.inclusion, s.project_second * k.inclusion};
}

// ------------------------------------------------------- effaceability

bool is_effaceable(const FreydObject& f, const ExactStructure& ex) {
  require_in(ex, f);
  return is_deflation(f.carrier(), ex);
}

FpModule evaluate(const FreydObject& f, const FpModule& x) { return cokernel(post_composition(x, f.carrier())).module; }

FpMorphism evaluate(const FreydMorphism& f, const FpModule& x) {
  CokernelResult src = cokernel(post_composition(x, f.source().carrier()));
  CokernelResult tgt = cokernel(post_composition(x, f.target().carrier()));
  return require(extend_along(src.projection, tgt.projection * post_composition(x, f.on_generators())),
                 "evaluate: induced map does not descend");
}

std::vector<FpModule> probing_set(const ExactStructure& ex) {
  const RingTag z = RingTag::Integers;
  std::vector<FpModule> probes;
  if (ex.carrier == Carrier::TorsionClassZ) {
    for (long d : {2L, 3L, 4L}) probes.push_back(FpModule::cyclic(d));
    probes.push_back(FpModule::from_invariants(z, {Integer(2), Integer(2)}, 0));
    return probes;
  }
  for (std::size_t r = 1; r <= 3; ++r) probes.push_back(FpModule::free(z, r));
  if (ex.carrier == Carrier::FpZ)
    for (long d : {2L, 4L}) probes.push_back(FpModule::cyclic(d));
  return probes;
}

RightFilterFactor right_filter_factor(const FreydMorphism& f, const ExactStructure& ex) {
  const FreydObject& u = f.source();
  const FreydObject& a = f.target();
  if (!is_effaceable(a, ex)) throw std::invalid_argument("right_filter_factor: target is not effaceable");
  Pullback q = pullback(f.on_generators(), a.carrier());
  FreydObject b(q.to_first);
  FpMorphism r = require(lift_along(q.to_first, u.carrier()), "right_filter_factor: relations do not lift");
  FreydMorphism pi(u, b, FpMorphism::identity(u.generators()), r);
  FreydMorphism g(b, a, f.on_generators(), q.to_second);
  return {b, pi, g};
}

// --------------------------------------------------------- fractions

std::optional<std::vector<WeakIsoFactor>> certify_weak_iso(const FreydMorphism& f, const ExactStructure& ex) {
  FreydImage im = freyd_image(f);
  FreydObject k = freyd_kernel(im.epi).object;
  FreydObject c = freyd_cokernel(im.mono).object;
  if (!is_effaceable(k, ex) || !is_effaceable(c, ex)) return std::nullopt;
  return std::vector<WeakIsoFactor>{{WeakIsoFactor::Kind::Deflation, im.epi, k},
                                    {WeakIsoFactor::Kind::Inflation, im.mono, c}};
}

Fraction::Fraction(ExactStructure ex, std::vector<WeakIsoFactor> chain, FreydMorphism forward)
    : ex_(ex), chain_(std::move(chain)), forward_(std::move(forward)) {
  const FreydObject* at = &forward_.source();
  for (const auto& step : chain_) {
    if (!same_object(step.map.source(), *at)) throw std::invalid_argument("fraction: chain does not compose");
    const bool deflation = step.kind == WeakIsoFactor::Kind::Deflation;
    const FreydObject computed =
        deflation ? freyd_kernel(step.map).object : freyd_cokernel(step.map).object;
    if (!same_object(computed, step.certificate)) throw std::invalid_argument("fraction: certificate mismatch");
    if (!is_effaceable(step.certificate, ex_)) throw std::invalid_argument("fraction: certificate is not effaceable");
    if (deflation ? !freyd_is_epi(step.map) : !freyd_is_mono(step.map))
      throw std::invalid_argument("fraction: factor is not a deflation/inflation");
    at = &step.map.target();
  }
}

Fraction Fraction::from_morphism(const FreydMorphism& f, const ExactStructure& ex) { return {ex, {}, f}; }

Fraction Fraction::from_weak_iso(const FreydMorphism& s, const ExactStructure& ex) {
  auto chain = certify_weak_iso(s, ex);
  if (!chain) throw std::invalid_argument("from_weak_iso: not a weak isomorphism");
  return {ex, std::move(*chain), FreydMorphism::identity(s.source())};
}

FreydObject Fraction::domain() const { return chain_.empty() ? forward_.source() : chain_.back().map.target(); }

FreydMorphism Fraction::backward() const {
  FreydMorphism s = FreydMorphism::identity(apex());
  for (const auto& step : chain_) s = step.map * s;
  return s;
}

Fraction fraction_compose(const Fraction& a, const Fraction& b) {
  if (!(a.exact_structure() == b.exact_structure())) throw std::invalid_argument("fraction_compose: exact structures differ");
  require_same(a.codomain(), b.domain(), "fraction_compose");
  if (b.chain().empty()) return {a.exact_structure(), a.chain(), b.forward() * a.forward()};
  FreydPullback p = freyd_pullback(a.forward(), b.backward());
  auto refine = certify_weak_iso(p.to_first, a.exact_structure());
  if (!refine) throw std::logic_error("fraction_compose: pulled-back weak isomorphism is not certified");
  std::vector<WeakIsoFactor> chain = std::move(*refine);
  chain.insert(chain.end(), a.chain().begin(), a.chain().end());
  return {a.exact_structure(), std::move(chain), b.forward() * p.to_second};
}

// ---------------------------------------------- Auslander projection

bool has_auslander_projection(const ExactStructure& ex) {
  return ex.carrier == Carrier::FreeZ || (ex.carrier == Carrier::FpZ && ex.flavor == Flavor::Maximal);
}

namespace {
void require_projection(const ExactStructure& ex) {
  if (!has_auslander_projection(ex)) throw UnsupportedCarrier("no Auslander projection for " + ex.to_string());
}
}  // namespace

FpModule auslander_project(const FreydObject& f, const ExactStructure& ex) {
  require_projection(ex);
  require_in(ex, f);
  return cokernel(f.carrier()).module;
}

FpMorphism auslander_project(const FreydMorphism& f, const ExactStructure& ex) {
  require_projection(ex);
  CokernelResult src = cokernel(f.source().carrier());
  CokernelResult tgt = cokernel(f.target().carrier());
  return require(extend_along(src.projection, tgt.projection * f.on_generators()),
                 "auslander_project: induced map does not descend");
}

FpMorphism auslander_project(const Fraction& a) {
  FpMorphism s = auslander_project(a.backward(), a.exact_structure());
  FpMorphism s_inv = require(inverse(s), "auslander_project: weak isomorphism does not project to an isomorphism");
  return auslander_project(a.forward(), a.exact_structure()) * s_inv;
}

bool quotient_equal(const Fraction& a, const Fraction& b) {
  require_projection(a.exact_structure());
  if (!same_object(a.domain(), b.domain()) || !same_object(a.codomain(), b.codomain()))
    throw std::invalid_argument("quotient_equal: fractions are not parallel");
  return morphism_equal(auslander_project(a), auslander_project(b));
}

FreydObject freyd_from_module(const FpModule& m) {
  return FreydObject(FpMorphism::from_matrix(FpModule::free(m.ring(), m.relations()),
                                             FpModule::free(m.ring(), m.generators()), m.presentation()));
}

Fraction lift_module_map(const FreydObject& f, const FreydObject& g, const FpMorphism& u, const ExactStructure& ex) {
  require_projection(ex);
  CokernelResult lf = cokernel(f.carrier());
  CokernelResult lg = cokernel(g.carrier());
  if (!(u.source() == lf.module) || !(u.target() == lg.module))
    throw std::invalid_argument("lift_module_map: u is not a map between the projections");
  // Apex: a presentation of L(F) on a free cover of F's generators.
  FpMorphism cover = free_cover(f.generators());
  KernelResult k = kernel(lf.projection * cover);
  FreydObject apex(k.inclusion);
  FreydMorphism s(apex, f, cover, require(lift_along(f.carrier(), cover * k.inclusion), "lift_module_map: s"));
  FpMorphism a0 = lift_through_epi(lg.projection, u * lf.projection * cover);
  FreydMorphism forward(apex, g, a0, require(lift_along(g.carrier(), a0 * k.inclusion), "lift_module_map: g"));
  auto chain = certify_weak_iso(s, ex);
  if (!chain) throw std::logic_error("lift_module_map: the free presentation is not weakly isomorphic");
  return {ex, std::move(*chain), forward};
}

bool is_coeffaceable(const CoFreydObject& f, const ExactStructure& ex) {
  if (!ex.contains(f.carrier.source()) || !ex.contains(f.carrier.target()))
    throw CarrierMismatch("carrier is not in " + ex.to_string());
  return is_inflation(f.carrier, ex);
}

// ------------------------------------------------------------- suites

namespace {

FpModule sample_object(const ExactStructure& ex, Sampler& s) {
  switch (ex.carrier) {
    case Carrier::FreeZ:
    case Carrier::TorsionFreeClassZ: return s.free_module();
    case Carrier::TorsionClassZ: return s.torsion_module();
    case Carrier::FpZ: return s.module();
    case Carrier::FreePolyQ: break;
  }
  throw UnsupportedCarrier("sampling is implemented over the integers only");
}

FpModule nonzero_object(const ExactStructure& ex, Sampler& s) {
  for (;;) {
    FpModule m = sample_object(ex, s);
    if (!m.is_zero()) return m;
  }
}

// [cover | m] : S (+) T ->> A0 with cover a free cover for fp-Z maximal and
// the identity otherwise; scrambled by an automorphism when S (+) T is free.
FreydObject sample_effaceable(const ExactStructure& ex, Sampler& s) {
  FpModule a0 = sample_object(ex, s);
  FpModule t = sample_object(ex, s);
  const bool free_type = ex.carrier == Carrier::FreeZ || ex.carrier == Carrier::TorsionFreeClassZ;
  FpMorphism cover = ex.flavor == Flavor::Maximal && ex.carrier == Carrier::FpZ ? free_cover(a0) : FpMorphism::identity(a0);
  FpMorphism f = row({cover.source(), t}, a0, {cover, s.morphism(t, a0)});
  if (free_type) {
    const FpModule& src = f.source();
    f = f * FpMorphism::from_matrix(src, src, s.unimodular(src.generators()));
  }
  return FreydObject(f);
}

FreydObject sample_freyd(const ExactStructure& ex, Sampler& s) {
  if (s.coin()) return sample_effaceable(ex, s);
  FpModule a1 = sample_object(ex, s), a0 = sample_object(ex, s);
  return FreydObject(s.morphism(a1, a0));
}

// A morphism into `target` from a source built over a random generator map.
FreydMorphism sample_morphism_into(const FreydObject& target, const ExactStructure& ex, Sampler& s) {
  FpModule u2 = sample_object(ex, s);
  FpMorphism a0 = s.morphism(u2, target.generators());
  Pullback q = pullback(a0, target.carrier());
  FpModule r = sample_object(ex, s);
  // Relations: the pullback plus random extra relations mapping into it.
  FpMorphism x = row({q.module, r}, q.module, {FpMorphism::identity(q.module), s.morphism(r, q.module)});
  FreydObject source(q.to_first * x);
  return {source, target, a0, q.to_second * x};
}

bool pointwise_exact(const FreydMorphism& i, const FreydMorphism& p, const ExactStructure& ex) {
  for (const auto& x : probing_set(ex))
    if (!is_short_exact(evaluate(i, x), evaluate(p, x))) return false;
  return true;
}

}  // namespace

CheckReport serre_closure_check(const ExactStructure& ex, std::size_t budget, std::uint64_t seed, SerreControl control,
                                const SamplingBounds& bounds) {
  if (!ex.valid()) throw CarrierMismatch("invalid exact structure " + ex.to_string());
  if (ex.carrier == Carrier::FreePolyQ) throw UnsupportedCarrier("sampling is implemented over the integers only");
  CheckReport report{"effaceables in " + ex.to_string(), {}};
  if (budget == 0) return report;
  auto& ext = report.property("extension closure");
  auto& subs = report.property("admissible subobjects");
  auto& quots = report.property("admissible quotients");
  auto& filter = report.property("right filtering");
  auto& pointwise = report.property("pointwise conflations");

  for (std::size_t k = 0; k < budget; ++k) {
    const std::uint64_t sd = sample_seed(seed, k);
    Sampler s(sd, bounds);

    // Extension of H by F glued along c = f c' + e q, where q : C1 ->> C1 / ker h.
    {
      FreydObject f = sample_effaceable(ex, s), h = sample_effaceable(ex, s);
      const FpModule &a1 = f.relations(), &a0 = f.generators(), &c1 = h.relations(), &c0 = h.generators();
      CokernelResult q = cokernel(kernel(h.carrier()).inclusion);
      FpMorphism c = f.carrier() * s.morphism(c1, a1) + s.morphism(q.module, a0) * q.projection;
      const std::vector<FpModule> rels{a1, c1}, gens{a0, c0};
      FreydObject g(block_morphism(rels, gens, {{f.carrier(), c}, {FpMorphism::zero(a1, c0), h.carrier()}}));
      FreydMorphism i(f, g, injection(gens, 0), injection(rels, 0));
      FreydMorphism p(g, h, projection(gens, 1), projection(rels, 1));
      ext.record_with(is_effaceable(g, ex), sd, "extension of effaceables is not effaceable",
                      [&] { return Json{{"extension", to_json(g)}}; });
      pointwise.record_with(pointwise_exact(i, p, ex), sd, "sampled extension is not pointwise short exact",
                            [&] { return Json{{"inflation", to_json(i)}, {"deflation", to_json(p)}}; });
    }

    // Subobject generated by a : A0 -> B0 and the quotient by it.
    {
      FreydObject g = control == SerreControl::Genuine ? sample_effaceable(ex, s)
                                                       : FreydObject::representable(nonzero_object(ex, s));
      FpModule a0 = sample_object(ex, s);
      FpMorphism a = s.coin(0.3) ? FpMorphism::identity(g.generators()) : s.morphism(a0, g.generators());
      Pullback pb = pullback(a, g.carrier());
      FreydObject sub(pb.to_first);
      FreydMorphism incl(sub, g, a, pb.to_second);
      FreydCokernel quot = freyd_cokernel(incl);
      subs.record_with(is_effaceable(sub, ex), sd, "subobject " + sub.generators().to_string() + "-generated is not effaceable",
                       [&] { return Json{{"inclusion", to_json(incl)}}; });
      quots.record_with(is_effaceable(quot.object, ex), sd, "quotient of an effaceable is not effaceable",
                        [&] { return Json{{"projection", to_json(quot.projection)}}; });
      pointwise.record_with(pointwise_exact(incl, quot.projection, ex), sd, "subobject sequence is not pointwise short exact",
                            [&] { return Json{{"inflation", to_json(incl)}, {"deflation", to_json(quot.projection)}}; });
    }

    // f : U -> A into an effaceable factors as g pi.
    {
      FreydObject a = sample_effaceable(ex, s);
      FreydMorphism f = sample_morphism_into(a, ex, s);
      RightFilterFactor rf = right_filter_factor(f, ex);
      const bool ok = freyd_equal(rf.g * rf.pi, f) && freyd_is_epi(rf.pi) && is_effaceable(rf.middle, ex);
      filter.record_with(ok, sd, "no factorization through an effaceable quotient", [&] { return Json{{"map", to_json(f)}}; });
    }
  }
  return report;
}

CheckReport auslander_check(const ExactStructure& ex, std::size_t budget, std::uint64_t seed,
                            const SamplingBounds& bounds) {
  require_projection(ex);
  CheckReport report{"Auslander projection for " + ex.to_string(), {}};
  if (budget == 0) return report;
  auto& kernel_prop = report.property("projection kernel");
  auto& faithful = report.property("faithfulness");
  auto& full = report.property("fullness");
  auto& essential = report.property("essential surjectivity");
  auto& independent = report.property("presentation independence");
  auto& functorial = report.property("fraction composition");

  for (std::size_t k = 0; k < budget; ++k) {
    const std::uint64_t sd = sample_seed(seed, k);
    Sampler s(sd, bounds);

    FreydObject f = sample_freyd(ex, s);
    kernel_prop.record_with(auslander_project(f, ex).is_zero() == is_effaceable(f, ex), sd,
                            "projection vanishes on " + f.carrier().source().to_string() + " -> " +
                                f.carrier().target().to_string() + " iff effaceable fails",
                            [&] { return Json{{"functor", to_json(f)}}; });

    FreydObject g = sample_freyd(ex, s);
    FreydMorphism phi = sample_morphism_into(g, ex, s);
    faithful.record_with(is_zero(auslander_project(phi, ex)) == is_effaceable(freyd_image(phi).object, ex), sd,
                         "projection zero iff factoring through an effaceable fails",
                         [&] { return Json{{"map", to_json(phi)}}; });

    // Same functor, presented with redundant relations and a trivial summand.
    {
      FpModule m = sample_object(ex, s), t = sample_object(ex, s);
      const FpMorphism& c = f.carrier();
      const std::vector<FpModule> rels{c.source(), m, t}, gens{c.target(), t};
      FreydObject f2(block_morphism(rels, gens,
                                    {{c, c * s.morphism(m, c.source()), FpMorphism::zero(t, c.target())},
                                     {FpMorphism::zero(c.source(), t), FpMorphism::zero(m, t), FpMorphism::identity(t)}}));
      FreydMorphism iso(f, f2, injection(gens, 0), injection(rels, 0));
      const bool same = freyd_is_mono(iso) && freyd_is_epi(iso);
      independent.record_with(same && is_effaceable(f, ex) == is_effaceable(f2, ex), sd,
                              "effaceability depends on the presentation",
                              [&] { return Json{{"first", to_json(f)}, {"second", to_json(f2)}}; });
    }

    FpModule mod = ex.carrier == Carrier::FpZ || s.coin() ? s.module() : s.free_module();
    essential.record_with(auslander_project(freyd_from_module(mod), ex).isomorphic_to(mod), sd,
                          "module " + mod.to_string() + " is not hit", [&] { return Json{{"module", to_json(mod)}}; });

    FreydObject h = sample_freyd(ex, s);
    FpModule lf = auslander_project(f, ex), lg = auslander_project(g, ex), lh = auslander_project(h, ex);
    FpMorphism u = s.morphism(lf, lg), v = s.morphism(lg, lh);
    Fraction fu = lift_module_map(f, g, u, ex);
    Fraction fv = lift_module_map(g, h, v, ex);
    full.record_with(morphism_equal(auslander_project(fu), u), sd, "module map does not lift to a fraction",
                     [&] { return Json{{"module map", to_json(u)}, {"fraction", to_json(fu)}}; });
    Fraction composite = fraction_compose(fu, fv);
    const bool ok = morphism_equal(auslander_project(composite), v * u) &&
                    quotient_equal(fraction_compose(Fraction::from_morphism(FreydMorphism::identity(f), ex), fu), fu);
    functorial.record_with(ok, sd, "projection of a composite fraction is not the composite",
                           [&] { return Json{{"first", to_json(fu)}, {"second", to_json(fv)}}; });
  }
  return report;
}

}  // namespace tiltlab
