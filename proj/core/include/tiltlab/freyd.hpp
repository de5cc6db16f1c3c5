#pragma once

#include "tiltlab/exact_structure.hpp"
#include "tiltlab/fp_module.hpp"
#include "tiltlab/report.hpp"
#include "tiltlab/sampling.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tiltlab {

class UnsupportedCarrier : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The finitely presented functor coker(E(-, X1) -> E(-, X0)) presented by a
/// carrier map f : X1 -> X0 of the base category.
class FreydObject {
 public:
  explicit FreydObject(FpMorphism carrier);
  /// E(-, X).
  static FreydObject representable(const FpModule& x);
  static FreydObject zero(RingTag ring);

  [[nodiscard]] const FpMorphism& carrier() const { return carrier_; }
  [[nodiscard]] const FpModule& generators() const { return carrier_.target(); }
  [[nodiscard]] const FpModule& relations() const { return carrier_.source(); }
  [[nodiscard]] RingTag ring() const { return carrier_.ring(); }

 private:
  FpMorphism carrier_;
};

/// A natural transformation given by base maps on generators and relations
/// that commute with the carriers.
class FreydMorphism {
 public:
  /// Throws IllDefinedMorphism unless target.f * on_relations =
  /// on_generators * source.f.
  FreydMorphism(FreydObject source, FreydObject target, FpMorphism on_generators, FpMorphism on_relations);
  /// Finds on_relations; nullopt when on_generators does not descend.
  static std::optional<FreydMorphism> induced(const FreydObject& source, const FreydObject& target,
                                              const FpMorphism& on_generators);
  static FreydMorphism identity(const FreydObject& f);
  static FreydMorphism zero(const FreydObject& source, const FreydObject& target);

  [[nodiscard]] const FreydObject& source() const { return source_; }
  [[nodiscard]] const FreydObject& target() const { return target_; }
  [[nodiscard]] const FpMorphism& on_generators() const { return gens_; }
  [[nodiscard]] const FpMorphism& on_relations() const { return rels_; }

  friend FreydMorphism operator*(const FreydMorphism& g, const FreydMorphism& f);
  friend FreydMorphism operator-(const FreydMorphism& a, const FreydMorphism& b);

 private:
  FreydObject source_, target_;
  FpMorphism gens_, rels_;
};

/// The generator maps differ by a map factoring through the target carrier.
bool freyd_equal(const FreydMorphism& a, const FreydMorphism& b);
/// The carrier is a split epimorphism.
bool freyd_is_zero(const FreydObject& f);

struct FreydKernel {
  FreydObject object;
  FreydMorphism inclusion;
};
struct FreydCokernel {
  FreydObject object;
  FreydMorphism projection;
};
struct FreydImage {
  FreydObject object;
  FreydMorphism epi, mono;
};

/// The base category must have pullbacks of the maps involved inside the
/// carrier; this holds for all catalogued carriers.
FreydKernel freyd_kernel(const FreydMorphism& f);
FreydCokernel freyd_cokernel(const FreydMorphism& f);
FreydImage freyd_image(const FreydMorphism& f);
bool freyd_is_mono(const FreydMorphism& f);
bool freyd_is_epi(const FreydMorphism& f);

struct FreydSum {
  FreydObject object;
  FreydMorphism inject_first, inject_second, project_first, project_second;
};
FreydSum freyd_direct_sum(const FreydObject& a, const FreydObject& b);

struct FreydPullback {
  FreydObject object;
  FreydMorphism to_first, to_second;
};
FreydPullback freyd_pullback(const FreydMorphism& f, const FreydMorphism& g);

/// F is effaceable iff its carrier is a deflation; this does not depend on
/// the presentation. Throws CarrierMismatch if the carrier's objects are not
/// in ex.
bool is_effaceable(const FreydObject& f, const ExactStructure& ex);

/// F(X) as a group, by post-composition on Hom(X, -). Integers only.
FpModule evaluate(const FreydObject& f, const FpModule& x);
FpMorphism evaluate(const FreydMorphism& f, const FpModule& x);
/// Argument objects used for pointwise checks in the given carrier.
std::vector<FpModule> probing_set(const ExactStructure& ex);

/// f = g * pi with pi an epimorphism and the middle object effaceable, for
/// f into an effaceable functor. Throws std::invalid_argument otherwise.
struct RightFilterFactor {
  FreydObject middle;
  FreydMorphism pi;
  FreydMorphism g;
};
RightFilterFactor right_filter_factor(const FreydMorphism& f, const ExactStructure& ex);

/// One step of a weak isomorphism: a deflation whose kernel is effaceable or
/// an inflation whose cokernel is effaceable. The certificate is that kernel
/// or cokernel.
struct WeakIsoFactor {
  enum class Kind { Deflation, Inflation };
  Kind kind;
  FreydMorphism map;
  FreydObject certificate;
};

/// Splits f into a deflation and an inflation with effaceable kernel and
/// cokernel, or nullopt when f is not a weak isomorphism.
std::optional<std::vector<WeakIsoFactor>> certify_weak_iso(const FreydMorphism& f, const ExactStructure& ex);

/// The roof F <=s= F' --g--> G. The chain runs from the apex F' to F.
class Fraction {
 public:
  /// Throws std::invalid_argument when a certificate fails or the pieces do
  /// not compose.
  Fraction(ExactStructure ex, std::vector<WeakIsoFactor> chain, FreydMorphism forward);
  static Fraction from_morphism(const FreydMorphism& f, const ExactStructure& ex);
  /// F <=s= F' --id--> F'.
  static Fraction from_weak_iso(const FreydMorphism& s, const ExactStructure& ex);

  [[nodiscard]] const ExactStructure& exact_structure() const { return ex_; }
  [[nodiscard]] const std::vector<WeakIsoFactor>& chain() const { return chain_; }
  [[nodiscard]] const FreydMorphism& forward() const { return forward_; }
  [[nodiscard]] const FreydObject& apex() const { return forward_.source(); }
  [[nodiscard]] FreydObject domain() const;
  [[nodiscard]] const FreydObject& codomain() const { return forward_.target(); }
  /// The composite weak isomorphism apex -> domain.
  [[nodiscard]] FreydMorphism backward() const;

 private:
  ExactStructure ex_;
  std::vector<WeakIsoFactor> chain_;
  FreydMorphism forward_;
};

/// b after a. The Ore square is the pullback of a's forward leg along b's
/// weak isomorphism.
Fraction fraction_compose(const Fraction& a, const Fraction& b);

/// Carriers with an Auslander projection: FreeZ (either flavor) and FpZ
/// maximal.
bool has_auslander_projection(const ExactStructure& ex);
/// The cokernel of the carrier in fp modules.
FpModule auslander_project(const FreydObject& f, const ExactStructure& ex);
FpMorphism auslander_project(const FreydMorphism& f, const ExactStructure& ex);
/// g_* (s_*)^{-1}.
FpMorphism auslander_project(const Fraction& a);

/// Compares projected module maps; throws UnsupportedCarrier without a
/// projection.
bool quotient_equal(const Fraction& a, const Fraction& b);

/// F presented by M's own relation matrix.
FreydObject freyd_from_module(const FpModule& m);
/// A fraction F => G projecting to u : L(F) -> L(G), built by lifting to a
/// free presentation.
Fraction lift_module_map(const FreydObject& f, const FreydObject& g, const FpMorphism& u, const ExactStructure& ex);

/// The opposite-category wrapper: covariant coker(E(X0, -) -> E(X1, -)) for
/// f : X0 -> X1. Effaceable for the opposite structure iff f is an inflation.
struct CoFreydObject {
  FpMorphism carrier;
};
bool is_coeffaceable(const CoFreydObject& f, const ExactStructure& ex);

enum class SerreControl { Genuine, NonEffaceableMiddle };

/// Extensions, admissible subobjects and quotients, right filtering and
/// pointwise exactness of sampled conflations. With NonEffaceableMiddle the
/// subobject and quotient samples start from a non-effaceable middle term and
/// are expected to fail.
CheckReport serre_closure_check(const ExactStructure& ex, std::size_t budget, std::uint64_t seed,
                                SerreControl control = SerreControl::Genuine,
                                const SamplingBounds& bounds = {});

/// Kernel of the projection, faithfulness, fullness, essential surjectivity,
/// presentation independence and functoriality on fractions.
CheckReport auslander_check(const ExactStructure& ex, std::size_t budget, std::uint64_t seed,
                            const SamplingBounds& bounds = {});

}  // namespace tiltlab
