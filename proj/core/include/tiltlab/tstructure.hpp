#pragma once

#include "tiltlab/complex.hpp"
#include "tiltlab/exact_structure.hpp"
#include "tiltlab/report.hpp"
#include "tiltlab/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace tiltlab {

/// Natural, HRSTilt and StarAisle act on complexes of fp-Z modules up to
/// quasi-isomorphism; Left and Right act on complexes of free modules up to
/// homotopy. CorruptedNatural is a deliberately wrong truncation pair used as
/// a negative control: its aisle and co-aisle overlap in one degree.
enum class TVariant { Natural, Left, Right, HRSTilt, StarAisle, CorruptedNatural };

enum class ClassTag { FpZ, Free, Torsion };

std::string to_string(TVariant v);
std::string to_string(ClassTag c);
ClassTag class_from_string(const std::string& s);

class UnsupportedSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TStructureSpec {
  TVariant variant = TVariant::Natural;
  /// Exact structure of Left / Right.
  ExactStructure ex{Carrier::FreeZ, Flavor::Split};
  /// Class and length of StarAisle.
  ClassTag star_class = ClassTag::Torsion;
  int star_n = 1;

  static TStructureSpec natural() { return {}; }
  static TStructureSpec left(ExactStructure ex = {Carrier::FreeZ, Flavor::Split});
  static TStructureSpec right(ExactStructure ex = {Carrier::FreeZ, Flavor::Split});
  static TStructureSpec hrs_tilt();
  static TStructureSpec star(ClassTag c, int n);
  static TStructureSpec corrupted();

  /// Config strings: "variant=Natural", "variant=Left,carrier=FreeZ,flavor=Split",
  /// "variant=HRSTilt,pair=torsion/free", "variant=StarAisle,class=Torsion,n=1",
  /// "variant=CorruptedNatural".
  static TStructureSpec parse(const std::string& config);
  [[nodiscard]] std::string to_string() const;
  /// Throws UnsupportedSpec for combinations without an implementation.
  void validate() const;
  /// True for Left / Right (homotopy category of free complexes).
  [[nodiscard]] bool on_homotopy_category() const;

  friend bool operator==(const TStructureSpec&, const TStructureSpec&) = default;
};

/// tau^{<=n} X with its counit (tau^{<=n} X -> X), or tau^{>=n} X with its
/// unit (X -> tau^{>=n} X).
struct Truncation {
  Complex complex;
  ChainMap map;
};

Truncation truncate_le(const TStructureSpec& spec, int n, const Complex& x);
Truncation truncate_ge(const TStructureSpec& spec, int n, const Complex& x);

/// Zero in the ambient category: contractible for Left / Right, exact
/// otherwise.
bool is_zero_object(const TStructureSpec& spec, const Complex& x);
/// Isomorphism in the ambient category for complexes known to be related by
/// the chain map f.
bool is_ambient_iso(const TStructureSpec& spec, const ChainMap& f);
/// Hom in the ambient category from a to b vanishes.
bool hom_vanishes(const TStructureSpec& spec, const Complex& a, const Complex& b);

bool in_aisle(const TStructureSpec& spec, const Complex& x);    // D^{<=0}
bool in_coaisle(const TStructureSpec& spec, const Complex& x);  // D^{>=0}
bool heart_membership(const TStructureSpec& spec, const Complex& x);

/// A = tau^{<=0} X -> X -> B = tau^{>=1} X, checked against the cone of the
/// counit: u c is null-homotopic and the induced map cone(c) -> B is an
/// isomorphism.
struct ApproximatingTriangle {
  Truncation a;
  Truncation b;
  bool composite_null = false;
  bool cone_matches = false;
  [[nodiscard]] bool valid() const { return composite_null && cone_matches; }
};
ApproximatingTriangle approximating_triangle(const TStructureSpec& spec, const Complex& x);

/// tail -> X -> stalks: tail in D^{<=-n} and factors[i] the class object
/// contributing E[i].
struct StarDecomposition {
  Truncation tail;
  std::vector<FpModule> factors;
};
std::optional<StarDecomposition> star_membership(const Complex& x, ClassTag c, int n);

/// Sampled verification of shift closure, orthogonality and approximating
/// triangles.
CheckReport check_tstructure_axioms(const TStructureSpec& spec, std::size_t budget, std::uint64_t seed,
                                    const SamplingBounds& bounds = {});

enum class TiltMode { Tilting, Cotilting };
std::string to_string(TiltMode m);

bool class_contains(ClassTag c, const FpModule& m);
/// Embedding of m into a class object, or nullopt when none exists.
std::optional<FpMorphism> cogeneration_witness(ClassTag c, const FpModule& m);
/// Epimorphism from a class object onto m, or nullopt when none exists.
std::optional<FpMorphism> generation_witness(ClassTag c, const FpModule& m);

/// Tilting: cogeneration, extension closure, kernels, and B in the class for
/// every exact X_n -> ... -> X_1 -> B -> 0 with X_i in the class. Cotilting
/// checks the dual conditions.
CheckReport tilting_class_check(ClassTag c, TiltMode mode, int n, std::size_t budget, std::uint64_t seed,
                                const SamplingBounds& bounds = {});

/// The free module a complex in both hearts is isomorphic to, or nullopt.
std::optional<FpModule> intersection_normal_form(const TStructureSpec& a, const TStructureSpec& b, const Complex& x);

/// Left heart on FreeZ <-> fp-Z: an object goes to H^0, a module M to the
/// two-term complex of an injective presentation in degrees -1, 0.
FpModule heart_to_module(const Complex& x);
Complex module_to_heart(const FpModule& m);
FpMorphism heart_map_to_module(const ChainMap& f);
ChainMap module_map_to_heart(const FpMorphism& u);
/// The natural isomorphism M -> heart_to_module(module_to_heart(M)).
FpMorphism heart_unit(const FpModule& m);
/// The map Hom_K(C(M), C(N)) -> Hom(M, N) in generator coordinates; the
/// functor is fully faithful on (M, N) iff this is an isomorphism.
FpMorphism heart_hom_comparison(const FpModule& m, const FpModule& n);

}  // namespace tiltlab
