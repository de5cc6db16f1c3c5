#pragma once

#include "tiltlab/exact_structure.hpp"
#include "tiltlab/fp_module.hpp"

#include <optional>
#include <vector>

namespace tiltlab {

enum class ComplexBase { FreeModules, FpModules };

std::string to_string(ComplexBase base);

class NonFreeEntries : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded cochain complex. objects[k] sits in degree lo + k and
/// differentials[k] : objects[k] -> objects[k + 1]. Outside the stored window
/// every object is zero.
class Complex {
 public:
  Complex(ComplexBase base, RingTag ring, int lo, std::vector<FpModule> objects, std::vector<FpMorphism> differentials);

  static Complex zero(RingTag ring, ComplexBase base = ComplexBase::FpModules);
  /// M placed in one degree. The base is FreeModules when M has no relations.
  static Complex stalk(const FpModule& m, int degree);
  /// d : A -> B with A in degree lo.
  static Complex two_term(const FpMorphism& d, int lo);

  [[nodiscard]] ComplexBase base() const { return base_; }
  [[nodiscard]] RingTag ring() const { return ring_; }
  [[nodiscard]] int lo() const { return lo_; }
  /// Last stored degree; lo() - 1 for the empty window.
  [[nodiscard]] int hi() const { return lo_ + static_cast<int>(objects_.size()) - 1; }
  [[nodiscard]] bool in_window(int n) const { return n >= lo_ && n <= hi(); }
  [[nodiscard]] const FpModule& object(int n) const;
  /// d^n : X^n -> X^{n+1}.
  [[nodiscard]] FpMorphism differential(int n) const;
  [[nodiscard]] bool is_free_entried() const;
  /// Drops zero objects at both ends of the window.
  [[nodiscard]] Complex trimmed() const;
  /// The same complex re-tagged as a complex of fp modules.
  [[nodiscard]] Complex as_fp() const;

  friend bool operator==(const Complex& a, const Complex& b);

 private:
  ComplexBase base_;
  RingTag ring_;
  int lo_;
  std::vector<FpModule> objects_;
  std::vector<FpMorphism> differentials_;
  FpModule zero_;
};

/// Degreewise morphisms commuting with the differentials.
class ChainMap {
 public:
  /// components[k] sits in degree lo + k; others are zero.
  ChainMap(Complex source, Complex target, int lo, std::vector<FpMorphism> components);

  static ChainMap identity(const Complex& c);
  static ChainMap zero(const Complex& source, const Complex& target);

  [[nodiscard]] const Complex& source() const { return source_; }
  [[nodiscard]] const Complex& target() const { return target_; }
  [[nodiscard]] FpMorphism component(int n) const;
  /// Smallest window containing both supports.
  [[nodiscard]] int lo() const;
  [[nodiscard]] int hi() const;

  friend ChainMap operator+(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a, const ChainMap& b);
  friend ChainMap operator-(const ChainMap& a);
  friend ChainMap operator*(const ChainMap& g, const ChainMap& f);

 private:
  Complex source_, target_;
  int lo_;
  std::vector<FpMorphism> components_;
};

/// Degreewise equality up to morphism_equal.
bool chain_map_equal(const ChainMap& f, const ChainMap& g);

/// h^n : X^n -> Y^{n-1}.
struct Homotopy {
  int lo = 0;
  std::vector<FpMorphism> components;
};

/// True when f = d h + h d degreewise.
bool certifies_nullhomotopy(const ChainMap& f, const Homotopy& h);

/// Decides whether f is null-homotopic by one linear system in the homotopy
/// components and their relation witnesses. Decidable for any fp entries.
std::optional<Homotopy> is_nullhomotopic(const ChainMap& f);
bool homotopic(const ChainMap& f, const ChainMap& g);
bool is_contractible(const Complex& c);

/// X[k]^n = X^{n+k}, differential (-1)^k d.
Complex shift(const Complex& c, int k);
ChainMap shift(const ChainMap& f, int k);

Complex direct_sum(const Complex& a, const Complex& b);

/// C^n = Y^n (+) X^{n+1}, d = [[d_Y, f^{n+1}], [0, -d_X^{n+1}]], with the
/// triangle maps Y -> C -> X[1].
struct Cone {
  Complex complex;
  ChainMap inclusion;
  ChainMap projection;
};
Cone cone(const ChainMap& f);

struct CohomologyData {
  KernelResult cycles;     // ker d^n
  CokernelResult classes;  // cycles ->> H^n
};
CohomologyData cohomology_data(const Complex& c, int n);
FpModule cohomology(const Complex& c, int n);
FpMorphism cohomology_map(const ChainMap& f, int n);
bool is_exact(const Complex& c);
bool is_quasi_isomorphism(const ChainMap& f);
/// Isomorphism in the derived category of fp modules over a PID: cohomology
/// agrees degreewise.
bool derived_isomorphic(const Complex& a, const Complex& b);

/// The hom complex differential delta^m : Hom^m(X, Y) -> Hom^{m+1}(X, Y) on
/// column-major vectorised components, for free-entried X and Y.
Matrix hom_differential(const Complex& x, const Complex& y, int m);

/// H^n of the hom complex together with cycle representatives.
struct DerivedHom {
  FpModule module;
  Matrix cycles;  // columns: vectorised chain maps X -> Y[n], one per generator of module
  int n = 0;
};
DerivedHom derived_hom_data(const Complex& x, const Complex& y, int n);
FpModule derived_hom(const Complex& x, const Complex& y, int n);
/// The chain map X -> Y[n] encoded by a hom-complex vector.
ChainMap chain_map_from_vector(const Complex& x, const Complex& y, int n, const Matrix& v);

/// A free-entried complex with a quasi-isomorphism onto c.
struct FreeModel {
  Complex complex;
  ChainMap augmentation;
};
FreeModel free_model(const Complex& c);
/// The direct sum of the shifted two-term resolutions of the cohomology; over
/// a PID this is isomorphic to c in the derived category.
Complex formal_model(const Complex& c);

/// Each differential factors through its image I^n with I^{n-1} >-> X^n ->> I^n
/// conflations of ex; on success returns the image objects.
std::optional<std::vector<ImageFactorization>> acyclicity_witness(const Complex& c, const ExactStructure& ex);
bool is_acyclic_wrt(const Complex& c, const ExactStructure& ex);

}  // namespace tiltlab
