#pragma once

#include "tiltlab/linalg.hpp"
#include "tiltlab/matrix.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltlab {

/// Isomorphism invariants of a finitely presented module over a PID: the
/// nonunit nonzero invariant factors (canonical associates, divisibility
/// chain) and the free rank.
struct ModuleInvariants {
  std::vector<Element> torsion;
  std::size_t free_rank = 0;

  friend bool operator==(const ModuleInvariants&, const ModuleInvariants&) = default;
  [[nodiscard]] std::string to_string(RingTag ring) const;
};

class IllDefinedMorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ResolutionTooLong : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The cokernel of a presentation matrix R^relations -> R^generators.
class FpModule {
 public:
  /// The zero module over the integers.
  FpModule();
  explicit FpModule(Matrix presentation);

  static FpModule zero(RingTag ring) { return free(ring, 0); }
  static FpModule free(RingTag ring, std::size_t rank);
  /// R/(d).
  static FpModule cyclic(const Element& d);
  static FpModule cyclic(long d) { return cyclic(Element(Integer(d))); }
  static FpModule from_invariants(RingTag ring, const std::vector<Element>& torsion, std::size_t free_rank);

  [[nodiscard]] RingTag ring() const { return presentation_.ring(); }
  [[nodiscard]] std::size_t generators() const { return presentation_.rows(); }
  [[nodiscard]] std::size_t relations() const { return presentation_.cols(); }
  [[nodiscard]] const Matrix& presentation() const { return presentation_; }
  [[nodiscard]] const ModuleInvariants& invariants() const { return invariants_; }

  [[nodiscard]] bool is_zero() const { return invariants_.torsion.empty() && invariants_.free_rank == 0; }
  [[nodiscard]] bool is_free() const { return invariants_.torsion.empty(); }
  [[nodiscard]] bool is_torsion() const { return invariants_.free_rank == 0; }
  /// Free with a presentation that has no relation columns.
  [[nodiscard]] bool is_relation_free() const { return relations() == 0; }
  [[nodiscard]] bool isomorphic_to(const FpModule& other) const {
    return ring() == other.ring() && invariants_ == other.invariants_;
  }

  /// Structural equality (same presentation matrix); isomorphism is isomorphic_to.
  friend bool operator==(const FpModule& a, const FpModule& b) { return a.presentation_ == b.presentation_; }

  [[nodiscard]] std::string to_string() const { return invariants_.to_string(ring()); }

 private:
  FpModule(Matrix presentation, ModuleInvariants invariants)
      : presentation_(std::move(presentation)), invariants_(std::move(invariants)) {}
  friend struct ModuleAccess;

  Matrix presentation_;
  ModuleInvariants invariants_;
};

/// A module homomorphism given on generators. The witness W certifies
/// matrix * P_source = P_target * W, i.e. relations go to relations.
class FpMorphism {
 public:
  FpMorphism(FpModule source, FpModule target, Matrix matrix, Matrix witness);

  /// Computes the witness; throws IllDefinedMorphism if none exists.
  static FpMorphism from_matrix(FpModule source, FpModule target, Matrix matrix);
  static std::optional<FpMorphism> try_from_matrix(FpModule source, FpModule target, Matrix matrix);
  static FpMorphism identity(const FpModule& m);
  static FpMorphism zero(const FpModule& source, const FpModule& target);

  [[nodiscard]] const FpModule& source() const { return source_; }
  [[nodiscard]] const FpModule& target() const { return target_; }
  [[nodiscard]] const Matrix& matrix() const { return matrix_; }
  [[nodiscard]] const Matrix& witness() const { return witness_; }
  [[nodiscard]] RingTag ring() const { return matrix_.ring(); }

  friend FpMorphism operator+(const FpMorphism& a, const FpMorphism& b);
  friend FpMorphism operator-(const FpMorphism& a, const FpMorphism& b);
  friend FpMorphism operator-(const FpMorphism& a);
  /// Composition: (g * f)(x) = g(f(x)).
  friend FpMorphism operator*(const FpMorphism& g, const FpMorphism& f);

 private:
  FpModule source_;
  FpModule target_;
  Matrix matrix_;
  Matrix witness_;
};

/// Equality of morphisms: the difference factors through the target's
/// relations.
bool morphism_equal(const FpMorphism& f, const FpMorphism& g);
bool is_zero(const FpMorphism& f);

struct KernelResult {
  FpModule module;
  FpMorphism inclusion;
};

struct CokernelResult {
  FpModule module;
  FpMorphism projection;
};

struct ImageFactorization {
  FpModule module;
  FpMorphism epi;   // source ->> image
  FpMorphism mono;  // image >-> target
};

/// A module in canonical (Smith-reduced) presentation together with inverse
/// isomorphisms to the original.
struct Reduction {
  FpModule module;
  FpMorphism to;    // original -> reduced
  FpMorphism from;  // reduced -> original
};

Reduction reduce(const FpModule& m);
KernelResult kernel(const FpMorphism& f);
CokernelResult cokernel(const FpMorphism& f);
ImageFactorization image(const FpMorphism& f);

bool is_mono(const FpMorphism& f);
bool is_epi(const FpMorphism& f);
bool is_iso(const FpMorphism& f);
std::optional<FpMorphism> inverse(const FpMorphism& f);

/// Some h : C -> A with f * h = g, for f : A -> B and g : C -> B.
std::optional<FpMorphism> lift_along(const FpMorphism& f, const FpMorphism& g);
/// Some h : B -> C with h * f = g, for f : A -> B and g : A -> C.
std::optional<FpMorphism> extend_along(const FpMorphism& f, const FpMorphism& g);
/// Lift of g : F -> N through an epimorphism p : E -> N. Exists whenever F is
/// free; throws std::invalid_argument otherwise.
FpMorphism lift_through_epi(const FpMorphism& p, const FpMorphism& g);

struct DirectSum {
  FpModule module;
  FpMorphism inject_first, inject_second;
  FpMorphism project_first, project_second;
};

DirectSum direct_sum(const FpModule& a, const FpModule& b);
FpModule direct_sum(const std::vector<FpModule>& parts);
/// f (+) g : A (+) C -> B (+) D.
FpMorphism direct_sum(const FpMorphism& f, const FpMorphism& g);
/// Block morphism between direct sums given componentwise; blocks[i][j] :
/// sources[j] -> targets[i].
FpMorphism block_morphism(const std::vector<FpModule>& sources, const std::vector<FpModule>& targets,
                          const std::vector<std::vector<FpMorphism>>& blocks);

struct Pullback {
  FpModule module;
  FpMorphism to_first, to_second;
};
struct Pushout {
  FpModule module;
  FpMorphism from_first, from_second;
};

/// Pullback of f : A -> C and g : B -> C.
Pullback pullback(const FpMorphism& f, const FpMorphism& g);
/// Pushout of f : A -> B and g : A -> C.
Pushout pushout(const FpMorphism& f, const FpMorphism& g);

/// i : A -> B, p : B -> C with p i = 0, i mono, p epi and ker p = im i.
bool is_short_exact(const FpMorphism& i, const FpMorphism& p);

/// Hom(M, N) as a finitely presented module, with the coordinate maps between
/// module elements and morphisms. Integers only.
class HomGroup {
 public:
  HomGroup(FpModule source, FpModule target, FpModule module, Matrix basis, Matrix trivial);

  [[nodiscard]] const FpModule& module() const { return module_; }
  [[nodiscard]] const FpModule& source() const { return source_; }
  [[nodiscard]] const FpModule& target() const { return target_; }
  /// A column of coordinates in the generators of module() -> the morphism.
  [[nodiscard]] FpMorphism to_morphism(const Matrix& coordinates) const;
  /// The morphism -> coordinates (defined modulo the module's relations).
  [[nodiscard]] Matrix coordinates(const FpMorphism& f) const;
  /// The morphism attached to generator k of module().
  [[nodiscard]] FpMorphism generator(std::size_t k) const;

 private:
  FpModule source_, target_, module_;
  Matrix basis_;    // vec(generator matrix) per generator of module_
  Matrix trivial_;  // spans vec(P_target X), the zero morphisms
};

HomGroup hom_group(const FpModule& m, const FpModule& n);

struct TorsionDecomposition {
  FpModule torsion;
  FpMorphism inclusion;
  FpModule quotient;
  FpMorphism projection;
};

/// 0 -> tM -> M -> M/tM -> 0 over any catalogued ring.
TorsionDecomposition torsion_split(const FpModule& m);
/// The same, restricted to the integers (the torsion pair of finite groups and
/// free groups).
TorsionDecomposition torsion_decompose(const FpModule& m);

/// Free resolution 0 -> F_k -> ... -> F_0 -> M -> 0 with F_0 on the given
/// generators. Entry i is the matrix F_{i+1} -> F_i. Throws ResolutionTooLong
/// if more than max_len maps would be needed.
std::vector<Matrix> projective_resolution(const FpModule& m, std::size_t max_len);

/// The same module with an injective relation matrix (same generators).
FpModule with_injective_presentation(const FpModule& m);

/// R^generators ->> M on the given generators.
FpMorphism free_cover(const FpModule& m);

}  // namespace tiltlab
