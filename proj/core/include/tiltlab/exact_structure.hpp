#pragma once

#include "tiltlab/fp_module.hpp"

#include <functional>
#include <string>

namespace tiltlab {

enum class Carrier { FreeZ, FpZ, TorsionClassZ, TorsionFreeClassZ, FreePolyQ };
enum class Flavor { Split, Maximal, Inherited };

std::string to_string(Carrier c);
std::string to_string(Flavor f);

class CarrierMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One of the catalogued exact structures. Valid combinations: Split on any
/// carrier, Maximal on FreeZ / FpZ / FreePolyQ, Inherited on the two classes.
struct ExactStructure {
  Carrier carrier = Carrier::FpZ;
  Flavor flavor = Flavor::Maximal;

  /// Parses "carrier=FreeZ,flavor=Split"; throws std::invalid_argument.
  static ExactStructure parse(const std::string& tag);
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] RingTag ring() const;
  [[nodiscard]] bool valid() const;
  /// Membership of an object in the carrier category.
  [[nodiscard]] bool contains(const FpModule& m) const;

  friend bool operator==(const ExactStructure&, const ExactStructure&) = default;
};

bool is_deflation(const FpMorphism& f, const ExactStructure& ex);
bool is_inflation(const FpMorphism& f, const ExactStructure& ex);
bool is_conflation(const FpMorphism& i, const FpMorphism& p, const ExactStructure& ex);

/// Kernel and cokernel computed inside the carrier category.
KernelResult e_kernel(const FpMorphism& f, const ExactStructure& ex);
CokernelResult e_cokernel(const FpMorphism& f, const ExactStructure& ex);

/// j * cover = inclusion * map, with cover a deflation.
struct DeflationFactor {
  FpMorphism cover;
  FpMorphism map;
};
/// inflation * j = map * projection, with inflation an inflation.
struct InflationFactor {
  FpMorphism inflation;
  FpMorphism map;
};

struct DKernel {
  FpModule module;
  FpMorphism inclusion;
  /// Factorizes a test map j with f * j = 0; throws std::invalid_argument
  /// when f * j != 0.
  std::function<DeflationFactor(const FpMorphism&)> factor;
};

struct DCokernel {
  FpModule module;
  FpMorphism projection;
  std::function<InflationFactor(const FpMorphism&)> factor;
};

DKernel d_kernel(const FpMorphism& f, const ExactStructure& ex);
DCokernel d_cokernel(const FpMorphism& f, const ExactStructure& ex);

}  // namespace tiltlab
