#include "tiltlab/exact_structure.hpp"

#include <array>
#include <sstream>

namespace tiltlab {
namespace {

constexpr std::array kCarriers{Carrier::FreeZ, Carrier::FpZ, Carrier::TorsionClassZ, Carrier::TorsionFreeClassZ,
                               Carrier::FreePolyQ};
constexpr std::array kFlavors{Flavor::Split, Flavor::Maximal, Flavor::Inherited};

bool free_type(Carrier c) {
  return c == Carrier::FreeZ || c == Carrier::TorsionFreeClassZ || c == Carrier::FreePolyQ;
}

void require_in_carrier(const FpMorphism& f, const ExactStructure& ex, const char* op) {
  if (!ex.valid()) throw std::invalid_argument(std::string(op) + ": invalid exact structure " + ex.to_string());
  if (!ex.contains(f.source()) || !ex.contains(f.target()))
    throw CarrierMismatch(std::string(op) + ": morphism does not lie in carrier " + to_string(ex.carrier));
}

}  // namespace

std::string to_string(Carrier c) {
  switch (c) {
    case Carrier::FreeZ: return "FreeZ";
    case Carrier::FpZ: return "FpZ";
    case Carrier::TorsionClassZ: return "TorsionClassZ";
    case Carrier::TorsionFreeClassZ: return "TorsionFreeClassZ";
    case Carrier::FreePolyQ: return "FreePolyQ";
  }
  return "?";
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Split: return "Split";
    case Flavor::Maximal: return "Maximal";
    case Flavor::Inherited: return "Inherited";
  }
  return "?";
}

ExactStructure ExactStructure::parse(const std::string& tag) {
  std::optional<Carrier> carrier;
  std::optional<Flavor> flavor;
  std::istringstream in(tag);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("exact structure tag: expected key=value in '" + item + "'");
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "carrier") {
      for (Carrier c : kCarriers)
        if (tiltlab::to_string(c) == value) carrier = c;
      if (!carrier) throw std::invalid_argument("exact structure tag: unknown carrier '" + value + "'");
    } else if (key == "flavor") {
      for (Flavor f : kFlavors)
        if (tiltlab::to_string(f) == value) flavor = f;
      if (!flavor) throw std::invalid_argument("exact structure tag: unknown flavor '" + value + "'");
    } else {
      throw std::invalid_argument("exact structure tag: unknown key '" + key + "'");
    }
  }
  if (!carrier || !flavor) throw std::invalid_argument("exact structure tag needs carrier and flavor: '" + tag + "'");
  ExactStructure ex{*carrier, *flavor};
  if (!ex.valid()) throw std::invalid_argument("exact structure tag: unsupported combination '" + tag + "'");
  return ex;
}

std::string ExactStructure::to_string() const {
  return "carrier=" + tiltlab::to_string(carrier) + ",flavor=" + tiltlab::to_string(flavor);
}

RingTag ExactStructure::ring() const {
  return carrier == Carrier::FreePolyQ ? RingTag::RationalPolynomials : RingTag::Integers;
}

bool ExactStructure::valid() const {
  switch (flavor) {
    case Flavor::Split: return true;
    case Flavor::Maximal: return carrier == Carrier::FreeZ || carrier == Carrier::FpZ || carrier == Carrier::FreePolyQ;
    case Flavor::Inherited: return carrier == Carrier::TorsionClassZ || carrier == Carrier::TorsionFreeClassZ;
  }
  return false;
}

bool ExactStructure::contains(const FpModule& m) const {
  if (m.ring() != ring()) return false;
  switch (carrier) {
    case Carrier::FpZ: return true;
    case Carrier::TorsionClassZ: return m.is_torsion();
    case Carrier::FreeZ:
    case Carrier::TorsionFreeClassZ:
    case Carrier::FreePolyQ: return m.is_free();
  }
  return false;
}

bool is_deflation(const FpMorphism& f, const ExactStructure& ex) {
  require_in_carrier(f, ex, "is_deflation");
  switch (ex.flavor) {
    case Flavor::Split: return lift_along(f, FpMorphism::identity(f.target())).has_value();
    case Flavor::Maximal: return is_epi(f);
    case Flavor::Inherited: return is_epi(f) && ex.contains(kernel(f).module);
  }
  return false;
}

bool is_inflation(const FpMorphism& f, const ExactStructure& ex) {
  require_in_carrier(f, ex, "is_inflation");
  switch (ex.flavor) {
    case Flavor::Split: return extend_along(f, FpMorphism::identity(f.source())).has_value();
    case Flavor::Maximal:
      // Kernels in the free categories are the monos with torsion-free cokernel.
      if (!is_mono(f)) return false;
      return !free_type(ex.carrier) || cokernel(f).module.is_free();
    case Flavor::Inherited: return is_mono(f) && ex.contains(cokernel(f).module);
  }
  return false;
}

bool is_conflation(const FpMorphism& i, const FpMorphism& p, const ExactStructure& ex) {
  if (!(i.target() == p.source())) return false;
  return is_short_exact(i, p) && is_inflation(i, ex) && is_deflation(p, ex);
}

KernelResult e_kernel(const FpMorphism& f, const ExactStructure& ex) {
  require_in_carrier(f, ex, "e_kernel");
  KernelResult k = kernel(f);
  if (ex.carrier != Carrier::TorsionClassZ) return k;
  auto t = torsion_split(k.module);
  return {t.torsion, k.inclusion * t.inclusion};
}

CokernelResult e_cokernel(const FpMorphism& f, const ExactStructure& ex) {
  require_in_carrier(f, ex, "e_cokernel");
  CokernelResult c = cokernel(f);
  if (!free_type(ex.carrier)) return c;
  auto t = torsion_split(c.module);
  return {t.quotient, t.projection * c.projection};
}

DKernel d_kernel(const FpMorphism& f, const ExactStructure& ex) {
  KernelResult k = e_kernel(f, ex);
  FpMorphism f_copy = f;
  FpMorphism incl = k.inclusion;
  auto factor = [f_copy, incl](const FpMorphism& j) -> DeflationFactor {
    if (!is_zero(f_copy * j)) throw std::invalid_argument("d_kernel factor: test map does not compose to zero");
    auto k = lift_along(incl, j);
    if (!k) throw std::logic_error("d_kernel factor: weak kernel property failed");
    return {FpMorphism::identity(j.source()), *std::move(k)};
  };
  return {k.module, k.inclusion, factor};
}

DCokernel d_cokernel(const FpMorphism& f, const ExactStructure& ex) {
  CokernelResult c = e_cokernel(f, ex);
  FpMorphism f_copy = f;
  FpMorphism proj = c.projection;
  auto factor = [f_copy, proj](const FpMorphism& j) -> InflationFactor {
    if (!is_zero(j * f_copy)) throw std::invalid_argument("d_cokernel factor: test map does not compose to zero");
    auto k = extend_along(proj, j);
    if (!k) throw std::logic_error("d_cokernel factor: weak cokernel property failed");
    return {FpMorphism::identity(j.target()), *std::move(k)};
  };
  return {c.module, c.projection, factor};
}

}  // namespace tiltlab
