#pragma once

#include "tiltlab/complex.hpp"
#include "tiltlab/freyd.hpp"
#include "tiltlab/report.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace tiltlab {

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integers are decimal strings; Q[x] entries are coefficient lists of
// "p/q" strings, lowest degree first. Loading validates every invariant the
// constructors check, so a round trip is exact.

Json to_json(const Matrix& m);
Json to_json(const FpModule& m);
Json to_json(const FpMorphism& f);
Json to_json(const Complex& c);
Json to_json(const ChainMap& f);
Json to_json(const FreydObject& f);
Json to_json(const FreydMorphism& f);
Json to_json(const Fraction& f);
Json to_json(const CheckReport& r);

Matrix matrix_from_json(const Json& j);
FpModule module_from_json(const Json& j);
FpMorphism morphism_from_json(const Json& j);
Complex complex_from_json(const Json& j);
ChainMap chain_map_from_json(const Json& j);
FreydObject freyd_object_from_json(const Json& j);
FreydMorphism freyd_morphism_from_json(const Json& j);
Fraction fraction_from_json(const Json& j);
CheckReport report_from_json(const Json& j);

}  // namespace tiltlab
