#include "tiltlab/serialize.hpp"

namespace tiltlab {
namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SerializationError&) {
    throw;
  } catch (const Json::exception& e) {
    throw SerializationError(std::string(what) + ": " + e.what());
  } catch (const std::logic_error& e) {
    throw SerializationError(std::string(what) + ": " + e.what());
  }
}

Json element_to_json(const Element& e) {
  if (const auto* z = std::get_if<Integer>(&e)) return z->get_str();
  Json coeffs = Json::array();
  for (const auto& c : std::get<Polynomial>(e).coefficients()) coeffs.push_back(c.get_str());
  return coeffs;
}

Element element_from_json(RingTag ring, const Json& j) {
  if (ring == RingTag::Integers) {
    Integer z;
    if (!j.is_string() || z.set_str(j.get<std::string>(), 10) != 0) throw SerializationError("bad integer entry");
    return z;
  }
  std::vector<Rational> coeffs;
  for (const auto& c : j) {
    Rational q;
    if (!c.is_string() || q.set_str(c.get<std::string>(), 10) != 0) throw SerializationError("bad rational coefficient");
    q.canonicalize();
    coeffs.push_back(q);
  }
  return Polynomial(std::move(coeffs));
}

ComplexBase base_from_string(const std::string& s) {
  for (ComplexBase b : {ComplexBase::FreeModules, ComplexBase::FpModules})
    if (to_string(b) == s) return b;
  throw SerializationError("unknown complex base '" + s + "'");
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"ring", std::string(to_string(m.ring()))}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const RingTag ring = ring_from_string(j.at("ring").get<std::string>());
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const Json& entries = j.at("entries");
    if (entries.size() != rows) throw SerializationError("matrix: row count mismatch");
    std::vector<Element> flat;
    for (const auto& row : entries) {
      if (row.size() != cols) throw SerializationError("matrix: column count mismatch");
      for (const auto& e : row) flat.push_back(element_from_json(ring, e));
    }
    return Matrix::from_elements(ring, rows, cols, flat);
  });
}

Json to_json(const FpModule& m) { return {{"presentation", to_json(m.presentation())}}; }

FpModule module_from_json(const Json& j) {
  return guarded("module", [&] { return FpModule(matrix_from_json(j.at("presentation"))); });
}

Json to_json(const FpMorphism& f) {
  return {{"source", to_json(f.source())},
          {"target", to_json(f.target())},
          {"matrix", to_json(f.matrix())},
          {"witness", to_json(f.witness())}};
}

FpMorphism morphism_from_json(const Json& j) {
  return guarded("morphism", [&] {
    return FpMorphism(module_from_json(j.at("source")), module_from_json(j.at("target")),
                      matrix_from_json(j.at("matrix")), matrix_from_json(j.at("witness")));
  });
}

Json to_json(const Complex& c) {
  Json objects = Json::array(), diffs = Json::array();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    objects.push_back(to_json(c.object(n)));
    if (n < c.hi()) diffs.push_back(to_json(c.differential(n)));
  }
  return {{"base", to_string(c.base())},
          {"ring", std::string(to_string(c.ring()))},
          {"lo", c.lo()},
          {"objects", objects},
          {"differentials", diffs}};
}

Complex complex_from_json(const Json& j) {
  return guarded("complex", [&] {
    std::vector<FpModule> objects;
    std::vector<FpMorphism> diffs;
    for (const auto& o : j.at("objects")) objects.push_back(module_from_json(o));
    for (const auto& d : j.at("differentials")) diffs.push_back(morphism_from_json(d));
    return Complex(base_from_string(j.at("base").get<std::string>()), ring_from_string(j.at("ring").get<std::string>()),
                   j.at("lo").get<int>(), std::move(objects), std::move(diffs));
  });
}

Json to_json(const ChainMap& f) {
  Json comps = Json::array();
  for (int n = f.lo(); n <= f.hi(); ++n) comps.push_back(to_json(f.component(n)));
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"lo", f.lo()}, {"components", comps}};
}

ChainMap chain_map_from_json(const Json& j) {
  return guarded("chain map", [&] {
    std::vector<FpMorphism> comps;
    for (const auto& c : j.at("components")) comps.push_back(morphism_from_json(c));
    return ChainMap(complex_from_json(j.at("source")), complex_from_json(j.at("target")), j.at("lo").get<int>(),
                    std::move(comps));
  });
}

Json to_json(const FreydObject& f) { return {{"carrier", to_json(f.carrier())}}; }

FreydObject freyd_object_from_json(const Json& j) {
  return guarded("Freyd object", [&] { return FreydObject(morphism_from_json(j.at("carrier"))); });
}

Json to_json(const FreydMorphism& f) {
  return {{"source", to_json(f.source())},
          {"target", to_json(f.target())},
          {"on_generators", to_json(f.on_generators())},
          {"on_relations", to_json(f.on_relations())}};
}

FreydMorphism freyd_morphism_from_json(const Json& j) {
  return guarded("Freyd morphism", [&] {
    return FreydMorphism(freyd_object_from_json(j.at("source")), freyd_object_from_json(j.at("target")),
                         morphism_from_json(j.at("on_generators")), morphism_from_json(j.at("on_relations")));
  });
}

Json to_json(const Fraction& f) {
  Json chain = Json::array();
  for (const auto& step : f.chain())
    chain.push_back({{"kind", step.kind == WeakIsoFactor::Kind::Deflation ? "deflation" : "inflation"},
                     {"map", to_json(step.map)},
                     {"certificate", to_json(step.certificate)}});
  return {{"exact_structure", f.exact_structure().to_string()}, {"chain", chain}, {"forward", to_json(f.forward())}};
}

Fraction fraction_from_json(const Json& j) {
  return guarded("fraction", [&] {
    std::vector<WeakIsoFactor> chain;
    for (const auto& step : j.at("chain")) {
      const auto kind = step.at("kind").get<std::string>();
      if (kind != "deflation" && kind != "inflation") throw SerializationError("fraction: unknown factor kind");
      chain.push_back({kind == "deflation" ? WeakIsoFactor::Kind::Deflation : WeakIsoFactor::Kind::Inflation,
                       freyd_morphism_from_json(step.at("map")), freyd_object_from_json(step.at("certificate"))});
    }
    return Fraction(ExactStructure::parse(j.at("exact_structure").get<std::string>()), std::move(chain),
                    freyd_morphism_from_json(j.at("forward")));
  });
}

Json to_json(const CheckReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) {
    Json ces = Json::array();
    for (const auto& c : p.counterexamples) {
      Json ce = {{"seed", c.seed}, {"detail", c.detail}};
      if (!c.payload.is_null()) ce["payload"] = c.payload;
      ces.push_back(std::move(ce));
    }
    props.push_back({{"property", p.property},
                     {"samples", p.samples},
                     {"failures", p.failures},
                     {"passed", p.passed()},
                     {"counterexamples", ces}});
  }
  return {{"subject", r.subject}, {"passed", r.passed()}, {"properties", props}};
}

CheckReport report_from_json(const Json& j) {
  return guarded("report", [&] {
    CheckReport r{j.at("subject").get<std::string>(), {}};
    for (const auto& p : j.at("properties")) {
      PropertyOutcome& out = r.property(p.at("property").get<std::string>());
      out.samples = p.at("samples").get<std::size_t>();
      out.failures = p.at("failures").get<std::size_t>();
      for (const auto& c : p.at("counterexamples"))
        out.counterexamples.push_back({out.property, c.at("seed").get<std::uint64_t>(), c.at("detail").get<std::string>(),
                                       c.value("payload", Json())});
    }
    return r;
  });
}

}  // namespace tiltlab
