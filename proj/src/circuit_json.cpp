#include "nisqtopo/circuit_json.hpp"

#include <string>

#include "nisqtopo/errors.hpp"

namespace nisqtopo {

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates()) {
    nlohmann::json e = {{"kind", std::string(to_string(g.kind))}, {"qubits", g.qubits}};
    if (g.has_angles()) e["angles"] = {g.theta, g.phi, g.lambda};
    gates.push_back(std::move(e));
  }
  return {{"width", c.width()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c(j.at("width").get<int>());
  for (const auto& e : j.at("gates")) {
    Gate g;
    g.kind = gate_kind_from_string(e.at("kind").get<std::string>());
    g.qubits = e.at("qubits").get<std::vector<int>>();
    if (g.has_angles()) {
      const auto& a = e.at("angles");
      if (!a.is_array() || a.size() != 3) throw ConfigError("gate angles must be a 3-element array");
      g.theta = a[0].get<double>();
      g.phi = a[1].get<double>();
      g.lambda = a[2].get<double>();
    }
    c.add(std::move(g));
  }
  return c;
}

} // namespace nisqtopo
