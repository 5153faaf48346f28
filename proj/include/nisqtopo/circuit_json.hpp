#pragma once

#include <nlohmann/json.hpp>

#include "nisqtopo/circuit.hpp"

namespace nisqtopo {

/// {"width": w, "gates": [{"kind": "CU3", "qubits": [1, 2], "angles": [t, p, l]}, ...]}
/// Angles are present only for U3-family gates.
nlohmann::json circuit_to_json(const Circuit& c);

/// Inverse of circuit_to_json. Throws UnsupportedGate on unknown kinds.
Circuit circuit_from_json(const nlohmann::json& j);

} // namespace nisqtopo
