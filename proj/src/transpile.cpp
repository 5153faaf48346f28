#include <string>

#include "nisqtopo/circuit.hpp"
#include "nisqtopo/errors.hpp"

namespace nisqtopo {

namespace {

// Two-CNOT ABC construction; exact, including the phase of U3.
void lower_cu3(std::vector<Gate>& out, int c, int t, double theta, double phi, double lambda) {
  out.push_back(Gate::u3(c, 0.0, 0.0, 0.5 * (lambda + phi)));
  out.push_back(Gate::u3(t, 0.0, 0.0, 0.5 * (lambda - phi)));
  out.push_back(Gate::cnot(c, t));
  out.push_back(Gate::u3(t, -0.5 * theta, 0.0, -0.5 * (phi + lambda)));
  out.push_back(Gate::cnot(c, t));
  out.push_back(Gate::u3(t, 0.5 * theta, phi, 0.0));
}

void lower_into(std::vector<Gate>& out, const Gate& g) {
  const auto& q = g.qubits;
  switch (g.kind) {
    case GateKind::U3:
    case GateKind::CNOT: out.push_back(g); return;
    case GateKind::X: out.push_back(Gate::u3(q[0], kPi, 0.0, kPi)); return;
    case GateKind::H: out.push_back(Gate::u3(q[0], kPi / 2, 0.0, kPi)); return;
    case GateKind::SDag: out.push_back(Gate::u3(q[0], 0.0, 0.0, -kPi / 2)); return;
    case GateKind::CU3: lower_cu3(out, q[0], q[1], g.theta, g.phi, g.lambda); return;
    case GateKind::CCU3:
      for (const auto& s : ccu3_decomposition(g.theta, g.phi, g.lambda, q[0], q[1], q[2])) {
        lower_into(out, s);
      }
      return;
    case GateKind::CCX:
      for (const auto& s : ccu3_decomposition(kPi, 0.0, kPi, q[0], q[1], q[2])) {
        lower_into(out, s);
      }
      return;
    case GateKind::CXX:
      out.push_back(Gate::cnot(q[0], q[1]));
      out.push_back(Gate::cnot(q[0], q[2]));
      return;
  }
  throw UnsupportedGate("cannot transpile gate kind " + std::to_string(static_cast<int>(g.kind)));
}

} // namespace

std::vector<Gate> lower_gate(const Gate& g) {
  std::vector<Gate> out;
  lower_into(out, g);
  return out;
}

Circuit transpile(const Circuit& c) {
  Circuit out(c.width());
  std::vector<Gate> buf;
  for (const auto& g : c.gates()) {
    buf.clear();
    lower_into(buf, g);
    out.append(buf);
  }
  return out;
}

std::size_t cnot_count(const Circuit& c) {
  std::size_t n = 0;
  for (const auto& g : c.gates()) n += g.kind == GateKind::CNOT ? 1 : 0;
  return n;
}

} // namespace nisqtopo
