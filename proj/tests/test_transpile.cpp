#include <doctest.h>

#include <random>

#include "nisqtopo/circuit.hpp"
#include "nisqtopo/errors.hpp"
#include "oracles.hpp"

using namespace nisqtopo;

namespace {

bool in_basis(const Circuit& c) {
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::U3 && g.kind != GateKind::CNOT) return false;
  }
  return true;
}

} // namespace

TEST_CASE("basis_circuit_passes_through") {
  Circuit c(3);
  c.add(Gate::u3(0, 0.1, 0.2, 0.3)).add(Gate::cnot(0, 2)).add(Gate::u3(2, -1, 0, 1));
  CHECK(transpile(c) == c);
}

TEST_CASE("cnot_count_basics") {
  CHECK(cnot_count(Circuit(3)) == 0);
  Circuit c(2);
  c.add(Gate::cnot(1, 0));
  CHECK(cnot_count(c) == 1);
}

TEST_CASE("single_cu3_uses_two_cnots_and_is_exact") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> a(-7, 7);
  for (int n = 0; n < 50; ++n) {
    Circuit c(2);
    c.add(Gate::cu3(n % 2, 1 - n % 2, a(rng), a(rng), a(rng)));
    const Circuit t = transpile(c);
    CHECK(cnot_count(t) == 2);
    CHECK(in_basis(t));
    // The two-CNOT construction keeps the global phase too.
    CHECK((circuit_unitary(t) - circuit_unitary(c)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("every_gate_kind_lowers_faithfully") {
  const std::vector<Gate> gates = {Gate::x(1),
                                   Gate::h(0),
                                   Gate::sdag(2),
                                   Gate::cu3(2, 1, 0.5, 1.5, -0.5),
                                   Gate::ccx(0, 2, 1),
                                   Gate::ccu3(0, 1, 2, 2.5, -0.3, 0.9),
                                   Gate::cxx(0, 1, 2)};
  for (const auto& g : gates) {
    Circuit c(3);
    c.add(g);
    const Circuit t = transpile(c);
    CHECK(in_basis(t));
    CHECK(oracle::phase_distance(circuit_unitary(t), circuit_unitary(c)) < 1e-9);
  }
  Circuit cxx(3);
  cxx.add(Gate::cxx(0, 1, 2));
  CHECK(cnot_count(transpile(cxx)) == 2);
}

TEST_CASE("unknown_gate_kind_is_rejected") {
  Gate g = Gate::x(0);
  g.kind = static_cast<GateKind>(42);
  CHECK_THROWS_AS(lower_gate(g), UnsupportedGate);
}

TEST_CASE("overlap_circuits_transpile_faithfully") {
  const ModelParams p(1.9);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> k(-kPi, kPi);
  for (int n = 0; n < 10; ++n) {
    const MomentumPoint a(k(rng), k(rng)), b(k(rng), k(rng));
    for (auto part : {OverlapPart::real, OverlapPart::imag}) {
      for (auto bb : {Band::plus, Band::minus}) {
        const Circuit c = build_overlap_circuit(a, b, Band::minus, bb, p, part);
        const Circuit t = transpile(c);
        CHECK(in_basis(t));
        CHECK(oracle::phase_distance(circuit_unitary(t), circuit_unitary(c)) < 1e-9);
        const std::size_t n_cx = cnot_count(t);
        CHECK(n_cx >= 40);
        CHECK(n_cx <= 80);
        // Two CCX (8 each) and one CCU3 (8) per controlled prep, two CNOTs of
        // state prep, plus two for the interband CXX.
        CHECK(n_cx == (bb == Band::minus ? 52u : 54u));
      }
    }
  }
}
