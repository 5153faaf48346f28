#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "nisqtopo/errors.hpp"
#include "nisqtopo/overlap_field.hpp"
#include "nisqtopo/rng.hpp"
#include "nisqtopo/sim.hpp"
#include "oracles.hpp"

using namespace nisqtopo;

namespace {

Eigen::MatrixXcd random_density(int width, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  const int n = 1 << width;
  Eigen::MatrixXcd a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = {d(rng), d(rng)};
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

std::vector<oracle::Mat2> paulis() {
  return {oracle::Mat2::Identity(), oracle::sx(), oracle::sy(), oracle::sz()};
}

std::vector<Circuit> builder_circuits() {
  const ModelParams p(1.9);
  std::vector<Circuit> cs;
  cs.push_back(build_overlap_circuit({0.3, 1.2}, {1.0, 1.2}, Band::minus, Band::minus, p,
                                     OverlapPart::real));
  cs.push_back(build_overlap_circuit({-2.0, 0.4}, {-2.0, 1.1}, Band::plus, Band::minus, p,
                                     OverlapPart::imag));
  Circuit prep = build_state_prep({0.5, -0.5}, Band::plus, p);
  cs.push_back(prep);
  return cs;
}

} // namespace

TEST_CASE("initial_and_mixed_states") {
  const DensityMatrix rho(3);
  CHECK(rho(0, 0) == cplx(1.0));
  CHECK(exact_expectation_Z(rho, 0) == 1.0);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
  for (int q = 0; q < 3; ++q) CHECK(std::abs(exact_expectation_Z(mixed, q)) < 1e-15);
  CHECK(std::abs(mixed.trace() - 1.0) < 1e-15);
}

TEST_CASE("noiseless_run_equals_statevector_projector") {
  for (const Circuit& c : builder_circuits()) {
    const Eigen::VectorXcd psi = simulate_statevector(c);
    const DensityMatrix rho = run(c, {});
    CHECK((rho.to_matrix() - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    const DensityMatrix rho_t = run(transpile(c), {});
    const Eigen::VectorXcd psi_t = simulate_statevector(transpile(c));
    CHECK((rho_t.to_matrix() - psi_t * psi_t.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("apply_controlled_matches_dense_conjugation") {
  std::mt19937_64 rng(17);
  const Eigen::MatrixXcd m = random_density(3, rng);
  const oracle::Mat2 u = oracle::u3(0.7, -0.2, 1.9);
  DensityMatrix rho = DensityMatrix::from_matrix(m);
  rho.apply_controlled(0b101, 1, u);
  const Eigen::MatrixXcd big = oracle::controlled(u, {0, 2}, 1, 3);
  CHECK((rho.to_matrix() - big * m * big.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("depolarizing_channel_matches_pauli_twirl") {
  std::mt19937_64 rng(23);
  const auto ps = paulis();
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXcd m = random_density(3, rng);
    const double eps = 0.37;
    // One qubit: (1 - eps) rho + eps / 4 sum_P P rho P.
    for (int q = 0; q < 3; ++q) {
      Eigen::MatrixXcd ref = (1 - eps) * m;
      for (const auto& p : ps) {
        const Eigen::MatrixXcd big = oracle::single(p, q, 3);
        ref += eps / 4 * big * m * big.adjoint();
      }
      DensityMatrix rho = DensityMatrix::from_matrix(m);
      rho.depolarize(1u << q, eps);
      CHECK((rho.to_matrix() - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
    // Two qubits: average over the 16 two-qubit Paulis.
    Eigen::MatrixXcd ref = (1 - eps) * m;
    for (const auto& p : ps) {
      for (const auto& r : ps) {
        const Eigen::MatrixXcd big = oracle::single(p, 0, 3) * oracle::single(r, 2, 3);
        ref += eps / 16 * big * m * big.adjoint();
      }
    }
    DensityMatrix rho = DensityMatrix::from_matrix(m);
    rho.depolarize(0b101, eps);
    CHECK((rho.to_matrix() - ref).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("fully_depolarized_qubit_is_maximally_mixed") {
  Circuit c(1);
  c.add(Gate::u3(0, 0.9, 0.1, 0.2));
  const DensityMatrix rho = run(c, NoiseModel::make(1.0, 0.0));
  CHECK(std::abs(rho(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(rho(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(rho(0, 1)) < 1e-15);
}

TEST_CASE("noisy_run_keeps_state_physical_after_every_step") {
  const Circuit c = transpile(builder_circuits()[1]);
  std::size_t steps = 0;
  run(c, NoiseModel::coupled(0.008), [&](const DensityMatrix& rho, std::size_t) {
    ++steps;
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(rho.hermiticity_error() < 1e-12);
    CHECK(rho.min_eigenvalue() > -1e-10);
  });
  CHECK(steps == c.size());
}

TEST_CASE("maximally_mixed_state_is_a_fixed_point") {
  const Circuit c = transpile(builder_circuits()[0]);
  DensityMatrix rho = DensityMatrix::maximally_mixed(3);
  const NoiseModel noise = NoiseModel::coupled(0.01);
  for (const Gate& g : c.gates()) {
    apply_gate(rho, g);
    std::uint32_t mask = 0;
    for (int q : g.qubits) mask |= 1u << q;
    rho.depolarize(mask, g.qubits.size() == 1 ? noise.eps1 : noise.eps2);
    CHECK((rho.to_matrix() - Eigen::MatrixXcd::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("noise_requires_transpiled_circuits") {
  Circuit c(3);
  c.add(Gate::ccx(0, 1, 2));
  CHECK_THROWS_AS(run(c, NoiseModel::coupled(0.001)), UntranspiledCircuit);
  CHECK_NOTHROW(run(c, {}));
  Circuit cu(3);
  cu.add(Gate::cu3(0, 1, 0.1, 0.2, 0.3));
  CHECK_THROWS_AS(run(cu, NoiseModel::make(0.0, 0.01)), UntranspiledCircuit);
}

TEST_CASE("noise_model_validation") {
  CHECK(NoiseModel::coupled(0.008).eps2 == doctest::Approx(0.08));
  CHECK_THROWS_AS(NoiseModel::make(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::coupled(0.2), std::invalid_argument);
  CHECK_THROWS_AS(ShotPlan::make(0, 1), std::invalid_argument);
}

TEST_CASE("shot_sampling_examples") {
  CHECK(sample_expectation_Z(DensityMatrix(3), 0, {100, 5}) == 1.0);
  const double a = sample_expectation(0.25, {5120, 42});
  CHECK(a == sample_expectation(0.25, {5120, 42}));
  CHECK(a != sample_expectation(0.25, {5120, 43}));
  // Estimates are multiples of 2 / shots.
  CHECK(std::abs(a * 2560 - std::round(a * 2560)) < 1e-9);
}

TEST_CASE("shot_noise_concentration") {
  // |estimate| < 5 / sqrt(N) is a 5-sigma event for z = 0.
  const double bound = 5.0 / std::sqrt(5120.0);
  int inside = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    inside += std::abs(sample_expectation(0.0, {5120, derive_seed(1, {s})})) < bound;
  }
  CHECK(inside >= 9999);
}

TEST_CASE("shot_estimator_is_unbiased") {
  const double z = 0.3;
  const int shots = 200, seeds = 10000;
  double mean = 0.0;
  for (int s = 0; s < seeds; ++s) {
    mean += sample_expectation(z, {shots, derive_seed(2, {std::uint64_t(s)})});
  }
  mean /= seeds;
  const double se = std::sqrt((1 - z * z) / shots / seeds);
  CHECK(std::abs(mean - z) < 4 * se);
}

TEST_CASE("estimate_overlap_noise_free") {
  const ModelParams p(1.9);
  const MomentumPoint k(0.4, -2.2), k2(1.1, -2.2);
  CHECK(std::abs(estimate_overlap(k, k, Band::minus, Band::minus, p, {}, std::nullopt) - 1.0) <
        1e-10);
  for (auto a : {Band::plus, Band::minus}) {
    for (auto b : {Band::plus, Band::minus}) {
      CHECK(std::abs(estimate_overlap(k, k2, a, b, p, {}, std::nullopt) -
                     exact_overlap(k, k2, a, b, p)) < 1e-10);
    }
  }
}

TEST_CASE("noise_contracts_the_ancilla_signal") {
  const ModelParams p(1.9);
  const MomentumPoint k(0.4, -2.2), k2(1.1, -2.2);
  const cplx clean = overlap_expectation(k, k2, Band::minus, Band::minus, p, {});
  const cplx noisy = overlap_expectation(k, k2, Band::minus, Band::minus, p,
                                         NoiseModel::coupled(0.008));
  CHECK(std::abs(noisy) < std::abs(clean));
  // Same exact expectation, different shot seeds.
  const ShotPlan plan{5120, 9};
  CHECK(sample_overlap(noisy, plan) == sample_overlap(noisy, plan));
}

TEST_CASE("noisy_link_phase_calibration") {
  // Monte Carlo band for links with |overlap| > 0.8 at mu = 1.9, 5120 shots,
  // 20 seeds per link: fraction whose phase error is below 0.3 rad.
  const MeshGrid mesh;
  const ModelParams p(1.9);
  auto fraction = [&](double eps1) {
    int ok = 0, total = 0;
    for (int j = 0; j < 8; ++j) {
      for (int i = 0; i < 8; ++i) {
        const MomentumPoint k = mesh.point(i, j), k2 = mesh.point(i + 1, j);
        const cplx exact = exact_overlap(k, k2, Band::minus, Band::minus, p);
        if (std::abs(exact) <= 0.8) continue;
        const cplx z =
            overlap_expectation(k, k2, Band::minus, Band::minus, p, NoiseModel::coupled(eps1));
        for (std::uint64_t s = 0; s < 20; ++s) {
          const cplx est = sample_overlap(
              z, {5120, derive_seed(77, {std::uint64_t(i), std::uint64_t(j), s})});
          ok += std::abs(std::arg(est / exact)) < 0.3;
          ++total;
        }
      }
    }
    CHECK(total == 1240);
    return static_cast<double>(ok) / total;
  };
  // Measured: 0.3419 at eps1 = 0.008, 0.9395 at 0.005, 1.0 at 0.003.
  CHECK(fraction(0.008) == doctest::Approx(0.3419).epsilon(0.01));
  CHECK(fraction(0.005) == doctest::Approx(0.9395).epsilon(0.01));
  CHECK(fraction(0.003) == 1.0);
}

TEST_CASE("density_matrix_json_dump") {
  const nlohmann::json j = density_matrix_to_json(DensityMatrix(2));
  CHECK(j.at("width") == 2);
  CHECK(j.at("re")[0][0] == 1.0);
  CHECK(j.at("im").size() == 4);
}
