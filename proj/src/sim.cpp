#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "nisqtopo/errors.hpp"
#include "nisqtopo/kernels.hpp"
#include "nisqtopo/rng.hpp"
#include "nisqtopo/sim.hpp"

namespace nisqtopo {

void apply_gate(DensityMatrix& rho, const Gate& g) {
  for (const auto& op : controlled_ops(g)) rho.apply_controlled(op.control_mask, op.target, op.u);
}

NoiseModel NoiseModel::make(double eps1, double eps2) {
  auto ok = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!ok(eps1) || !ok(eps2)) throw std::invalid_argument("noise strengths must be in [0, 1]");
  return {eps1, eps2};
}

NoiseModel NoiseModel::coupled(double eps1) { return make(eps1, 10.0 * eps1); }

ShotPlan ShotPlan::make(std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  return {shots, seed};
}

DensityMatrix run(const Circuit& c, const NoiseModel& noise, const StepObserver& observer) {
  if (!noise.noiseless()) {
    for (const auto& g : c.gates()) {
      if (g.qubits.size() > 1 && g.kind != GateKind::CNOT) {
        throw UntranspiledCircuit("noisy simulation needs a {U3, CNOT} circuit, found " +
                                  std::string(to_string(g.kind)));
      }
    }
  }
  DensityMatrix rho(c.width());
  for (std::size_t idx = 0; idx < c.gates().size(); ++idx) {
    const Gate& g = c.gates()[idx];
    apply_gate(rho, g);
    if (!noise.noiseless()) {
      std::uint32_t mask = 0;
      for (int q : g.qubits) mask |= std::uint32_t{1} << q;
      rho.depolarize(mask, g.qubits.size() == 1 ? noise.eps1 : noise.eps2);
    }
    if (observer) observer(rho, idx);
  }
  return rho;
}

double exact_expectation_Z(const DensityMatrix& rho, int qubit) {
  if (qubit < 0 || qubit >= rho.width()) throw std::invalid_argument("qubit out of range");
  const std::size_t d = rho.dim();
  std::vector<double> w(d);
  for (std::size_t r = 0; r < d; ++r) w[r] = ((r >> qubit) & 1u) != 0 ? -1.0 : 1.0;
  // Real parts of the diagonal sit 2 (d + 1) doubles apart.
  return kernels::active_kernels().strided_dot(reinterpret_cast<const double*>(rho.data()),
                                               2 * (d + 1), w.data(), d);
}

double sample_expectation(double z, const ShotPlan& plan) {
  if (plan.shots < 1) throw std::invalid_argument("shots must be positive");
  const double p = std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
  CounterRng rng(plan.seed);
  std::int64_t plus = 0;
  for (std::int64_t s = 0; s < plan.shots; ++s) plus += rng.next_unit() < p ? 1 : 0;
  return static_cast<double>(2 * plus - plan.shots) / static_cast<double>(plan.shots);
}

double sample_expectation_Z(const DensityMatrix& rho, int qubit, const ShotPlan& plan) {
  return sample_expectation(exact_expectation_Z(rho, qubit), plan);
}

cplx overlap_expectation(const MomentumPoint& k_from, const MomentumPoint& k_to, Band band_from,
                         Band band_to, const ModelParams& p, const NoiseModel& noise) {
  double part[2];
  for (auto which : {OverlapPart::real, OverlapPart::imag}) {
    Circuit c = build_overlap_circuit(k_from, k_to, band_from, band_to, p, which);
    if (!noise.noiseless()) c = transpile(c);
    part[which == OverlapPart::real ? 0 : 1] = exact_expectation_Z(run(c, noise), kAncilla);
  }
  return {part[0], part[1]};
}

cplx sample_overlap(cplx expectation, const ShotPlan& plan) {
  const ShotPlan re{plan.shots, derive_seed(plan.seed, {0})};
  const ShotPlan im{plan.shots, derive_seed(plan.seed, {1})};
  return {sample_expectation(expectation.real(), re), sample_expectation(expectation.imag(), im)};
}

cplx estimate_overlap(const MomentumPoint& k_from, const MomentumPoint& k_to, Band band_from,
                      Band band_to, const ModelParams& p, const NoiseModel& noise,
                      const std::optional<ShotPlan>& plan) {
  const cplx z = overlap_expectation(k_from, k_to, band_from, band_to, p, noise);
  return plan ? sample_overlap(z, *plan) : z;
}

} // namespace nisqtopo
