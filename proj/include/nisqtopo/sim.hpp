#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include "nisqtopo/circuit.hpp"
#include "nisqtopo/model.hpp"

namespace nisqtopo {

/// Dense 2^w x 2^w density matrix, row-major.
class DensityMatrix {
public:
  /// |0...0><0...0| on `width` qubits.
  explicit DensityMatrix(int width);

  static DensityMatrix maximally_mixed(int width);
  static DensityMatrix from_pure(const Eigen::VectorXcd& psi);
  static DensityMatrix from_matrix(const Eigen::MatrixXcd& m);

  int width() const { return width_; }
  std::size_t dim() const { return dim_; }

  cplx operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }

  cplx* row(std::size_t r) { return data_.data() + r * dim_; }
  const cplx* row(std::size_t r) const { return data_.data() + r * dim_; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  Eigen::MatrixXcd to_matrix() const;

  cplx trace() const;
  /// max |rho - rho^dag| entrywise.
  double hermiticity_error() const;
  double min_eigenvalue() const;

  /// rho -> u rho u^dag where u acts on `target` when every qubit in
  /// `control_mask` is set.
  void apply_controlled(std::uint32_t control_mask, int target, const Mat2& u);

  /// rho -> (1 - eps) rho + eps (I/2^m (x) Tr_m rho) on the qubits in `mask`.
  void depolarize(std::uint32_t mask, double eps);

  /// In-place conjugate transpose.
  void adjoint_in_place();

private:
  int width_;
  std::size_t dim_;
  std::vector<cplx> data_;
};

/// Applies one gate (any IR kind) as a unitary conjugation.
void apply_gate(DensityMatrix& rho, const Gate& g);

struct NoiseModel {
  double eps1 = 0.0;
  double eps2 = 0.0;

  /// eps2 = 10 eps1. Throws std::invalid_argument outside [0, 1].
  static NoiseModel coupled(double eps1);
  static NoiseModel make(double eps1, double eps2);

  bool noiseless() const { return eps1 == 0.0 && eps2 == 0.0; }
};

struct ShotPlan {
  std::int64_t shots = 5120;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when shots < 1.
  static ShotPlan make(std::int64_t shots, std::uint64_t seed);
};

/// Called after every gate and its noise channel.
using StepObserver = std::function<void(const DensityMatrix&, std::size_t gate_index)>;

/// Runs from |0...0>. Single-qubit gates are followed by depolarizing noise of
/// strength eps1 on their qubit, CNOTs by eps2 on their pair. Any other
/// multi-qubit gate with noise enabled throws UntranspiledCircuit.
DensityMatrix run(const Circuit& c, const NoiseModel& noise, const StepObserver& observer = {});

/// Tr(rho Z_q).
double exact_expectation_Z(const DensityMatrix& rho, int qubit);

/// Mean of `shots` seeded +-1 outcomes with p(+1) = (1 + z) / 2.
double sample_expectation(double z, const ShotPlan& plan);

double sample_expectation_Z(const DensityMatrix& rho, int qubit, const ShotPlan& plan);

/// Ancilla <Z> of the real and imaginary Hadamard tests, exact under the noise
/// model (no shot noise). Transpiles first when noise is enabled.
cplx overlap_expectation(const MomentumPoint& k_from, const MomentumPoint& k_to, Band band_from,
                         Band band_to, const ModelParams& p, const NoiseModel& noise);

/// Finite-shot estimate from exact expectations; parts use sub-seeds of plan.seed.
cplx sample_overlap(cplx expectation, const ShotPlan& plan);

/// Hadamard-test estimate of <psi_{band_from}(k_from)|psi_{band_to}(k_to)>.
/// Without a shot plan the exact expectations are returned.
cplx estimate_overlap(const MomentumPoint& k_from, const MomentumPoint& k_to, Band band_from,
                      Band band_to, const ModelParams& p, const NoiseModel& noise,
                      const std::optional<ShotPlan>& plan);

nlohmann::json density_matrix_to_json(const DensityMatrix& rho);

} // namespace nisqtopo
