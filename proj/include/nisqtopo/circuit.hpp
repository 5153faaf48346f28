#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nisqtopo/model.hpp"

namespace nisqtopo {

// Qubit roles for every overlap circuit.
inline constexpr int kAncilla = 0;
inline constexpr int kModeF = 1;
inline constexpr int kModeG = 2;
inline constexpr int kOverlapWidth = 3;

enum class GateKind { X, H, SDag, U3, CNOT, CU3, CCX, CCU3, CXX };

std::string_view to_string(GateKind kind);
/// Throws UnsupportedGate for unknown names.
GateKind gate_kind_from_string(std::string_view name);

/// Number of qubits a gate kind acts on.
int gate_arity(GateKind kind);

/// U3(theta, phi, lambda) = [[cos t/2, -e^{i lambda} sin t/2],
///                           [e^{i phi} sin t/2, e^{i(lambda+phi)} cos t/2]]
Mat2 u3_matrix(double theta, double phi, double lambda);

/// One gate. Qubits are listed controls first, target(s) last; CXX is
/// {control, target1, target2} and applies X on both targets.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<int> qubits;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  static Gate x(int q);
  static Gate h(int q);
  static Gate sdag(int q);
  static Gate u3(int q, double theta, double phi, double lambda);
  static Gate cnot(int control, int target);
  static Gate cu3(int control, int target, double theta, double phi, double lambda);
  static Gate ccx(int c0, int c1, int target);
  static Gate ccu3(int c0, int c1, int target, double theta, double phi, double lambda);
  static Gate cxx(int control, int t0, int t1);

  bool is_single_qubit() const { return qubits.size() == 1; }
  bool has_angles() const;

  /// The 2x2 operator applied to the target when all controls are set.
  /// Meaningless for CXX, whose target operator is X on each target.
  Mat2 target_matrix() const;

  /// The inverse gate.
  Gate adjoint() const;

  bool operator==(const Gate&) const = default;
};

/// Ordered gate program. Qubit q is bit q of a basis-state index, so qubit 0
/// (the ancilla) is the least significant bit.
class Circuit {
public:
  explicit Circuit(int width = kOverlapWidth);

  int width() const { return width_; }
  std::size_t dim() const { return std::size_t{1} << width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Throws std::invalid_argument on a malformed gate (arity, range, duplicates, non-finite angles).
  Circuit& add(Gate g);
  Circuit& append(const Circuit& other);
  Circuit& append(const std::vector<Gate>& gates);

  bool operator==(const Circuit&) const = default;

private:
  int width_;
  std::vector<Gate> gates_;
};

/// A 2x2 operator on `target`, active when every bit in `control_mask` is set.
struct ControlledOp {
  std::uint32_t control_mask = 0;
  int target = 0;
  Mat2 u;
};

/// The gate as a sequence of controlled 2x2 operators (two for CXX).
std::vector<ControlledOp> controlled_ops(const Gate& g);

/// Applies one gate to a statevector of 2^width amplitudes.
void apply_gate(Eigen::VectorXcd& state, const Gate& g);

/// Statevector after running the circuit from |0...0>.
Eigen::VectorXcd simulate_statevector(const Circuit& c);

/// Full 2^w x 2^w unitary of the circuit.
Eigen::MatrixXcd circuit_unitary(const Circuit& c);

/// Composed unitary of a gate list on `width` qubits.
Eigen::MatrixXcd gates_unitary(const std::vector<Gate>& gates, int width);

// ---------------------------------------------------------------------------
// Overlap-circuit construction

/// Two-qubit rotation U(theta, phi) on the mode qubits:
/// CNOT(g->f) . CU3(f->g; theta, +phi, -phi) . CNOT(g->f).
/// It fixes |00> and |11> and rotates the block {|1_f 0_g>, |0_f 1_g>}.
std::vector<Gate> prep_unitary(const BlochAngles& angles, int f = kModeF, int g = kModeG);

/// Angles fed to the circuits for momentum k. The azimuth is conjugated so the
/// prepared state matches eigenstate(k, band); see embed_spinor().
BlochAngles circuit_angles(const MomentumPoint& k, const ModelParams& p);

/// System amplitudes of a spinor: the c-orbital component sits on |0_f 1_g>,
/// the d-orbital component on |1_f 0_g>.
Eigen::Vector4cd embed_spinor(const Spinor& s);

/// X on the mode qubit selecting the band occupation, then prep_unitary.
Circuit build_state_prep(const MomentumPoint& k, Band band, const ModelParams& p);

/// Doubly controlled U3 as two-qubit gates: with W the principal square root of U3,
/// C-W(c1->t), CNOT(c0->c1), C-W^dag(c1->t), CNOT(c0->c1), C-W(c0->t).
/// Each controlled-W is a CU3 plus a phase U3(0,0,gamma) on its control when W
/// carries a global phase.
std::vector<Gate> ccu3_decomposition(double theta, double phi, double lambda,
                                     int c0 = kAncilla, int c1 = kModeF, int target = kModeG);

/// Principal square root of a 2x2 unitary (eigenphases halved into (-pi/2, pi/2]).
Mat2 principal_sqrt(const Mat2& u);

/// U3 angles plus global phase: u = e^{i phase} U3(theta, phi, lambda).
struct U3Params {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  double phase = 0.0;
};
U3Params decompose_u3(const Mat2& u);

/// Ancilla-controlled transport Psi_{band_from}(k_from) -> Psi_{band_to}(k_to):
/// CU(k_to) . [CXX if bands differ] . CU^dag(k_from), each CU = CCX . CCU3 . CCX.
Circuit build_controlled_evolution(const MomentumPoint& k_from, const MomentumPoint& k_to,
                                   Band band_from, Band band_to, const ModelParams& p);

enum class OverlapPart { real, imag };
const char* to_string(OverlapPart part);

/// prep; H(anc); evolution; [SDag(anc)]; H(anc). <Z_anc> is Re or Im of <psi|U|psi>.
Circuit build_hadamard_test(const Circuit& prep, const Circuit& evolution, OverlapPart part);

/// Hadamard-test circuit measuring <psi_{band_from}(k_from)|psi_{band_to}(k_to)>.
Circuit build_overlap_circuit(const MomentumPoint& k_from, const MomentumPoint& k_to,
                              Band band_from, Band band_to, const ModelParams& p, OverlapPart part);

// ---------------------------------------------------------------------------
// Lowering to {U3, CNOT}

/// Rewrites every gate into U3 and CNOT. Throws UnsupportedGate on unknown kinds.
Circuit transpile(const Circuit& c);

/// Expansion of a single gate into the {U3, CNOT} basis.
std::vector<Gate> lower_gate(const Gate& g);

std::size_t cnot_count(const Circuit& c);

/// Max entrywise |a - e^{i chi} b| with chi chosen from the largest entry of b.
double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

} // namespace nisqtopo
