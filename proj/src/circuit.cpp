#include "nisqtopo/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "nisqtopo/errors.hpp"

namespace nisqtopo {

namespace {

Mat2 pauli_x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat2 m;
  m << r, r, r, -r;
  return m;
}

std::uint32_t bit(int q) { return std::uint32_t{1} << q; }

} // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::SDag: return "SDag";
    case GateKind::U3: return "U3";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CU3: return "CU3";
    case GateKind::CCX: return "CCX";
    case GateKind::CCU3: return "CCU3";
    case GateKind::CXX: return "CXX";
  }
  throw UnsupportedGate("unknown gate kind " + std::to_string(static_cast<int>(kind)));
}

GateKind gate_kind_from_string(std::string_view name) {
  for (auto k : {GateKind::X, GateKind::H, GateKind::SDag, GateKind::U3, GateKind::CNOT,
                 GateKind::CU3, GateKind::CCX, GateKind::CCU3, GateKind::CXX}) {
    if (to_string(k) == name) return k;
  }
  throw UnsupportedGate("unknown gate kind '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::SDag:
    case GateKind::U3: return 1;
    case GateKind::CNOT:
    case GateKind::CU3: return 2;
    case GateKind::CCX:
    case GateKind::CCU3:
    case GateKind::CXX: return 3;
  }
  throw UnsupportedGate("unknown gate kind " + std::to_string(static_cast<int>(kind)));
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Mat2 m;
  m << cplx{c, 0.0}, -std::polar(s, lambda),
       std::polar(s, phi), std::polar(c, lambda + phi);
  return m;
}

Gate Gate::x(int q) { return {GateKind::X, {q}}; }
Gate Gate::h(int q) { return {GateKind::H, {q}}; }
Gate Gate::sdag(int q) { return {GateKind::SDag, {q}}; }
Gate Gate::u3(int q, double theta, double phi, double lambda) {
  return {GateKind::U3, {q}, theta, phi, lambda};
}
Gate Gate::cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
Gate Gate::cu3(int control, int target, double theta, double phi, double lambda) {
  return {GateKind::CU3, {control, target}, theta, phi, lambda};
}
Gate Gate::ccx(int c0, int c1, int target) { return {GateKind::CCX, {c0, c1, target}}; }
Gate Gate::ccu3(int c0, int c1, int target, double theta, double phi, double lambda) {
  return {GateKind::CCU3, {c0, c1, target}, theta, phi, lambda};
}
Gate Gate::cxx(int control, int t0, int t1) { return {GateKind::CXX, {control, t0, t1}}; }

bool Gate::has_angles() const {
  return kind == GateKind::U3 || kind == GateKind::CU3 || kind == GateKind::CCU3;
}

Mat2 Gate::target_matrix() const {
  switch (kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::CCX:
    case GateKind::CXX: return pauli_x();
    case GateKind::H: return hadamard();
    case GateKind::SDag: {
      Mat2 m;
      m << 1.0, 0.0, 0.0, cplx{0.0, -1.0};
      return m;
    }
    case GateKind::U3:
    case GateKind::CU3:
    case GateKind::CCU3: return u3_matrix(theta, phi, lambda);
  }
  throw UnsupportedGate("unknown gate kind " + std::to_string(static_cast<int>(kind)));
}

Gate Gate::adjoint() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::SDag:
      // S is not in the IR; express it as a phase U3.
      return Gate::u3(qubits[0], 0.0, 0.0, kPi / 2);
    case GateKind::U3:
    case GateKind::CU3:
    case GateKind::CCU3:
      g.theta = -theta;
      g.phi = -lambda;
      g.lambda = -phi;
      return g;
    default: return g;
  }
}

Circuit::Circuit(int width) : width_(width) {
  if (width < 1 || width > 16) throw std::invalid_argument("circuit width must be in [1, 16]");
}

Circuit& Circuit::add(Gate g) {
  const int arity = gate_arity(g.kind);
  if (static_cast<int>(g.qubits.size()) != arity) {
    throw std::invalid_argument(std::string(to_string(g.kind)) + " expects " +
                                std::to_string(arity) + " qubits");
  }
  for (std::size_t a = 0; a < g.qubits.size(); ++a) {
    if (g.qubits[a] < 0 || g.qubits[a] >= width_) {
      throw std::invalid_argument("qubit index out of range");
    }
    for (std::size_t b = a + 1; b < g.qubits.size(); ++b) {
      if (g.qubits[a] == g.qubits[b]) throw std::invalid_argument("repeated qubit in gate");
    }
  }
  if (!std::isfinite(g.theta) || !std::isfinite(g.phi) || !std::isfinite(g.lambda)) {
    throw std::invalid_argument("gate angles must be finite");
  }
  gates_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) { return append(other.gates()); }

Circuit& Circuit::append(const std::vector<Gate>& gates) {
  for (const auto& g : gates) add(g);
  return *this;
}

std::vector<ControlledOp> controlled_ops(const Gate& g) {
  const Mat2 u = g.target_matrix();
  switch (gate_arity(g.kind)) {
    case 1: return {{0u, g.qubits[0], u}};
    case 2: return {{bit(g.qubits[0]), g.qubits[1], u}};
    default:
      if (g.kind == GateKind::CXX) {
        return {{bit(g.qubits[0]), g.qubits[1], u}, {bit(g.qubits[0]), g.qubits[2], u}};
      }
      return {{bit(g.qubits[0]) | bit(g.qubits[1]), g.qubits[2], u}};
  }
}

void apply_gate(Eigen::VectorXcd& state, const Gate& g) {
  const auto dim = static_cast<std::uint32_t>(state.size());
  for (const auto& op : controlled_ops(g)) {
    const std::uint32_t t = bit(op.target);
    for (std::uint32_t idx = 0; idx < dim; ++idx) {
      if ((idx & t) != 0 || (idx & op.control_mask) != op.control_mask) continue;
      const cplx a = state[idx];
      const cplx b = state[idx | t];
      state[idx] = op.u(0, 0) * a + op.u(0, 1) * b;
      state[idx | t] = op.u(1, 0) * a + op.u(1, 1) * b;
    }
  }
}

Eigen::VectorXcd simulate_statevector(const Circuit& c) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(c.dim()));
  psi[0] = 1.0;
  for (const auto& g : c.gates()) apply_gate(psi, g);
  return psi;
}

Eigen::MatrixXcd gates_unitary(const std::vector<Gate>& gates, int width) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << width);
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e[col] = 1.0;
    for (const auto& g : gates) apply_gate(e, g);
    u.col(col) = e;
  }
  return u;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) { return gates_unitary(c.gates(), c.width()); }

// ---------------------------------------------------------------------------

std::vector<Gate> prep_unitary(const BlochAngles& angles, int f, int g) {
  return {Gate::cnot(g, f), Gate::cu3(f, g, angles.theta, angles.phi, -angles.phi),
          Gate::cnot(g, f)};
}

BlochAngles circuit_angles(const MomentumPoint& k, const ModelParams& p) {
  BlochAngles a = bloch_angles(k, p);
  if (a.phi != 0.0) a.phi = 2.0 * kPi - a.phi;
  return a;
}

Eigen::Vector4cd embed_spinor(const Spinor& s) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v[1] = s[1];  // |1_f 0_g>
  v[2] = s[0];  // |0_f 1_g>
  return v;
}

Circuit build_state_prep(const MomentumPoint& k, Band band, const ModelParams& p) {
  const BlochAngles a = circuit_angles(k, p);
  Circuit c(kOverlapWidth);
  c.add(Gate::x(band == Band::plus ? kModeF : kModeG));
  c.append(prep_unitary(a));
  return c;
}

Mat2 principal_sqrt(const Mat2& u) {
  const cplx half_tr = 0.5 * (u(0, 0) + u(1, 1));
  const cplx det = u.determinant();
  const cplx disc = std::sqrt(half_tr * half_tr - det);
  auto root = [](cplx lam) {
    double a = std::arg(lam);
    if (a <= -kPi) a = kPi;
    return std::polar(std::sqrt(std::abs(lam)), 0.5 * a);
  };
  const cplx s1 = root(half_tr + disc);
  const cplx s2 = root(half_tr - disc);
  const cplx sum = s1 + s2;
  if (std::abs(sum) > 1e-8) {
    // Cayley-Hamilton: (U + s1 s2 I)^2 = (s1 + s2)^2 U.
    return (u + s1 * s2 * Mat2::Identity()) / sum;
  }
  // Eigenvalues straddle the branch cut; fall back to an explicit eigenbasis.
  Eigen::ComplexEigenSolver<Mat2> es(u);
  Eigen::Vector2cd roots;
  for (int i = 0; i < 2; ++i) roots[i] = root(es.eigenvalues()[i]);
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().inverse();
}

U3Params decompose_u3(const Mat2& u) {
  constexpr double tiny = 1e-13;
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(1, 0));
  U3Params r;
  r.theta = 2.0 * std::atan2(s, c);
  if (s <= tiny) {
    r.phase = std::arg(u(0, 0));
    r.phi = 0.0;
    r.lambda = std::arg(u(1, 1)) - r.phase;
  } else if (c <= tiny) {
    r.phase = std::arg(u(1, 0));
    r.phi = 0.0;
    r.lambda = std::arg(-u(0, 1)) - r.phase;
  } else {
    r.phase = std::arg(u(0, 0));
    r.phi = std::arg(u(1, 0)) - r.phase;
    r.lambda = std::arg(-u(0, 1)) - r.phase;
  }
  return r;
}

namespace {

void controlled_unitary(std::vector<Gate>& out, int control, int target, const Mat2& w) {
  const U3Params p = decompose_u3(w);
  if (std::abs(p.phase) > 1e-15) out.push_back(Gate::u3(control, 0.0, 0.0, p.phase));
  out.push_back(Gate::cu3(control, target, p.theta, p.phi, p.lambda));
}

} // namespace

std::vector<Gate> ccu3_decomposition(double theta, double phi, double lambda, int c0, int c1,
                                     int target) {
  const Mat2 w = principal_sqrt(u3_matrix(theta, phi, lambda));
  std::vector<Gate> out;
  controlled_unitary(out, c1, target, w);
  out.push_back(Gate::cnot(c0, c1));
  controlled_unitary(out, c1, target, w.adjoint());
  out.push_back(Gate::cnot(c0, c1));
  controlled_unitary(out, c0, target, w);
  return out;
}

namespace {

std::vector<Gate> controlled_prep(const BlochAngles& a) {
  return {Gate::ccx(kAncilla, kModeG, kModeF),
          Gate::ccu3(kAncilla, kModeF, kModeG, a.theta, a.phi, -a.phi),
          Gate::ccx(kAncilla, kModeG, kModeF)};
}

} // namespace

Circuit build_controlled_evolution(const MomentumPoint& k_from, const MomentumPoint& k_to,
                                   Band band_from, Band band_to, const ModelParams& p) {
  const BlochAngles from = circuit_angles(k_from, p);
  const BlochAngles to = circuit_angles(k_to, p);
  Circuit c(kOverlapWidth);
  const auto undo = controlled_prep(from);
  for (auto it = undo.rbegin(); it != undo.rend(); ++it) c.add(it->adjoint());
  if (band_from != band_to) c.add(Gate::cxx(kAncilla, kModeF, kModeG));
  c.append(controlled_prep(to));
  return c;
}

const char* to_string(OverlapPart part) { return part == OverlapPart::real ? "real" : "imag"; }

Circuit build_hadamard_test(const Circuit& prep, const Circuit& evolution, OverlapPart part) {
  Circuit c(kOverlapWidth);
  c.append(prep);
  c.add(Gate::h(kAncilla));
  c.append(evolution);
  if (part == OverlapPart::imag) c.add(Gate::sdag(kAncilla));
  c.add(Gate::h(kAncilla));
  return c;
}

Circuit build_overlap_circuit(const MomentumPoint& k_from, const MomentumPoint& k_to,
                              Band band_from, Band band_to, const ModelParams& p,
                              OverlapPart part) {
  return build_hadamard_test(build_state_prep(k_from, band_from, p),
                             build_controlled_evolution(k_from, k_to, band_from, band_to, p), part);
}

double distance_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  const double chi = std::arg(a(r, c)) - std::arg(b(r, c));
  return (a - std::polar(1.0, chi) * b).cwiseAbs().maxCoeff();
}

} // namespace nisqtopo
