#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace nisqtopo {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Spinor = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultGapTolerance = 1e-9;

/// Maps an angle onto the Brillouin-zone interval [-pi, pi).
double wrap_momentum(double k);

/// Parameters of the chiral p-wave BdG model. Immutable once built.
class ModelParams {
public:
  /// Throws std::invalid_argument unless t > 0 and delta > 0.
  explicit ModelParams(double mu, double t = 1.0, double delta = 1.0);

  double mu() const { return mu_; }
  double t() const { return t_; }
  double delta() const { return delta_; }

private:
  double mu_;
  double t_;
  double delta_;
};

/// A point on the Brillouin-zone torus. Components are kept in [-pi, pi).
struct MomentumPoint {
  double kx = 0.0;
  double ky = 0.0;

  MomentumPoint() = default;
  MomentumPoint(double x, double y) : kx(wrap_momentum(x)), ky(wrap_momentum(y)) {}

  MomentumPoint operator+(const MomentumPoint& o) const { return {kx + o.kx, ky + o.ky}; }
  MomentumPoint operator-(const MomentumPoint& o) const { return {kx - o.kx, ky - o.ky}; }
};

enum class Band { plus, minus };

inline constexpr int band_index(Band b) { return b == Band::plus ? 0 : 1; }
inline constexpr Band band_from_index(int i) { return i == 0 ? Band::plus : Band::minus; }
const char* to_string(Band b);

/// Polar/azimuthal angles of the Bloch vector; theta in [0, pi], phi in [0, 2pi).
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

struct Spectrum {
  double e_plus = 0.0;
  double e_minus = 0.0;
};

/// H(k) = delta sin(ky) sx + delta sin(kx) sy - [t (cos kx + cos ky) + mu] sz.
Mat2 hamiltonian(const MomentumPoint& k, const ModelParams& p);

Spectrum spectrum(const MomentumPoint& k, const ModelParams& p);

/// Throws GapClosed when E+ < gap_tolerance. phi is 0 where sin kx = sin ky = 0.
BlochAngles bloch_angles(const MomentumPoint& k, const ModelParams& p,
                         double gap_tolerance = kDefaultGapTolerance);

/// Eigenvector of hamiltonian(k, p) for the given band, in the fixed gauge
///   plus  = (e^{-i phi} sin(theta/2),  cos(theta/2))
///   minus = (cos(theta/2), -e^{+i phi} sin(theta/2))
/// These are exactly the states the state-preparation circuit produces.
Spinor eigenstate(const MomentumPoint& k, Band band, const ModelParams& p,
                  double gap_tolerance = kDefaultGapTolerance);

/// Same as eigenstate() but from precomputed angles.
Spinor eigenstate(const BlochAngles& a, Band band);

/// <psi_bra(k) | psi_ket(k2)>, the noise-free reference for every measured overlap.
cplx exact_overlap(const MomentumPoint& k, const MomentumPoint& k2, Band band_bra, Band band_ket,
                   const ModelParams& p, double gap_tolerance = kDefaultGapTolerance);

} // namespace nisqtopo
