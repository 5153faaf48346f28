#include "nisqtopo/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nisqtopo/errors.hpp"

namespace nisqtopo {

double wrap_momentum(double k) {
  double r = std::fmod(k + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  // fmod can land exactly on +pi after the shift back.
  if (r >= kPi) r -= 2.0 * kPi;
  return r;
}

ModelParams::ModelParams(double mu, double t, double delta) : mu_(mu), t_(t), delta_(delta) {
  if (!std::isfinite(mu) || !std::isfinite(t) || !std::isfinite(delta)) {
    throw std::invalid_argument("model parameters must be finite");
  }
  if (t <= 0.0) throw std::invalid_argument("hopping t must be positive");
  if (delta <= 0.0) throw std::invalid_argument("pairing delta must be positive");
}

const char* to_string(Band b) { return b == Band::plus ? "plus" : "minus"; }

namespace {

struct Coefficients {
  double x;  // sigma_x
  double y;  // sigma_y
  double z;  // t (cos kx + cos ky) + mu, enters as -z sigma_z
};

Coefficients coefficients(const MomentumPoint& k, const ModelParams& p) {
  return {p.delta() * std::sin(k.ky), p.delta() * std::sin(k.kx),
          p.t() * (std::cos(k.kx) + std::cos(k.ky)) + p.mu()};
}

} // namespace

Mat2 hamiltonian(const MomentumPoint& k, const ModelParams& p) {
  const auto c = coefficients(k, p);
  Mat2 h;
  h << cplx{-c.z, 0.0}, cplx{c.x, -c.y},
       cplx{c.x, c.y}, cplx{c.z, 0.0};
  return h;
}

Spectrum spectrum(const MomentumPoint& k, const ModelParams& p) {
  const auto c = coefficients(k, p);
  const double e = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
  return {e, -e};
}

BlochAngles bloch_angles(const MomentumPoint& k, const ModelParams& p, double gap_tolerance) {
  const auto c = coefficients(k, p);
  const double e = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
  if (e < gap_tolerance) {
    throw GapClosed("band gap closed at k = (" + std::to_string(k.kx) + ", " +
                    std::to_string(k.ky) + ") for mu = " + std::to_string(p.mu()));
  }
  BlochAngles a;
  a.theta = std::acos(std::clamp(c.z / e, -1.0, 1.0));
  // sin(pi) evaluates to ~1e-16, so treat sub-roundoff sines as exact zeros.
  if (std::hypot(c.x, c.y) <= 1e-14 * p.delta()) {
    a.phi = 0.0;
  } else {
    // The off-diagonal element delta (sin ky - i sin kx) fixes the quadrant.
    a.phi = std::atan2(c.y, c.x);
    if (a.phi < 0.0) a.phi += 2.0 * kPi;
  }
  return a;
}

Spinor eigenstate(const BlochAngles& a, Band band) {
  const double c = std::cos(0.5 * a.theta);
  const double s = std::sin(0.5 * a.theta);
  const cplx ph = std::polar(1.0, a.phi);
  Spinor v;
  if (band == Band::plus) {
    v << std::conj(ph) * s, cplx{c, 0.0};
  } else {
    v << cplx{c, 0.0}, -ph * s;
  }
  return v;
}

Spinor eigenstate(const MomentumPoint& k, Band band, const ModelParams& p, double gap_tolerance) {
  return eigenstate(bloch_angles(k, p, gap_tolerance), band);
}

cplx exact_overlap(const MomentumPoint& k, const MomentumPoint& k2, Band band_bra, Band band_ket,
                   const ModelParams& p, double gap_tolerance) {
  return eigenstate(k, band_bra, p, gap_tolerance).dot(eigenstate(k2, band_ket, p, gap_tolerance));
}

} // namespace nisqtopo
