#include "nisqtopo/egp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "nisqtopo/invariants.hpp"

namespace nisqtopo {

EgpValue egp(std::span<const Mat2> links, std::span<const Spectrum> energies, double beta,
             const EgpOptions& options) {
  if (links.size() != energies.size() || links.empty()) {
    throw std::invalid_argument("egp needs one spectrum per link");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");

  EgpValue out;
  Mat2 m = Mat2::Identity();
  cplx det_links{1.0, 0.0};
  double energy_sum = 0.0;
  for (std::size_t s = 0; s < links.size(); ++s) {
    const Spectrum& e = energies[s];
    const double top = std::max(std::abs(e.e_plus), std::abs(e.e_minus));
    if (beta * top > options.overflow_threshold) out.rescaled = true;
    // e^{-B} / e^{beta top}: entries in (0, 1], the largest exactly 1.
    const double shift = beta * top;
    Mat2 factor = links[s];
    factor.row(0) *= std::exp(-beta * e.e_plus - shift);
    factor.row(1) *= std::exp(-beta * e.e_minus - shift);
    m = factor * m;
    out.log_scale += shift;
    det_links *= links[s].determinant();
    energy_sum += e.e_plus + e.e_minus;
  }
  // det(1 + S M~) = 1 + S tr M~ + det M, with det M taken directly from the links.
  const double sign = options.parity_factor && links.size() % 2 == 0 ? -1.0 : 1.0;
  const cplx det_m = det_links * std::exp(-beta * energy_sum);
  const cplx value = std::exp(-out.log_scale) * (1.0 + det_m) + sign * m.trace();
  out.phase = principal_arg(value);
  return out;
}

EgpProfile egp_profile(const OverlapField& field, const ModelParams& p, double beta,
                       const EgpOptions& options) {
  const MeshGrid& mesh = field.mesh();
  EgpProfile prof;
  prof.beta = beta;
  prof.n_loop = mesh.n_kx();
  std::vector<Mat2> links(static_cast<std::size_t>(mesh.n_kx()));
  std::vector<Spectrum> energies(links.size());
  for (int j = 0; j < mesh.n_ky(); ++j) {
    for (int i = 0; i < mesh.n_kx(); ++i) {
      links[static_cast<std::size_t>(i)] = field.transport_matrix(i, j);
      energies[static_cast<std::size_t>(i)] = spectrum(mesh.point(i, j), p);
    }
    const EgpValue v = egp(links, energies, beta, options);
    prof.phiE.push_back(v.phase);
    prof.rescaled = prof.rescaled || v.rescaled;
  }
  return prof;
}

} // namespace nisqtopo
