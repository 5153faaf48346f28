#pragma once

#include <span>
#include <vector>

#include "nisqtopo/overlap_field.hpp"

namespace nisqtopo {

struct EgpOptions {
  /// Multiply M_T by (-1)^{N_L + 1}. Off by default: with the factor the
  /// zero-temperature limit is the Zak phase shifted by pi (N_L + 1).
  bool parity_factor = false;
  /// Above this value of beta |E| the run is reported as rescaled.
  double overflow_threshold = 700.0;
};

struct EgpValue {
  double phase = 0.0;
  /// log of the positive prefactor factored out of M_T.
  double log_scale = 0.0;
  /// True when some beta |E| exceeded the overflow threshold.
  bool rescaled = false;
};

/// Ensemble geometric phase of one loop.
///   links[s]    L_s = <psi_a(k_{s+1})|psi_b(k_s)>, bands ordered (plus, minus)
///   energies[s] (E+, E-) at k_s
/// M_T = prod_s e^{-beta E(k_s)} L_s (later points multiply from the left) and
/// phi_E = Im Log det(1 + M_T). The product is accumulated with each factor
/// scaled by e^{-beta max|E|} and det(M_T) taken as the product of per-link
/// determinants, so neither overflow nor cancellation occurs for large beta.
EgpValue egp(std::span<const Mat2> links, std::span<const Spectrum> energies, double beta,
             const EgpOptions& options = {});

struct EgpProfile {
  std::vector<double> phiE;
  double beta = 0.0;
  int n_loop = 0;
  int winding = 0;
  bool rescaled = false;
};

/// phi_E for every ky row of a field carrying all four x-link band pairs.
/// Winding left at 0 (call phase_winding).
EgpProfile egp_profile(const OverlapField& field, const ModelParams& p, double beta,
                       const EgpOptions& options = {});

} // namespace nisqtopo
