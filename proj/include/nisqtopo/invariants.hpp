#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nisqtopo/overlap_field.hpp"

namespace nisqtopo {

/// Im Log z on the principal branch (-pi, pi]; -pi maps to +pi.
double principal_arg(cplx z);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double a);

struct ChernOptions {
  double integer_tolerance = 0.01;
  double admissibility_margin = 0.1;
};

struct ChernResult {
  int C = 0;
  /// Plaquette field values F(k) (purely imaginary), indexed by MeshGrid::index.
  std::vector<cplx> F;
  /// Integer gauge field n(k), same indexing.
  std::vector<int> n;
  bool admissible = false;
  /// |sum F / 2 pi i - C|.
  double residual = 0.0;
  /// max |F(k)|.
  double max_flux = 0.0;
};

/// F(k) = Log[U_x(k) U_y(k + x) U_x(k + y)^-1 U_y(k)^-1] for minus-band links,
/// principal branch.
cplx plaquette_field(const OverlapField& field, int i, int j);

/// Lattice Chern number of the minus band plus its integer gauge field.
/// Throws NotQuantized when the sum (or any plaquette's n) misses an integer by
/// more than the tolerance; DegenerateLink propagates from the field.
ChernResult chern(const OverlapField& field, const ChernOptions& options = {});

/// n(k) = [F(k) - (Log U_x(k) - Log U_x(k+y)) - (Log U_y(k+x) - Log U_y(k))] / 2 pi i.
std::vector<int> integer_field(const OverlapField& field, const ChernOptions& options = {});

struct ZakProfile {
  /// Zak phase for each ky row, in (-pi, pi].
  std::vector<double> phi;
  int winding = 0;
};

/// Berry phase of the minus band along the kx loop of row j:
/// Im Log prod_k conj(U_x(k)), i.e. transport in the same orientation as the
/// ensemble-phase link matrices.
double zak_phase(const OverlapField& field, int j);

inline constexpr double kWindingMargin = 0.2;

/// (1/2pi) sum of wrapped increments around the closed ky loop. Throws
/// AmbiguousWinding when an increment exceeds pi - margin in magnitude.
int phase_winding(std::span<const double> phases, double margin = kWindingMargin);

int zak_winding(const ZakProfile& profile, double margin = kWindingMargin);

/// Phases for every row; winding left at 0 (call zak_winding).
ZakProfile zak_profile(const OverlapField& field);

/// Signed phase change across the zone-boundary row: the sum of the two wrapped
/// increments entering and leaving row `row`.
double boundary_jump(std::span<const double> phases, int row = 0);

/// |boundary_jump| > pi: the 2pi-scale jump of a topological profile.
bool has_boundary_jump(std::span<const double> phases, int row = 0);

} // namespace nisqtopo
