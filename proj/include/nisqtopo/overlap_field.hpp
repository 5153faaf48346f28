#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "nisqtopo/model.hpp"

namespace nisqtopo {

inline constexpr double kDefaultModulusFloor = 0.05;

/// Uniform mesh k_ij = (-pi + 2 pi i / n_kx, -pi + 2 pi j / n_ky) on the torus.
class MeshGrid {
public:
  MeshGrid(int n_kx = 8, int n_ky = 8);

  int n_kx() const { return n_kx_; }
  int n_ky() const { return n_ky_; }
  std::size_t size() const { return static_cast<std::size_t>(n_kx_) * n_ky_; }

  MomentumPoint point(int i, int j) const;
  double kx(int i) const;
  double ky(int j) const;
  int wrap_i(int i) const { return ((i % n_kx_) + n_kx_) % n_kx_; }
  int wrap_j(int j) const { return ((j % n_ky_) + n_ky_) % n_ky_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(wrap_j(j)) * n_kx_ + wrap_i(i);
  }

  /// Row whose ky is the zone boundary (ky = -pi, identified with +pi).
  int boundary_row() const { return 0; }

  /// Smallest E+ over the mesh.
  double min_gap(const ModelParams& p) const;

private:
  int n_kx_;
  int n_ky_;
};

enum class Direction { x, y };
const char* to_string(Direction d);

/// Link overlaps U_d(k; a, b) = <psi_a(k)|psi_b(k + dk_d)> on every mesh point,
/// direction and band pair. Entries may be missing.
class OverlapField {
public:
  explicit OverlapField(MeshGrid mesh, double modulus_floor = kDefaultModulusFloor);

  const MeshGrid& mesh() const { return mesh_; }
  double modulus_floor() const { return modulus_floor_; }

  void set(int i, int j, Direction d, Band bra, Band ket, cplx raw);
  bool has(int i, int j, Direction d, Band bra, Band ket) const;

  /// Throws std::out_of_range when missing.
  cplx raw(int i, int j, Direction d, Band bra, Band ket) const;

  /// U_raw / |U_raw|. Throws DegenerateLink when missing or |U_raw| < modulus floor.
  cplx normalized(int i, int j, Direction d, Band bra, Band ket) const;

  /// The 2x2 transport matrix L_ab = <psi_a(k + dk_x)|psi_b(k)> built from the
  /// raw x-links at (i, j), bands ordered (plus, minus).
  Mat2 transport_matrix(int i, int j) const;

  std::size_t count() const;

private:
  std::size_t slot(int i, int j, Direction d, Band bra, Band ket) const;

  MeshGrid mesh_;
  double modulus_floor_;
  std::vector<std::optional<cplx>> links_;
};

/// Which links a computation needs.
enum class LinkSet {
  chern,     ///< minus/minus links in both directions
  zak,       ///< minus/minus links along x
  transport  ///< all four band pairs along x
};

/// Fills a field from the analytic eigenstates.
OverlapField exact_overlap_field(const MeshGrid& mesh, const ModelParams& p, LinkSet links,
                                 double modulus_floor = kDefaultModulusFloor);

/// CSV with header "i,j,direction,band_bra,band_ket,re,im"; direction is x|y,
/// bands are plus|minus. Values are written in shortest round-trip form.
void write_overlap_csv(std::ostream& out, const OverlapField& field);

/// Throws ConfigError on malformed input or out-of-range indices.
OverlapField read_overlap_csv(std::istream& in, const MeshGrid& mesh,
                              double modulus_floor = kDefaultModulusFloor);

} // namespace nisqtopo
