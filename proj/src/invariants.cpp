#include "nisqtopo/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nisqtopo/errors.hpp"
#include "nisqtopo/table.hpp"

namespace nisqtopo {

double principal_arg(cplx z) {
  const double a = std::arg(z);
  return a <= -kPi ? kPi : a;
}

double wrap_phase(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

namespace {

constexpr Band kBand = Band::minus;

struct Plaquette {
  cplx u1, u2, u3, u4;  // U_x(k), U_y(k+x), U_x(k+y), U_y(k)
};

Plaquette plaquette_links(const OverlapField& field, int i, int j) {
  return {field.normalized(i, j, Direction::x, kBand, kBand),
          field.normalized(i + 1, j, Direction::y, kBand, kBand),
          field.normalized(i, j + 1, Direction::x, kBand, kBand),
          field.normalized(i, j, Direction::y, kBand, kBand)};
}

double plaquette_phase(const Plaquette& p) {
  return principal_arg(p.u1 * p.u2 * std::conj(p.u3) * std::conj(p.u4));
}

int round_checked(double x, double tol, const std::string& what) {
  const double r = std::round(x);
  if (!(std::abs(x - r) < tol)) {
    throw NotQuantized(what + " = " + format_double(x) + " is not within " + format_double(tol) +
                       " of an integer");
  }
  return static_cast<int>(r);
}

} // namespace

cplx plaquette_field(const OverlapField& field, int i, int j) {
  return {0.0, plaquette_phase(plaquette_links(field, i, j))};
}

std::vector<int> integer_field(const OverlapField& field, const ChernOptions& options) {
  const MeshGrid& mesh = field.mesh();
  std::vector<int> n(mesh.size());
  for (int j = 0; j < mesh.n_ky(); ++j) {
    for (int i = 0; i < mesh.n_kx(); ++i) {
      const Plaquette p = plaquette_links(field, i, j);
      const double x = (plaquette_phase(p) - (principal_arg(p.u1) - principal_arg(p.u3)) -
                        (principal_arg(p.u2) - principal_arg(p.u4))) /
                       (2.0 * kPi);
      n[mesh.index(i, j)] = round_checked(
          x, options.integer_tolerance,
          "n(" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
  return n;
}

ChernResult chern(const OverlapField& field, const ChernOptions& options) {
  const MeshGrid& mesh = field.mesh();
  ChernResult r;
  r.F.resize(mesh.size());
  double sum = 0.0;
  for (int j = 0; j < mesh.n_ky(); ++j) {
    for (int i = 0; i < mesh.n_kx(); ++i) {
      const double f = plaquette_phase(plaquette_links(field, i, j));
      r.F[mesh.index(i, j)] = {0.0, f};
      r.max_flux = std::max(r.max_flux, std::abs(f));
      sum += f;
    }
  }
  const double raw = sum / (2.0 * kPi);
  r.C = round_checked(raw, options.integer_tolerance, "sum F / 2 pi i");
  r.residual = std::abs(raw - r.C);
  r.admissible = r.max_flux < kPi - options.admissibility_margin;
  r.n = integer_field(field, options);
  long total = 0;
  for (int v : r.n) total += v;
  if (total != r.C) {
    throw NotQuantized("integer field sums to " + std::to_string(total) + " but C = " +
                       std::to_string(r.C));
  }
  return r;
}

double zak_phase(const OverlapField& field, int j) {
  cplx prod{1.0, 0.0};
  for (int i = 0; i < field.mesh().n_kx(); ++i) {
    prod *= std::conj(field.normalized(i, j, Direction::x, kBand, kBand));
  }
  return principal_arg(prod);
}

int phase_winding(std::span<const double> phases, double margin) {
  const std::size_t n = phases.size();
  if (n < 2) throw std::invalid_argument("winding needs at least two phases");
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double inc = wrap_phase(phases[(j + 1) % n] - phases[j]);
    if (std::abs(inc) > kPi - margin) {
      throw AmbiguousWinding("increment " + format_double(inc) + " between rows " +
                             std::to_string(j) + " and " + std::to_string((j + 1) % n) +
                             " is too close to pi");
    }
    total += inc;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

int zak_winding(const ZakProfile& profile, double margin) {
  return phase_winding(profile.phi, margin);
}

ZakProfile zak_profile(const OverlapField& field) {
  ZakProfile z;
  for (int j = 0; j < field.mesh().n_ky(); ++j) z.phi.push_back(zak_phase(field, j));
  return z;
}

double boundary_jump(std::span<const double> phases, int row) {
  const int n = static_cast<int>(phases.size());
  if (n < 2) throw std::invalid_argument("boundary jump needs at least two phases");
  const int r = ((row % n) + n) % n;
  const double before = phases[static_cast<std::size_t>((r + n - 1) % n)];
  const double after = phases[static_cast<std::size_t>((r + 1) % n)];
  const double here = phases[static_cast<std::size_t>(r)];
  return wrap_phase(here - before) + wrap_phase(after - here);
}

bool has_boundary_jump(std::span<const double> phases, int row) {
  return std::abs(boundary_jump(phases, row)) > kPi;
}

} // namespace nisqtopo
