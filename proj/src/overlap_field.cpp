#include "nisqtopo/overlap_field.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nisqtopo/errors.hpp"
#include "nisqtopo/table.hpp"

namespace nisqtopo {

MeshGrid::MeshGrid(int n_kx, int n_ky) : n_kx_(n_kx), n_ky_(n_ky) {
  if (n_kx < 2 || n_ky < 2) throw std::invalid_argument("mesh needs at least 2 points per direction");
}

double MeshGrid::kx(int i) const { return -kPi + 2.0 * kPi * wrap_i(i) / n_kx_; }
double MeshGrid::ky(int j) const { return -kPi + 2.0 * kPi * wrap_j(j) / n_ky_; }
MomentumPoint MeshGrid::point(int i, int j) const { return {kx(i), ky(j)}; }

double MeshGrid::min_gap(const ModelParams& p) const {
  double g = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_ky_; ++j) {
    for (int i = 0; i < n_kx_; ++i) g = std::min(g, spectrum(point(i, j), p).e_plus);
  }
  return g;
}

const char* to_string(Direction d) { return d == Direction::x ? "x" : "y"; }

OverlapField::OverlapField(MeshGrid mesh, double modulus_floor)
    : mesh_(mesh), modulus_floor_(modulus_floor), links_(mesh.size() * 8) {}

std::size_t OverlapField::slot(int i, int j, Direction d, Band bra, Band ket) const {
  return mesh_.index(i, j) * 8 + (d == Direction::x ? 0 : 4) + 2 * band_index(bra) +
         band_index(ket);
}

void OverlapField::set(int i, int j, Direction d, Band bra, Band ket, cplx raw) {
  links_[slot(i, j, d, bra, ket)] = raw;
}

bool OverlapField::has(int i, int j, Direction d, Band bra, Band ket) const {
  return links_[slot(i, j, d, bra, ket)].has_value();
}

cplx OverlapField::raw(int i, int j, Direction d, Band bra, Band ket) const {
  const auto& v = links_[slot(i, j, d, bra, ket)];
  if (!v) {
    throw std::out_of_range("missing link at (" + std::to_string(i) + ", " + std::to_string(j) +
                            ")");
  }
  return *v;
}

cplx OverlapField::normalized(int i, int j, Direction d, Band bra, Band ket) const {
  const auto& v = links_[slot(i, j, d, bra, ket)];
  const std::string where = "link (" + std::to_string(mesh_.wrap_i(i)) + ", " +
                            std::to_string(mesh_.wrap_j(j)) + ", " + to_string(d) + ")";
  if (!v) throw DegenerateLink(where + " is missing");
  const double m = std::abs(*v);
  if (!(m >= modulus_floor_)) {
    throw DegenerateLink(where + " has modulus " + format_double(m) + " below the floor");
  }
  return *v / m;
}

Mat2 OverlapField::transport_matrix(int i, int j) const {
  Mat2 l;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // <psi_a(k + dk)|psi_b(k)> is the conjugate of the stored <psi_b(k)|psi_a(k + dk)>.
      l(a, b) = std::conj(raw(i, j, Direction::x, band_from_index(b), band_from_index(a)));
    }
  }
  return l;
}

std::size_t OverlapField::count() const {
  return static_cast<std::size_t>(
      std::count_if(links_.begin(), links_.end(), [](const auto& v) { return v.has_value(); }));
}

OverlapField exact_overlap_field(const MeshGrid& mesh, const ModelParams& p, LinkSet links,
                                 double modulus_floor) {
  OverlapField field(mesh, modulus_floor);
  for (int j = 0; j < mesh.n_ky(); ++j) {
    for (int i = 0; i < mesh.n_kx(); ++i) {
      const MomentumPoint k = mesh.point(i, j);
      const Spinor here[2] = {eigenstate(k, Band::plus, p), eigenstate(k, Band::minus, p)};
      auto put = [&](Direction d, MomentumPoint k2, Band bra, Band ket) {
        const Spinor there = eigenstate(k2, ket, p);
        field.set(i, j, d, bra, ket, here[band_index(bra)].dot(there));
      };
      const MomentumPoint kx2 = mesh.point(i + 1, j);
      if (links == LinkSet::transport) {
        for (auto a : {Band::plus, Band::minus}) {
          for (auto b : {Band::plus, Band::minus}) put(Direction::x, kx2, a, b);
        }
      } else {
        put(Direction::x, kx2, Band::minus, Band::minus);
      }
      if (links == LinkSet::chern) put(Direction::y, mesh.point(i, j + 1), Band::minus, Band::minus);
    }
  }
  return field;
}

void write_overlap_csv(std::ostream& out, const OverlapField& field) {
  const MeshGrid& mesh = field.mesh();
  out << "i,j,direction,band_bra,band_ket,re,im\n";
  for (int j = 0; j < mesh.n_ky(); ++j) {
    for (int i = 0; i < mesh.n_kx(); ++i) {
      for (auto d : {Direction::x, Direction::y}) {
        for (auto a : {Band::plus, Band::minus}) {
          for (auto b : {Band::plus, Band::minus}) {
            if (!field.has(i, j, d, a, b)) continue;
            const cplx v = field.raw(i, j, d, a, b);
            out << i << ',' << j << ',' << to_string(d) << ',' << to_string(a) << ','
                << to_string(b) << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << '\n';
          }
        }
      }
    }
  }
}

namespace {

template <typename T>
T parse_number(const std::string& s, std::size_t line) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

Band parse_band(const std::string& s, std::size_t line) {
  if (s == "plus") return Band::plus;
  if (s == "minus") return Band::minus;
  throw ConfigError("line " + std::to_string(line) + ": bad band '" + s + "'");
}

} // namespace

OverlapField read_overlap_csv(std::istream& in, const MeshGrid& mesh, double modulus_floor) {
  OverlapField field(mesh, modulus_floor);
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    if (line == 1) {
      if (text != "i,j,direction,band_bra,band_ket,re,im") {
        throw ConfigError("overlap CSV header must be i,j,direction,band_bra,band_ket,re,im");
      }
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(text);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 7) throw ConfigError("line " + std::to_string(line) + ": expected 7 fields");
    const int i = parse_number<int>(f[0], line);
    const int j = parse_number<int>(f[1], line);
    if (i < 0 || i >= mesh.n_kx() || j < 0 || j >= mesh.n_ky()) {
      throw ConfigError("line " + std::to_string(line) + ": mesh index out of range");
    }
    Direction d;
    if (f[2] == "x") {
      d = Direction::x;
    } else if (f[2] == "y") {
      d = Direction::y;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": bad direction '" + f[2] + "'");
    }
    field.set(i, j, d, parse_band(f[3], line), parse_band(f[4], line),
              {parse_number<double>(f[5], line), parse_number<double>(f[6], line)});
  }
  if (line == 0) throw ConfigError("overlap CSV is empty");
  return field;
}

} // namespace nisqtopo
