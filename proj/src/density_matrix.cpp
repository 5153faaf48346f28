#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "nisqtopo/kernels.hpp"
#include "nisqtopo/sim.hpp"

namespace nisqtopo {

DensityMatrix::DensityMatrix(int width)
    : width_(width), dim_(std::size_t{1} << width), data_(dim_ * dim_, cplx{0.0, 0.0}) {
  if (width < 1 || width > 12) throw std::invalid_argument("density matrix width must be in [1, 12]");
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::maximally_mixed(int width) {
  DensityMatrix rho(width);
  rho.data_[0] = 0.0;
  const double v = 1.0 / static_cast<double>(rho.dim_);
  for (std::size_t r = 0; r < rho.dim_; ++r) rho(r, r) = v;
  return rho;
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& psi) {
  return from_matrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::MatrixXcd& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols() || n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("density matrix must be square with power-of-two size");
  }
  DensityMatrix rho(std::countr_zero(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      rho(r, c) = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return rho;
}

Eigen::MatrixXcd DensityMatrix::to_matrix() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = data_[r * dim_ + c];
  }
  return m;
}

cplx DensityMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t r = 0; r < dim_; ++r) t += (*this)(r, r);
  return t;
}

double DensityMatrix::hermiticity_error() const {
  double e = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return e;
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd m = to_matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::adjoint_in_place() {
  for (std::size_t r = 0; r < dim_; ++r) {
    (*this)(r, r) = std::conj((*this)(r, r));
    for (std::size_t c = r + 1; c < dim_; ++c) {
      const cplx a = (*this)(r, c);
      (*this)(r, c) = std::conj((*this)(c, r));
      (*this)(c, r) = std::conj(a);
    }
  }
}

void DensityMatrix::apply_controlled(std::uint32_t control_mask, int target, const Mat2& u) {
  const std::uint32_t t = std::uint32_t{1} << target;
  if ((control_mask & t) != 0 || target < 0 || target >= width_) {
    throw std::invalid_argument("invalid target for controlled operator");
  }
  const auto& k = kernels::active_kernels();
  const kernels::Mix2 m{u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
  auto left = [&] {
    for (std::uint32_t r = 0; r < dim_; ++r) {
      if ((r & t) != 0 || (r & control_mask) != control_mask) continue;
      k.mix_rows(row(r), row(r | t), dim_, m);
    }
  };
  // U rho U^dag = (U (U rho)^dag)^dag, using only row operations.
  left();
  adjoint_in_place();
  left();
  adjoint_in_place();
}

void DensityMatrix::depolarize(std::uint32_t mask, double eps) {
  if (eps == 0.0) return;
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("depolarizing strength must be in [0, 1]");
  const auto m = static_cast<std::uint32_t>(std::popcount(mask));
  const double w = 1.0 / static_cast<double>(std::uint32_t{1} << m);
  std::vector<std::uint32_t> assignments;
  for (std::uint32_t a = 0;; a = (a - mask) & mask) {
    assignments.push_back(a);
    if (a == mask) break;
  }
  std::vector<cplx> twirl(dim_ * dim_, cplx{0.0, 0.0});
  for (std::uint32_t r = 0; r < dim_; ++r) {
    for (std::uint32_t c = 0; c < dim_; ++c) {
      if ((r & mask) != (c & mask)) continue;
      cplx s{0.0, 0.0};
      for (auto a : assignments) s += (*this)((r & ~mask) | a, (c & ~mask) | a);
      twirl[r * dim_ + c] = w * s;
    }
  }
  kernels::active_kernels().axpby(reinterpret_cast<double*>(data_.data()),
                                  reinterpret_cast<const double*>(twirl.data()),
                                  2 * dim_ * dim_, 1.0 - eps, eps);
}

nlohmann::json density_matrix_to_json(const DensityMatrix& rho) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (std::size_t c = 0; c < rho.dim(); ++c) {
      rr.push_back(rho(r, c).real());
      ri.push_back(rho(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"width", rho.width()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

} // namespace nisqtopo
