#include "kernels_impl.hpp"

namespace nisqtopo::kernels {

namespace {

void mix_rows(std::complex<double>* a, std::complex<double>* b, std::size_t n, const Mix2& m) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = a[i];
    const auto y = b[i];
    a[i] = m.m00 * x + m.m01 * y;
    b[i] = m.m10 * x + m.m11 * y;
  }
}

void axpby(double* y, const double* x, std::size_t n, double alpha, double beta) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * y[i] + beta * x[i];
}

double strided_dot(const double* x, std::size_t stride, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i * stride];
  return s;
}

} // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &mix_rows, &axpby, &strided_dot};
  return table;
}

} // namespace nisqtopo::kernels
