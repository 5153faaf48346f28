#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace nisqtopo::kernels {

/// Coefficients of a 2x2 complex matrix, row-major.
struct Mix2 {
  std::complex<double> m00, m01, m10, m11;
};

/// Inner loops of the density-matrix simulator. Every backend computes the
/// same result; the AVX2 one may differ from the scalar reference only by
/// floating-point reassociation.
struct KernelTable {
  std::string_view name;

  /// a' = m00 a + m01 b, b' = m10 a + m11 b, elementwise over n complex values.
  void (*mix_rows)(std::complex<double>* a, std::complex<double>* b, std::size_t n, const Mix2& m);

  /// y = alpha y + beta x over n doubles.
  void (*axpby)(double* y, const double* x, std::size_t n, double alpha, double beta);

  /// Sum over i of w[i] * x[i * stride] for n real weights.
  double (*strided_dot)(const double* x, std::size_t stride, const double* w, std::size_t n);
};

const KernelTable& scalar_kernels();

/// Null when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Backend picked at first use: AVX2 when available unless the environment
/// variable NISQTOPO_KERNELS=scalar forces the reference path.
const KernelTable& active_kernels();

/// Overrides the active backend (tests and benchmarks). Pass nullptr to reset.
void set_active_kernels(const KernelTable* table);

} // namespace nisqtopo::kernels
