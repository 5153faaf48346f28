#include <immintrin.h>

#include "kernels_impl.hpp"

namespace nisqtopo::kernels {

namespace {

// (re, im) pairs packed two per register. For a complex scalar c = cr + i ci,
// c * z = cr * z + ci * swap(z) * (-1, +1).
struct CoefAvx {
  __m256d re;
  __m256d im;
};

CoefAvx broadcast(std::complex<double> c) {
  return {_mm256_set1_pd(c.real()), _mm256_set1_pd(c.imag())};
}

inline __m256d cmul_add(const CoefAvx& c, __m256d z, __m256d z_swapped, __m256d acc) {
  acc = _mm256_fmadd_pd(c.re, z, acc);
  // addsub: even lanes subtract, odd lanes add, giving (-ci zi, +ci zr).
  return _mm256_addsub_pd(acc, _mm256_mul_pd(c.im, z_swapped));
}

void mix_rows(std::complex<double>* a, std::complex<double>* b, std::size_t n, const Mix2& m) {
  const CoefAvx c00 = broadcast(m.m00), c01 = broadcast(m.m01);
  const CoefAvx c10 = broadcast(m.m10), c11 = broadcast(m.m11);
  auto* pa = reinterpret_cast<double*>(a);
  auto* pb = reinterpret_cast<double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(pa + 2 * i);
    const __m256d y = _mm256_loadu_pd(pb + 2 * i);
    const __m256d xs = _mm256_permute_pd(x, 0b0101);
    const __m256d ys = _mm256_permute_pd(y, 0b0101);
    __m256d ra = _mm256_mul_pd(c00.re, x);
    ra = _mm256_addsub_pd(ra, _mm256_mul_pd(c00.im, xs));
    ra = cmul_add(c01, y, ys, ra);
    __m256d rb = _mm256_mul_pd(c10.re, x);
    rb = _mm256_addsub_pd(rb, _mm256_mul_pd(c10.im, xs));
    rb = cmul_add(c11, y, ys, rb);
    _mm256_storeu_pd(pa + 2 * i, ra);
    _mm256_storeu_pd(pb + 2 * i, rb);
  }
  for (; i < n; ++i) {
    const auto x = a[i];
    const auto y = b[i];
    a[i] = m.m00 * x + m.m01 * y;
    b[i] = m.m10 * x + m.m11 * y;
  }
}

void axpby(double* y, const double* x, std::size_t n, double alpha, double beta) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vy, _mm256_mul_pd(vb, vx)));
  }
  for (; i < n; ++i) y[i] = alpha * y[i] + beta * x[i];
}

double strided_dot(const double* x, std::size_t stride, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_set_pd(x[(i + 3) * stride], x[(i + 2) * stride],
                                     x[(i + 1) * stride], x[i * stride]);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), vx, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += w[i] * x[i * stride];
  return s;
}

} // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", &mix_rows, &axpby, &strided_dot};
  return table;
}

} // namespace nisqtopo::kernels
