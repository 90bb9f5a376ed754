#include "latcount/kernels.hpp"

#include <immintrin.h>

#include <array>
#include <cstddef>

// Built with -mavx2 only (no -mfma); the arithmetic below mirrors the scalar
// kernels operation by operation.

namespace latcount::kernels::avx2 {

namespace {

inline double fold(const std::array<double, 4>& lane) { return (lane[0] + lane[1]) + (lane[2] + lane[3]); }

inline std::array<double, 4> spill(__m256d v) {
  std::array<double, 4> out;
  _mm256_storeu_pd(out.data(), v);
  return out;
}

}  // namespace

double wick_cubic_row(double scale, std::span<const double> cov, std::span<const double> sigma2,
                      std::span<const double> coef) {
  const std::size_t n = cov.size();
  const std::size_t body = n - n % 4;
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d six = _mm256_set1_pd(6.0);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d c = _mm256_loadu_pd(cov.data() + i);
    const __m256d s = _mm256_loadu_pd(sigma2.data() + i);
    const __m256d b = _mm256_loadu_pd(coef.data() + i);
    const __m256d c3 = _mm256_mul_pd(_mm256_mul_pd(c, c), c);
    const __m256d lin = _mm256_mul_pd(_mm256_mul_pd(vscale, s), c);
    const __m256d term = _mm256_mul_pd(b, _mm256_add_pd(lin, _mm256_mul_pd(six, c3)));
    acc = _mm256_add_pd(acc, term);
  }
  auto lane = spill(acc);
  for (std::size_t i = body; i < n; ++i) {
    const double c = cov[i];
    const double c3 = (c * c) * c;
    lane[i % 4] += coef[i] * ((scale * sigma2[i]) * c + 6.0 * c3);
  }
  return fold(lane);
}

CubicQuartic cubic_quartic(std::span<const double> x, std::span<const double> b,
                           std::span<const double> a) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % 4;
  __m256d cub = _mm256_setzero_pd();
  __m256d quart = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    const __m256d v2 = _mm256_mul_pd(v, v);
    const __m256d v3 = _mm256_mul_pd(v2, v);
    cub = _mm256_add_pd(cub, _mm256_mul_pd(_mm256_loadu_pd(b.data() + i), v3));
    quart = _mm256_add_pd(quart, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_mul_pd(v2, v2)));
  }
  auto c = spill(cub);
  auto q = spill(quart);
  for (std::size_t i = body; i < n; ++i) {
    const double x2 = x[i] * x[i];
    const double x3 = x2 * x[i];
    c[i % 4] += b[i] * x3;
    q[i % 4] += a[i] * (x2 * x2);
  }
  return {fold(c), fold(q)};
}

double weighted_square_sum(std::span<const double> w, std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_mul_pd(v, v)));
  }
  auto lane = spill(acc);
  for (std::size_t i = body; i < n; ++i) lane[i % 4] += w[i] * (x[i] * x[i]);
  return fold(lane);
}

}  // namespace latcount::kernels::avx2
