#include "latcount/kernels.hpp"

#include <array>
#include <cstddef>

namespace latcount::kernels::scalar {

namespace {

inline double fold(const std::array<double, 4>& lane) { return (lane[0] + lane[1]) + (lane[2] + lane[3]); }

}  // namespace

double wick_cubic_row(double scale, std::span<const double> cov, std::span<const double> sigma2,
                      std::span<const double> coef) {
  std::array<double, 4> lane{};
  const std::size_t n = cov.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double c = cov[i];
    const double c3 = (c * c) * c;
    lane[i % 4] += coef[i] * ((scale * sigma2[i]) * c + 6.0 * c3);
  }
  return fold(lane);
}

CubicQuartic cubic_quartic(std::span<const double> x, std::span<const double> b,
                           std::span<const double> a) {
  std::array<double, 4> cub{};
  std::array<double, 4> quart{};
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x2 = x[i] * x[i];
    const double x3 = x2 * x[i];
    cub[i % 4] += b[i] * x3;
    quart[i % 4] += a[i] * (x2 * x2);
  }
  return {fold(cub), fold(quart)};
}

double weighted_square_sum(std::span<const double> w, std::span<const double> x) {
  std::array<double, 4> lane{};
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) lane[i % 4] += w[i] * (x[i] * x[i]);
  return fold(lane);
}

}  // namespace latcount::kernels::scalar
