#pragma once

// Data-parallel inner loops shared by the cumulant sums and the Monte Carlo
// oracle. Every variant accumulates into four lanes (element i goes to lane
// i % 4, tail included) and folds them as (l0 + l1) + (l2 + l3), so the scalar
// reference and the SIMD variants return bit-identical results.

#include <span>
#include <string_view>
#include <vector>

namespace latcount::kernels {

enum class Variant { Scalar, Avx2 };

std::string_view to_string(Variant v) noexcept;

struct CubicQuartic {
  double cubic = 0.0;    // sum b_i x_i^3
  double quartic = 0.0;  // sum a_i x_i^4
};

struct Table {
  Variant variant;

  /// sum_f coef[f] * (scale * sigma2[f] * cov[f] + 6 * cov[f]^3)
  double (*wick_cubic_row)(double scale, std::span<const double> cov,
                           std::span<const double> sigma2, std::span<const double> coef);

  CubicQuartic (*cubic_quartic)(std::span<const double> x, std::span<const double> b,
                                std::span<const double> a);

  /// sum_i w[i] * x[i]^2
  double (*weighted_square_sum)(std::span<const double> w, std::span<const double> x);
};

bool supported(Variant v) noexcept;
std::vector<Variant> supported_variants();

/// Kernel table for a specific variant; throws latcount::Error when the CPU
/// or the build lacks it.
const Table& table(Variant v);

/// The active table: the widest supported variant unless LATCOUNT_KERNELS=scalar.
const Table& active();

namespace scalar {
double wick_cubic_row(double scale, std::span<const double> cov, std::span<const double> sigma2,
                      std::span<const double> coef);
CubicQuartic cubic_quartic(std::span<const double> x, std::span<const double> b,
                           std::span<const double> a);
double weighted_square_sum(std::span<const double> w, std::span<const double> x);
}  // namespace scalar

#if defined(LATCOUNT_HAVE_AVX2)
namespace avx2 {
double wick_cubic_row(double scale, std::span<const double> cov, std::span<const double> sigma2,
                      std::span<const double> coef);
CubicQuartic cubic_quartic(std::span<const double> x, std::span<const double> b,
                           std::span<const double> a);
double weighted_square_sum(std::span<const double> w, std::span<const double> x);
}  // namespace avx2
#endif

}  // namespace latcount::kernels
