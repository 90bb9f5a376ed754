#pragma once

// Independent reference computations: exact big-integer counters, quadrature
// of the characteristic function, and Monte Carlo estimates of the Gaussian
// expectations behind kappa3/kappa4.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latcount/maxent.hpp"
#include "latcount/moments.hpp"

namespace latcount::oracle {

using BigInt = boost::multiprecision::cpp_int;

struct ExactCount {
  BigInt value;
  double ln_value = 0.0;  // -inf when value == 0
  std::string description;
  std::size_t states = 0;  // memo entries visited
};

/// Natural log of a nonnegative big integer, accurate to ~1 ulp.
double ln(const BigInt& x);

/// Memo-state cap: ENTROPY_COUNT_BUDGET if set, else 10^7.
std::size_t default_budget();

/// Number of nonnegative integer tables with the given margins. Column-by-
/// column dynamic programme over sorted residual row sums (the shorter side
/// plays the role of rows). Throws Error{BudgetExceeded}.
ExactCount exact_count_tables(const std::vector<long long>& rows, const std::vector<long long>& cols,
                              std::size_t budget = default_budget());

/// Number of labelled simple graphs with the given degree sequence. Memoised
/// on the sorted residual degree multiset; the highest-residual vertex gets
/// its neighbourhood assigned first; non-graphical states are pruned by the
/// Erdos-Gallai test. Throws Error{BudgetExceeded}.
ExactCount exact_count_graphs(const std::vector<long long>& degrees, std::size_t budget = default_budget());

/// Erdos-Gallai test.
bool is_graphical(std::vector<long long> degrees);

struct QuadratureResult {
  double ln_probability = 0.0;  // ln P{S = 0} under the fitted geometric model
  double imag = 0.0;            // imaginary part of the normalised integral
};

/// Tensor-product trapezoidal rule on (-pi, pi]^d for the characteristic
/// function of the centred margin vector. Throws Error{DimensionTooLarge}
/// for d = m + n - 1 > 3 and Error{InvalidArgument} for grid < 64.
QuadratureResult charfn_quadrature_table(const GeometricFit& fit, std::size_t grid = 256);

/// Counter-based SplitMix64: output i is splitmix64(seed + (i + 1) * golden).
/// Bit-reproducible on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t at(std::uint64_t counter) const;
  std::uint64_t next() { return at(counter_++); }
  /// Uniform on (0, 1), 53 random bits.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
  /// Standard normal via Box-Muller (the second variate of each pair is cached).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct MCEstimate {
  double kappa3_hat = 0.0;
  double kappa4_hat = 0.0;
  double se3 = 0.0;
  double se4 = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sample means of K3(t)^2 and K4(t) for t ~ N(0, V^{-1}).
MCEstimate mc_gaussian_moments(const CovarianceModel& model, const EdgeCoefficients& coeffs, std::size_t samples,
                               std::uint64_t seed, const kernels::Table& k = kernels::active());

}  // namespace latcount::oracle
