#include <cmath>
#include <numbers>

#include "latcount/error.hpp"
#include "latcount/oracle.hpp"

namespace latcount::oracle {

std::uint64_t CounterRng::at(std::uint64_t counter) const {
  std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

MCEstimate mc_gaussian_moments(const CovarianceModel& model, const EdgeCoefficients& coeffs, std::size_t samples,
                               std::uint64_t seed, const kernels::Table& k) {
  const Eigen::LLT<Eigen::MatrixXd> llt(model.V);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "covariance is not positive definite");
  // V = L L', so t = L'^{-1} z has covariance V^{-1}.
  const Eigen::MatrixXd U = llt.matrixU();

  CounterRng rng(seed);
  const std::size_t edges = coeffs.size();
  Eigen::VectorXd z(model.d);
  std::vector<double> x(edges);

  // Welford updates in sample order.
  double mean3 = 0.0, m2_3 = 0.0, mean4 = 0.0, m2_4 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < model.d; ++i) z(i) = rng.normal();
    const Eigen::VectorXd t = U.triangularView<Eigen::Upper>().solve(z);
    for (std::size_t e = 0; e < edges; ++e) x[e] = model.edge_value(e, t);
    const kernels::CubicQuartic cq = k.cubic_quartic(x, coeffs.cubic, coeffs.quartic);
    const double y3 = cq.cubic * cq.cubic;
    const double y4 = cq.quartic;
    const double n = static_cast<double>(s + 1);
    const double d3 = y3 - mean3;
    mean3 += d3 / n;
    m2_3 += d3 * (y3 - mean3);
    const double d4 = y4 - mean4;
    mean4 += d4 / n;
    m2_4 += d4 * (y4 - mean4);
  }

  MCEstimate r;
  r.samples = samples;
  r.seed = seed;
  r.kappa3_hat = mean3;
  r.kappa4_hat = mean4;
  if (samples >= 2) {
    const double n = static_cast<double>(samples);
    r.se3 = std::sqrt(m2_3 / (n - 1.0) / n);
    r.se4 = std::sqrt(m2_4 / (n - 1.0) / n);
  }
  return r;
}

}  // namespace latcount::oracle
