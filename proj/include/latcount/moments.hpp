#pragma once

// Covariance of the margin-sum vector and the Gaussian expectations that feed
// the Edgeworth factor:
//   kappa3 = E (K3(t))^2,  kappa4 = E K4(t),  t ~ N(0, V^{-1}),
// where K2(t) = sum_e lambda_e t_e^2 = t'Vt, K3(t) = sum_e b_e t_e^3 and
// K4(t) = sum_e a_e t_e^4, and each edge (cell) variable t_e is the sum of one
// or two coordinates of t.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "latcount/kernels.hpp"
#include "latcount/maxent.hpp"

namespace latcount {

enum class Model { Table, Graph };

/// Per-cell (per-edge) cumulant coefficients of the fitted product
/// distribution: variance lambda, third cumulant b, fourth cumulant a.
struct EdgeCoefficients {
  std::vector<double> variance;
  std::vector<double> cubic;
  std::vector<double> quartic;

  std::size_t size() const { return variance.size(); }
};

/// Cells in row-major order (j, k).
EdgeCoefficients table_coefficients(const Eigen::MatrixXd& mu);
/// Edges (i, j), i < j, in lexicographic order.
EdgeCoefficients graph_coefficients(const Eigen::MatrixXd& mu);

/// Coordinates of t whose sum is the edge variable t_e.
struct Incidence {
  std::array<Eigen::Index, 2> index{0, 0};
  int count = 0;
};

struct CovarianceModel {
  Model model = Model::Table;
  Eigen::Index d = 0;
  Eigen::MatrixXd V;
  std::vector<Incidence> incidence;

  double edge_value(std::size_t e, const Eigen::VectorXd& t) const {
    const Incidence& inc = incidence[e];
    return inc.count == 2 ? t(inc.index[0]) + t(inc.index[1]) : t(inc.index[0]);
  }
};

/// Coordinates: v_1..v_m for rows, w_1..w_{n-1} for columns, w_n = 0.
CovarianceModel build_table_covariance(const GeometricFit& fit);
CovarianceModel build_table_covariance(const Eigen::MatrixXd& mu);

/// Throws Error{SingularCovariance} for fewer than 3 vertices.
CovarianceModel build_graph_covariance(const BernoulliFit& fit);
CovarianceModel build_graph_covariance(const Eigen::MatrixXd& mu);

/// sum_e lambda_e t_e^2, the edge-side evaluation of t'Vt.
double edge_quadratic_form(const CovarianceModel& model, const EdgeCoefficients& coeffs,
                           const Eigen::VectorXd& t);

/// ln det V by Cholesky; throws Error{NotPositiveDefinite}.
double log_det(const CovarianceModel& model);
double log_det(const Eigen::MatrixXd& V);

/// Gaussian covariances C(e, f) = E t_e t_f for t ~ N(0, V^{-1}), stored
/// densely (row-major, E x E).
class EdgePairCovariance {
 public:
  explicit EdgePairCovariance(const CovarianceModel& model);

  std::size_t size() const { return edges_; }
  double operator()(std::size_t e, std::size_t f) const { return cov_[e * edges_ + f]; }
  std::span<const double> row(std::size_t e) const { return {cov_.data() + e * edges_, edges_}; }
  std::span<const double> sigma2() const { return sigma2_; }
  const Eigen::MatrixXd& inverse() const { return inverse_; }

 private:
  std::size_t edges_ = 0;
  Eigen::MatrixXd inverse_;
  std::vector<double> cov_;
  std::vector<double> sigma2_;
};

/// Wick expansion: sum_{e,f} b_e b_f [9 s_e s_f C(e,f) + 6 C(e,f)^3]. Rows
/// go through the kernel table, row totals are combined by pairwise summation
/// in a fixed order.
double kappa3(const EdgeCoefficients& coeffs, const EdgePairCovariance& cov,
              const kernels::Table& k = kernels::active());

/// 3 * sum_e a_e s_e^2 (E t^4 = 3 s^2 for a centred Gaussian).
double kappa4(const EdgeCoefficients& coeffs, const EdgePairCovariance& cov,
              const kernels::Table& k = kernels::active());

struct CumulantSummary {
  Eigen::Index d = 0;
  double log_det_V = 0.0;
  double kappa3 = 0.0;
  double kappa4 = 0.0;
  std::vector<double> edge_sigma2;  // empty for closed forms
};

CumulantSummary summarize(const CovarianceModel& model, const EdgeCoefficients& coeffs,
                          const kernels::Table& k = kernels::active());

/// Fixed-topology pairwise sum; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

// ---------------------------------------------------------------------------
// Closed forms used as cross-checks.

/// m x n table with all cells mu: det V = sigma^{2d} m^{n-1} n^{m-1}, and
/// kappa3 = 3(5(m+n-1)^2 - 4(m-1)(n-1))(1+4 s2)/(mn s2),
/// kappa4 = 3(m+n-1)^2(1+6 s2)/(mn s2), with s2 = mu(1+mu).
CumulantSummary closed_form_equal_margins(std::size_t m, std::size_t n, double mu);

struct RegularGraphClosedForm {
  CumulantSummary summary;  // log det and kappa3 from the closed forms, kappa4 by definition
  double kappa4_alt = 0.0;  // 6(1/v - 1)(n-2)/(n-1); reported, never used
};

/// d-regular graph on n vertices, v = mu(1-mu), mu = d/(n-1):
///   det V = 2(n-1)(n-2)^{n-1} v^n,
///   kappa3 = 6[(1-4v)^2/v][4(n-2)^2+1]/[n(n-1)]  (printed closed form),
///   kappa4 = 6n(1-6v)/((n-1)v)                    (3 sum a s^2 evaluated exactly).
/// The printed kappa3 does not agree with the Wick sum; see README.
RegularGraphClosedForm closed_form_regular_graph(std::size_t n, double degree);

/// E (t_i + t_j)(t_r + t_s) for the regular graph, from the explicit inverse.
double regular_graph_edge_covariance(std::size_t n, double v, std::size_t i, std::size_t j, std::size_t r,
                                     std::size_t s);

/// ln det V for the two-class graph (n1 vertices sharing one degree, n2 the
/// other) with within/between Bernoulli variances v11, v12, v22.
double two_class_log_det(std::size_t n1, std::size_t n2, double v11, double v12, double v22);

}  // namespace latcount
