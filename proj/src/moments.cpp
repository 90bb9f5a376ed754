#include "latcount/moments.hpp"

#include <cmath>

#include "latcount/error.hpp"

namespace latcount {

EdgeCoefficients table_coefficients(const Eigen::MatrixXd& mu) {
  EdgeCoefficients c;
  const auto cells = static_cast<std::size_t>(mu.size());
  c.variance.reserve(cells);
  c.cubic.reserve(cells);
  c.quartic.reserve(cells);
  for (Eigen::Index j = 0; j < mu.rows(); ++j)
    for (Eigen::Index k = 0; k < mu.cols(); ++k) {
      const double x = mu(j, k);
      const double lam = x * (1.0 + x);
      c.variance.push_back(lam);
      c.cubic.push_back(lam * (1.0 + 2.0 * x));
      c.quartic.push_back(lam * (1.0 + 6.0 * lam));
    }
  return c;
}

EdgeCoefficients graph_coefficients(const Eigen::MatrixXd& mu) {
  EdgeCoefficients c;
  const auto n = mu.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double p = mu(i, j);
      const double v = p * (1.0 - p);
      c.variance.push_back(v);
      c.cubic.push_back(v * (1.0 - 2.0 * p));
      c.quartic.push_back(v * (1.0 - 6.0 * v));
    }
  return c;
}

CovarianceModel build_table_covariance(const Eigen::MatrixXd& mu) {
  const auto m = mu.rows();
  const auto n = mu.cols();
  CovarianceModel model;
  model.model = Model::Table;
  model.d = m + n - 1;
  model.V = Eigen::MatrixXd::Zero(model.d, model.d);
  model.incidence.reserve(static_cast<std::size_t>(m * n));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double lam = mu(j, k) * (1.0 + mu(j, k));
      Incidence inc;
      inc.index[0] = j;
      inc.count = 1;
      model.V(j, j) += lam;
      if (k < n - 1) {
        const Eigen::Index col = m + k;
        inc.index[1] = col;
        inc.count = 2;
        model.V(col, col) += lam;
        model.V(j, col) += lam;
        model.V(col, j) += lam;
      }
      model.incidence.push_back(inc);
    }
  return model;
}

CovarianceModel build_table_covariance(const GeometricFit& fit) { return build_table_covariance(fit.mu); }

CovarianceModel build_graph_covariance(const Eigen::MatrixXd& mu) {
  const auto n = mu.rows();
  if (n < 3) throw Error(ErrorKind::SingularCovariance, "degree covariance is singular for n < 3");
  CovarianceModel model;
  model.model = Model::Graph;
  model.d = n;
  model.V = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = mu(i, j) * (1.0 - mu(i, j));
      model.V(i, j) = model.V(j, i) = v;
      model.V(i, i) += v;
      model.V(j, j) += v;
      model.incidence.push_back(Incidence{{i, j}, 2});
    }
  return model;
}

CovarianceModel build_graph_covariance(const BernoulliFit& fit) { return build_graph_covariance(fit.mu); }

double edge_quadratic_form(const CovarianceModel& model, const EdgeCoefficients& coeffs,
                           const Eigen::VectorXd& t) {
  double q = 0.0;
  for (std::size_t e = 0; e < model.incidence.size(); ++e) {
    const double te = model.edge_value(e, t);
    q += coeffs.variance[e] * te * te;
  }
  return q;
}

double log_det(const Eigen::MatrixXd& V) {
  Eigen::LLT<Eigen::MatrixXd> llt(V);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "Cholesky factorisation hit a nonpositive pivot");
  const auto& L = llt.matrixLLT();
  double s = 0.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) s += std::log(L(i, i));
  return 2.0 * s;
}

double log_det(const CovarianceModel& model) { return log_det(model.V); }

EdgePairCovariance::EdgePairCovariance(const CovarianceModel& model) : edges_(model.incidence.size()) {
  Eigen::LLT<Eigen::MatrixXd> llt(model.V);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotPositiveDefinite, "covariance is not positive definite");
  inverse_ = llt.solve(Eigen::MatrixXd::Identity(model.d, model.d));
  inverse_ = 0.5 * (inverse_ + inverse_.transpose()).eval();

  cov_.resize(edges_ * edges_);
  sigma2_.resize(edges_);
  for (std::size_t e = 0; e < edges_; ++e) {
    const Incidence& a = model.incidence[e];
    for (std::size_t f = e; f < edges_; ++f) {
      const Incidence& b = model.incidence[f];
      double c = 0.0;
      for (int p = 0; p < a.count; ++p)
        for (int q = 0; q < b.count; ++q) c += inverse_(a.index[p], b.index[q]);
      cov_[e * edges_ + f] = c;
      cov_[f * edges_ + e] = c;
    }
    sigma2_[e] = cov_[e * edges_ + e];
  }
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double kappa3(const EdgeCoefficients& coeffs, const EdgePairCovariance& cov, const kernels::Table& k) {
  const std::size_t edges = cov.size();
  const auto s2 = cov.sigma2();
  std::vector<double> rows(edges);
  for (std::size_t e = 0; e < edges; ++e) {
    if (coeffs.cubic[e] == 0.0) continue;
    rows[e] = coeffs.cubic[e] * k.wick_cubic_row(9.0 * s2[e], cov.row(e), s2, coeffs.cubic);
  }
  return pairwise_sum(rows);
}

double kappa4(const EdgeCoefficients& coeffs, const EdgePairCovariance& cov, const kernels::Table& k) {
  return 3.0 * k.weighted_square_sum(coeffs.quartic, cov.sigma2());
}

CumulantSummary summarize(const CovarianceModel& model, const EdgeCoefficients& coeffs, const kernels::Table& k) {
  EdgePairCovariance cov(model);
  CumulantSummary s;
  s.d = model.d;
  s.log_det_V = log_det(model);
  s.kappa3 = kappa3(coeffs, cov, k);
  s.kappa4 = kappa4(coeffs, cov, k);
  s.edge_sigma2.assign(cov.sigma2().begin(), cov.sigma2().end());
  return s;
}

CumulantSummary closed_form_equal_margins(std::size_t m, std::size_t n, double mu) {
  if (m < 1 || n < 1 || !(mu > 0))
    throw Error(ErrorKind::InvalidArgument, "closed form needs m, n >= 1 and mu > 0");
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double s2 = mu * (1.0 + mu);
  const double d = md + nd - 1.0;
  CumulantSummary s;
  s.d = static_cast<Eigen::Index>(m + n - 1);
  s.log_det_V = d * std::log(s2) + (nd - 1.0) * std::log(md) + (md - 1.0) * std::log(nd);
  s.kappa3 = 3.0 * (5.0 * d * d - 4.0 * (md - 1.0) * (nd - 1.0)) * (1.0 + 4.0 * s2) / (md * nd * s2);
  s.kappa4 = 3.0 * d * d * (1.0 + 6.0 * s2) / (md * nd * s2);
  return s;
}

RegularGraphClosedForm closed_form_regular_graph(std::size_t n, double degree) {
  const double nd = static_cast<double>(n);
  if (n < 3 || !(degree > 0) || !(degree < nd - 1.0))
    throw Error(ErrorKind::InvalidArgument, "regular closed form needs n >= 3 and 0 < d < n-1");
  const double mu = degree / (nd - 1.0);
  const double v = mu * (1.0 - mu);
  RegularGraphClosedForm out;
  out.summary.d = static_cast<Eigen::Index>(n);
  out.summary.log_det_V = std::log(2.0 * (nd - 1.0)) + (nd - 1.0) * std::log(nd - 2.0) + nd * std::log(v);
  const double w = 1.0 - 4.0 * v;
  out.summary.kappa3 = 6.0 * (w * w / v) * (4.0 * (nd - 2.0) * (nd - 2.0) + 1.0) / (nd * (nd - 1.0));
  out.summary.kappa4 = 6.0 * nd * (1.0 - 6.0 * v) / ((nd - 1.0) * v);
  out.kappa4_alt = 6.0 * (1.0 / v - 1.0) * (nd - 2.0) / (nd - 1.0);
  return out;
}

double regular_graph_edge_covariance(std::size_t n, double v, std::size_t i, std::size_t j, std::size_t r,
                                     std::size_t s) {
  const double nd = static_cast<double>(n);
  auto delta = [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; };
  const double hits = delta(i, r) + delta(i, s) + delta(j, r) + delta(j, s);
  return (-2.0 / (nd - 1.0) + hits) / ((nd - 2.0) * v);
}

double two_class_log_det(std::size_t n1, std::size_t n2, double v11, double v12, double v22) {
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  const double first = (a - 2.0) * v11 + b * v12;
  const double second = (b - 2.0) * v22 + a * v12;
  const double coupling = ((2.0 * a - 2.0) * v11 + b * v12) * ((2.0 * b - 2.0) * v22 + a * v12) - a * b * v12 * v12;
  double out = std::log(coupling);
  if (n1 > 1) out += (a - 1.0) * std::log(first);
  if (n2 > 1) out += (b - 1.0) * std::log(second);
  return out;
}

}  // namespace latcount
