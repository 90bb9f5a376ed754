#include "latcount/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "latcount/error.hpp"

namespace latcount {

namespace {

constexpr double kAlphaCap = 40.0;
constexpr double kMuFloor = 1e-12;
constexpr double kMuCeilTable = 1e12;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-10;

// -log(1 - e^{-x}): log-partition of a geometric with canonical parameter x > 0.
double geometric_log_partition(double x) { return -std::log(-std::expm1(-x)); }

double geometric_mean(double x) { return 1.0 / std::expm1(x); }

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// ---------------------------------------------------------------------------
// Tables

struct TableState {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
};

bool table_domain_ok(const TableState& s) {
  return (s.alpha.minCoeff() + s.beta.minCoeff()) > 0.0;
}

Eigen::MatrixXd table_mu(const TableState& s) {
  const auto m = s.alpha.size();
  const auto n = s.beta.size();
  Eigen::MatrixXd mu(m, n);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < n; ++k) mu(j, k) = geometric_mean(s.alpha(j) + s.beta(k));
  return mu;
}

double table_potential(const TableState& s, const MarginSpec& spec) {
  double g = 0.0;
  for (Eigen::Index j = 0; j < s.alpha.size(); ++j)
    for (Eigen::Index k = 0; k < s.beta.size(); ++k) g += geometric_log_partition(s.alpha(j) + s.beta(k));
  for (std::size_t j = 0; j < spec.m(); ++j) g += spec.rows[j] * s.alpha(j);
  for (std::size_t k = 0; k < spec.n(); ++k) g += spec.cols[k] * s.beta(k);
  return g;
}

// Gradient of the dual potential: prescribed margin minus fitted margin.
Eigen::VectorXd table_gradient(const Eigen::MatrixXd& mu, const MarginSpec& spec) {
  const auto m = mu.rows();
  const auto n = mu.cols();
  Eigen::VectorXd g(m + n);
  for (Eigen::Index j = 0; j < m; ++j) g(j) = spec.rows[j] - mu.row(j).sum();
  for (Eigen::Index k = 0; k < n; ++k) g(m + k) = spec.cols[k] - mu.col(k).sum();
  return g;
}

void recentre(TableState& s) {
  const double shift = s.beta.mean();
  s.alpha.array() += shift;
  s.beta.array() -= shift;
}

// Solve sum_i 1/expm1(a + offset_i) = target for a; the left side decreases
// strictly from +inf (a -> -min offset) to 0.
double solve_geometric_coordinate(const Eigen::VectorXd& offsets, double target, double guess) {
  const double lo_bound = -offsets.minCoeff();
  auto f = [&](double a) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < offsets.size(); ++i) s += geometric_mean(a + offsets(i));
    return s - target;
  };
  double lo = lo_bound;
  double hi = std::max(guess, lo_bound + 1.0);
  while (f(hi) > 0) hi = lo_bound + 2.0 * (hi - lo_bound);
  double a = std::clamp(guess, std::nextafter(lo, hi), hi);
  for (int it = 0; it < 200; ++it) {
    const double fa = f(a);
    if (fa > 0) lo = a; else hi = a;
    double deriv = 0.0;
    for (Eigen::Index i = 0; i < offsets.size(); ++i) {
      const double mu = geometric_mean(a + offsets(i));
      deriv -= mu * (1.0 + mu);
    }
    double next = a - fa / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - a) <= 1e-15 * std::max(1.0, std::abs(a))) return next;
    a = next;
  }
  return a;
}

void table_coordinate_sweep(TableState& s, const MarginSpec& spec) {
  for (Eigen::Index j = 0; j < s.alpha.size(); ++j)
    s.alpha(j) = solve_geometric_coordinate(s.beta, spec.rows[j], s.alpha(j));
  for (Eigen::Index k = 0; k < s.beta.size(); ++k)
    s.beta(k) = solve_geometric_coordinate(s.alpha, spec.cols[k], s.beta(k));
}

void check_table_boundary(const Eigen::MatrixXd& mu) {
  if (!(mu.minCoeff() >= kMuFloor && mu.maxCoeff() <= kMuCeilTable))
    throw Error(ErrorKind::MaxEntBoundary, "cell expectation left [1e-12, 1e12]");
}

// ---------------------------------------------------------------------------
// Graphs

Eigen::MatrixXd graph_mu(const Eigen::VectorXd& alpha) {
  const auto n = alpha.size();
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) mu(i, j) = mu(j, i) = logistic(alpha(i) + alpha(j));
  return mu;
}

double graph_potential(const Eigen::VectorXd& alpha, const std::vector<double>& degrees) {
  double g = 0.0;
  const auto n = alpha.size();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) g += softplus(alpha(i) + alpha(j));
  for (Eigen::Index i = 0; i < n; ++i) g -= degrees[i] * alpha(i);
  return g;
}

Eigen::VectorXd graph_gradient(const Eigen::MatrixXd& mu, const std::vector<double>& degrees) {
  Eigen::VectorXd g(mu.rows());
  for (Eigen::Index i = 0; i < mu.rows(); ++i) g(i) = mu.row(i).sum() - degrees[i];
  return g;
}

// Solve sum_j logistic(a + alpha_j) = target, j != i; increasing in a.
double solve_bernoulli_coordinate(const Eigen::VectorXd& alpha, Eigen::Index skip, double target,
                                  double guess) {
  auto f = [&](double a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < alpha.size(); ++j)
      if (j != skip) s += logistic(a + alpha(j));
    return s - target;
  };
  double lo = guess - 1.0;
  double hi = guess + 1.0;
  for (int i = 0; f(lo) > 0 && i < 64; ++i) lo -= 2.0 * (hi - lo);
  for (int i = 0; f(hi) < 0 && i < 64; ++i) hi += 2.0 * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

void check_graph_boundary(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& mu) {
  if (alpha.cwiseAbs().maxCoeff() > kAlphaCap)
    throw Error(ErrorKind::MaxEntBoundary, "dual parameters diverge (|alpha| > 40)");
  const auto n = mu.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (!(mu(i, j) >= kMuFloor && mu(i, j) <= 1.0 - kMuFloor))
        throw Error(ErrorKind::MaxEntBoundary, "edge probability left [1e-12, 1 - 1e-12]");
}

}  // namespace

double MarginSpec::total() const { return std::accumulate(rows.begin(), rows.end(), 0.0); }

void validate(const MarginSpec& spec) {
  if (spec.rows.empty() || spec.cols.empty())
    throw Error(ErrorKind::InfeasibleMargins, "need at least one row and one column");
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!std::all_of(spec.rows.begin(), spec.rows.end(), positive) ||
      !std::all_of(spec.cols.begin(), spec.cols.end(), positive))
    throw Error(ErrorKind::InfeasibleMargins, "margins must be strictly positive");
  const double rs = spec.total();
  const double cs = std::accumulate(spec.cols.begin(), spec.cols.end(), 0.0);
  if (std::abs(rs - cs) > 1e-9 * rs) {
    std::ostringstream msg;
    msg << "row total " << rs << " != column total " << cs;
    throw Error(ErrorKind::InfeasibleMargins, msg.str());
  }
}

GeometricFit fit_table(const MarginSpec& spec, const SolverOptions& opts,
                       std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> start) {
  validate(spec);
  const auto m = static_cast<Eigen::Index>(spec.m());
  const auto n = static_cast<Eigen::Index>(spec.n());

  TableState s;
  if (start) {
    s.alpha = start->first;
    s.beta = start->second;
    if (s.alpha.size() != m || s.beta.size() != n)
      throw Error(ErrorKind::InvalidArgument, "starting point has wrong dimensions");
    if (!table_domain_ok(s))
      throw Error(ErrorKind::InvalidArgument, "starting point needs alpha_j + beta_k > 0");
  } else {
    // Uniform table: mu = T/(mn) in every cell.
    const double x = std::log1p(static_cast<double>(m * n) / spec.total());
    s.alpha = Eigen::VectorXd::Constant(m, x);
    s.beta = Eigen::VectorXd::Zero(n);
  }
  recentre(s);

  Eigen::VectorXd u(m + n);
  u << Eigen::VectorXd::Ones(m), -Eigen::VectorXd::Ones(n);
  u /= std::sqrt(static_cast<double>(m + n));

  GeometricFit fit;
  Eigen::MatrixXd mu = table_mu(s);
  Eigen::VectorXd grad = table_gradient(mu, spec);
  double residual = grad.cwiseAbs().maxCoeff();
  int iter = 0;
  for (; iter < opts.max_iter && residual > opts.tol; ++iter) {
    const Eigen::MatrixXd lambda = (mu.array() * (1.0 + mu.array())).matrix();
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + n, m + n);
    for (Eigen::Index j = 0; j < m; ++j) hess(j, j) = lambda.row(j).sum();
    for (Eigen::Index k = 0; k < n; ++k) hess(m + k, m + k) = lambda.col(k).sum();
    hess.topRightCorner(m, n) = lambda;
    hess.bottomLeftCorner(n, m) = lambda.transpose();
    // The potential is flat along (1, -1); lift that direction out.
    hess += (hess.diagonal().mean()) * u * u.transpose();

    // `grad` is the gradient of the potential (prescribed minus fitted margin).
    const Eigen::VectorXd step = -hess.ldlt().solve(grad);
    const double slope = grad.dot(step);
    const double g0 = table_potential(s, spec);

    bool accepted = false;
    for (double t = 1.0; t >= kMinStep; t *= 0.5) {
      TableState trial{s.alpha + t * step.head(m), s.beta + t * step.tail(n)};
      if (!table_domain_ok(trial)) continue;
      const Eigen::MatrixXd trial_mu = table_mu(trial);
      const Eigen::VectorXd trial_grad = table_gradient(trial_mu, spec);
      const double trial_res = trial_grad.cwiseAbs().maxCoeff();
      const double g1 = table_potential(trial, spec);
      if (g1 <= g0 + kArmijo * t * slope || trial_res < 0.5 * residual) {
        s = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) table_coordinate_sweep(s, spec);
    recentre(s);
    mu = table_mu(s);
    check_table_boundary(mu);
    grad = table_gradient(mu, spec);
    residual = grad.cwiseAbs().maxCoeff();
  }
  if (!(residual <= opts.tol)) {
    std::ostringstream msg;
    msg << "margin residual " << residual << " after " << iter << " iterations";
    throw Error(ErrorKind::NoConvergence, msg.str());
  }
  check_table_boundary(mu);

  fit.alpha = s.alpha;
  fit.beta = s.beta;
  fit.mu = std::move(mu);
  fit.entropy = entropy_table(fit.mu);
  fit.iterations = iter;
  fit.residual = residual;
  return fit;
}

PeeledDegrees peel_degrees(const std::vector<double>& degrees) {
  constexpr double eps = 1e-12;
  std::vector<double> d = degrees;
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  PeeledDegrees out;

  bool changed = true;
  while (changed && !d.empty()) {
    changed = false;
    const double top = static_cast<double>(d.size()) - 1.0;
    for (double x : d) {
      if (!std::isfinite(x) || x < -eps || x > top + eps)
        throw Error(ErrorKind::MaxEntBoundary, "degree sequence is not realisable: a degree falls outside [0, n-1]");
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (std::abs(d[i]) <= eps) {
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
        ++out.isolated;
        changed = true;
        break;
      }
      if (std::abs(d[i] - top) <= eps) {
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
        for (double& x : d) x -= 1.0;
        ++out.universal;
        changed = true;
        break;
      }
    }
  }
  out.core = std::move(d);
  out.kept = std::move(idx);
  return out;
}

BernoulliFit fit_graph(const DegreeSpec& spec, const SolverOptions& opts) {
  PeeledDegrees peeled = peel_degrees(spec.degrees);
  const std::vector<double>& deg = peeled.core;
  const auto n = static_cast<Eigen::Index>(deg.size());

  BernoulliFit fit;
  fit.vertices = peeled.kept;
  if (n == 0) {
    fit.alpha = Eigen::VectorXd();
    fit.mu = Eigen::MatrixXd();
    return fit;
  }
  if (n < 3) throw Error(ErrorKind::SingularCovariance, "graph core has fewer than 3 vertices");

  Eigen::VectorXd alpha(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = std::clamp(deg[i] / static_cast<double>(n - 1), 1e-6, 1.0 - 1e-6);
    alpha(i) = 0.5 * std::log(p / (1.0 - p));
  }

  Eigen::MatrixXd mu = graph_mu(alpha);
  Eigen::VectorXd grad = graph_gradient(mu, deg);
  double residual = grad.cwiseAbs().maxCoeff();
  int iter = 0;
  for (; iter < opts.max_iter && residual > opts.tol; ++iter) {
    Eigen::MatrixXd hess = (mu.array() * (1.0 - mu.array())).matrix();
    for (Eigen::Index i = 0; i < n; ++i) hess(i, i) = hess.row(i).sum();

    bool accepted = false;
    Eigen::LLT<Eigen::MatrixXd> llt(hess);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd step = -llt.solve(grad);
      const double slope = grad.dot(step);
      const double g0 = graph_potential(alpha, deg);
      for (double t = 1.0; t >= kMinStep; t *= 0.5) {
        Eigen::VectorXd trial = alpha + t * step;
        const Eigen::MatrixXd trial_mu = graph_mu(trial);
        const double trial_res = graph_gradient(trial_mu, deg).cwiseAbs().maxCoeff();
        const double g1 = graph_potential(trial, deg);
        if (g1 <= g0 + kArmijo * t * slope || trial_res < 0.5 * residual) {
          alpha = std::move(trial);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      for (Eigen::Index i = 0; i < n; ++i) alpha(i) = solve_bernoulli_coordinate(alpha, i, deg[i], alpha(i));
    }
    mu = graph_mu(alpha);
    check_graph_boundary(alpha, mu);
    grad = graph_gradient(mu, deg);
    residual = grad.cwiseAbs().maxCoeff();
  }
  if (!(residual <= opts.tol)) {
    std::ostringstream msg;
    msg << "degree residual " << residual << " after " << iter << " iterations";
    throw Error(ErrorKind::NoConvergence, msg.str());
  }
  check_graph_boundary(alpha, mu);

  fit.alpha = std::move(alpha);
  fit.mu = std::move(mu);
  fit.entropy = entropy_graph(fit.mu);
  fit.iterations = iter;
  fit.residual = residual;
  return fit;
}

double entropy_table(const Eigen::MatrixXd& mu) {
  double h = 0.0;
  for (Eigen::Index j = 0; j < mu.rows(); ++j)
    for (Eigen::Index k = 0; k < mu.cols(); ++k) {
      const double x = mu(j, k);
      if (x > 0) h += (1.0 + x) * std::log1p(x) - x * std::log(x);
    }
  return h;
}

double entropy_table(const GeometricFit& fit) { return entropy_table(fit.mu); }

double entropy_graph(const Eigen::MatrixXd& mu) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < mu.rows(); ++i)
    for (Eigen::Index j = i + 1; j < mu.cols(); ++j) {
      const double p = mu(i, j);
      if (p > 0 && p < 1) h -= p * std::log(p) + (1.0 - p) * std::log1p(-p);
    }
  return h;
}

double entropy_graph(const BernoulliFit& fit) { return entropy_graph(fit.mu); }

}  // namespace latcount
