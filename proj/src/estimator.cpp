#include "latcount/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace latcount {

namespace {

constexpr double kAspectLimit = 3.0;
constexpr double kMarginRatioLimit = 3.0;
constexpr double kBoundednessLimit = 1.05;
constexpr double kTableMuLow = 0.05;
constexpr double kTableMuHigh = 20.0;
constexpr double kGraphMuLow = 0.05;
constexpr double kGraphMuHigh = 0.95;

bool all_integral(const std::vector<double>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::abs(x - std::round(x)) <= 1e-9; });
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

double spread(const std::vector<double>& xs) {
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return *hi / *lo;
}

}  // namespace

double ln_gauss_from(double lattice_log_det, double entropy, Eigen::Index d, double log_det_V) {
  return lattice_log_det + entropy - 0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi) -
         0.5 * log_det_V;
}

double edgeworth_from(double ln_gauss, double kappa3, double kappa4) {
  return ln_gauss - kappa3 / 72.0 + kappa4 / 24.0;
}

CountReport estimate_table(const MarginSpec& spec, const SolverOptions& opts) {
  const GeometricFit fit = fit_table(spec, opts);
  const CovarianceModel model = build_table_covariance(fit);
  const EdgeCoefficients coeffs = table_coefficients(fit.mu);
  const CumulantSummary cs = summarize(model, coeffs);

  CountReport r;
  r.model = Model::Table;
  r.d = cs.d;
  r.entropy = fit.entropy;
  r.log_det_V = cs.log_det_V;
  r.kappa3 = cs.kappa3;
  r.kappa4 = cs.kappa4;
  r.lattice_log_det = 0.0;
  r.ln_gauss = ln_gauss_from(r.lattice_log_det, r.entropy, r.d, r.log_det_V);
  r.ln_edgeworth = edgeworth_from(r.ln_gauss, r.kappa3, r.kappa4);
  r.solver_iterations = fit.iterations;
  r.solver_residual = fit.residual;
  r.diagnostics = validity_diagnostics(spec, fit);
  return r;
}

CountReport estimate_equal_margins_closed_form(std::size_t m, std::size_t n, double mu) {
  const CumulantSummary cs = closed_form_equal_margins(m, n, mu);
  CountReport r;
  r.model = Model::Table;
  r.d = cs.d;
  r.entropy = static_cast<double>(m * n) * ((1.0 + mu) * std::log1p(mu) - mu * std::log(mu));
  r.log_det_V = cs.log_det_V;
  r.kappa3 = cs.kappa3;
  r.kappa4 = cs.kappa4;
  r.ln_gauss = ln_gauss_from(0.0, r.entropy, r.d, r.log_det_V);
  r.ln_edgeworth = edgeworth_from(r.ln_gauss, r.kappa3, r.kappa4);
  return r;
}

CountReport estimate_graph(const DegreeSpec& spec, const SolverOptions& opts) {
  CountReport r;
  r.model = Model::Graph;

  const double sum = std::accumulate(spec.degrees.begin(), spec.degrees.end(), 0.0);
  if (all_integral(spec.degrees) && std::llround(sum) % 2 != 0) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    r.zero_count = true;
    r.ln_gauss = r.ln_edgeworth = neg_inf;
    r.lattice_log_det = std::log(2.0);
    r.d = static_cast<Eigen::Index>(spec.n());
    r.diagnostics.push_back({"odd_degree_sum", "degree sum is odd: no graph has this degree sequence"});
    return r;
  }

  const PeeledDegrees peeled = peel_degrees(spec.degrees);
  r.peeled_isolated = peeled.isolated;
  r.peeled_universal = peeled.universal;

  const BernoulliFit fit = fit_graph(spec, opts);
  if (fit.vertices.empty()) {
    // Every edge is forced; exactly one graph.
    r.diagnostics.push_back({"fully_forced", "every vertex was peeled; the degree sequence has exactly one realisation"});
    return r;
  }

  const CovarianceModel model = build_graph_covariance(fit);
  const EdgeCoefficients coeffs = graph_coefficients(fit.mu);
  const CumulantSummary cs = summarize(model, coeffs);

  r.d = cs.d;
  r.entropy = fit.entropy;
  r.log_det_V = cs.log_det_V;
  r.kappa3 = cs.kappa3;
  r.kappa4 = cs.kappa4;
  r.lattice_log_det = std::log(2.0);
  r.ln_gauss = ln_gauss_from(r.lattice_log_det, r.entropy, r.d, r.log_det_V);
  r.ln_edgeworth = edgeworth_from(r.ln_gauss, r.kappa3, r.kappa4);
  r.solver_iterations = fit.iterations;
  r.solver_residual = fit.residual;
  r.diagnostics = validity_diagnostics(spec, fit);
  return r;
}

std::vector<Diagnostic> validity_diagnostics(const MarginSpec& spec, const GeometricFit& fit) {
  std::vector<Diagnostic> out;
  const double m = static_cast<double>(spec.m());
  const double n = static_cast<double>(spec.n());

  const double aspect = std::max(m / n, n / m);
  if (aspect > kAspectLimit)
    out.push_back({"aspect_ratio", "heuristic: table aspect ratio " + fmt(aspect) +
                                       " exceeds 3; Edgeworth terms of order n/m are unreliable"});

  const double row_spread = spread(spec.rows);
  const double col_spread = spread(spec.cols);
  if (row_spread > kMarginRatioLimit || col_spread > kMarginRatioLimit)
    out.push_back({"margin_ratio", "heuristic: max/min margin ratio " + fmt(std::max(row_spread, col_spread)) +
                                       " exceeds 3"});

  const double max_r = *std::max_element(spec.rows.begin(), spec.rows.end());
  const double max_c = *std::max_element(spec.cols.begin(), spec.cols.end());
  const double bounded = (1.0 + n / max_r) * (1.0 + m / max_c) / (1.0 + m * n / spec.total());
  if (bounded < kBoundednessLimit)
    out.push_back({"boundedness", "heuristic: (1+n/max r)(1+m/max c)/(1+mn/T) = " + fmt(bounded) +
                                      " is below 1.05; cell expectations may be badly unbalanced"});

  if (fit.mu.size() > 0 && (fit.mu.minCoeff() < kTableMuLow || fit.mu.maxCoeff() > kTableMuHigh))
    out.push_back({"cell_mean_range", "heuristic: fitted cell means span [" + fmt(fit.mu.minCoeff()) + ", " +
                                          fmt(fit.mu.maxCoeff()) + "], outside [0.05, 20]"});

  if (!all_integral(spec.rows) || !all_integral(spec.cols))
    out.push_back({"non_integer_margins", "margins are not integers; the estimate has no exact-count interpretation"});
  return out;
}

std::vector<Diagnostic> validity_diagnostics(const DegreeSpec& spec, const BernoulliFit& fit) {
  std::vector<Diagnostic> out;
  const auto n = fit.mu.rows();
  if (n > 0) {
    std::vector<double> core;
    for (Eigen::Index i = 0; i < n; ++i) core.push_back(fit.mu.row(i).sum());
    const double s = spread(core);
    if (s > kMarginRatioLimit)
      out.push_back({"degree_ratio", "heuristic: max/min core degree ratio " + fmt(s) + " exceeds 3"});
    double lo = 1.0, hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        lo = std::min(lo, fit.mu(i, j));
        hi = std::max(hi, fit.mu(i, j));
      }
    if (lo < kGraphMuLow || hi > kGraphMuHigh)
      out.push_back({"edge_probability_range", "heuristic: fitted edge probabilities span [" + fmt(lo) + ", " +
                                                   fmt(hi) + "], outside [0.05, 0.95]"});
  }
  if (fit.vertices.size() < spec.n())
    out.push_back({"peeled", std::to_string(spec.n() - fit.vertices.size()) +
                                 " vertices with forced neighbourhoods were removed before fitting"});
  if (!all_integral(spec.degrees))
    out.push_back({"non_integer_degrees", "degrees are not integers; the estimate has no exact-count interpretation"});
  return out;
}

std::vector<Diagnostic> validity_diagnostics(const MarginSpec& spec) { return validity_diagnostics(spec, fit_table(spec)); }

std::vector<Diagnostic> validity_diagnostics(const DegreeSpec& spec) { return validity_diagnostics(spec, fit_graph(spec)); }

}  // namespace latcount
