#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "latcount/maxent.hpp"
#include "latcount/moments.hpp"

namespace latcount {

struct Diagnostic {
  std::string code;     // stable identifier, e.g. "aspect_ratio"
  std::string message;  // human text; heuristic thresholds are labeled as such
};

/// All quantities are natural logs; counts are never materialised.
///   ln_gauss     = lattice_log_det + entropy - (d/2) ln(2 pi) - log_det_V / 2
///   ln_edgeworth = ln_gauss - kappa3/72 + kappa4/24
struct CountReport {
  Model model = Model::Table;
  Eigen::Index d = 0;
  double entropy = 0.0;
  double log_det_V = 0.0;
  double kappa3 = 0.0;
  double kappa4 = 0.0;
  double lattice_log_det = 0.0;
  double ln_gauss = 0.0;
  double ln_edgeworth = 0.0;
  // True when no object satisfies the constraints (odd degree sum); the log
  // fields are then -infinity.
  bool zero_count = false;
  // Graphs only: vertices removed before fitting because their neighbourhood
  // is forced.
  std::size_t peeled_isolated = 0;
  std::size_t peeled_universal = 0;
  int solver_iterations = 0;
  double solver_residual = 0.0;
  std::vector<Diagnostic> diagnostics;
};

CountReport estimate_table(const MarginSpec& spec, const SolverOptions& opts = {});

/// Odd degree sums short-circuit to a zero-count report; everything else is
/// peeled, fitted and assembled with lattice determinant 2.
CountReport estimate_graph(const DegreeSpec& spec, const SolverOptions& opts = {});

/// Same assembly as estimate_table for an m x n table whose margins are all
/// equal (rows n*mu, cols m*mu), using the closed-form cumulants.
CountReport estimate_equal_margins_closed_form(std::size_t m, std::size_t n, double mu);

inline double gaussian_only(const CountReport& r) { return r.ln_gauss; }

double ln_gauss_from(double lattice_log_det, double entropy, Eigen::Index d, double log_det_V);
double edgeworth_from(double ln_gauss, double kappa3, double kappa4);

/// Heuristic applicability warnings (thresholds are rules of thumb, not
/// guarantees).
std::vector<Diagnostic> validity_diagnostics(const MarginSpec& spec, const GeometricFit& fit);
std::vector<Diagnostic> validity_diagnostics(const DegreeSpec& spec, const BernoulliFit& fit);

/// Convenience overloads that fit first.
std::vector<Diagnostic> validity_diagnostics(const MarginSpec& spec);
std::vector<Diagnostic> validity_diagnostics(const DegreeSpec& spec);

inline double to_log10(double nats) { return nats / 2.302585092994045684; }

}  // namespace latcount
