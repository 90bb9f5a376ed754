#pragma once

// Maximum-entropy product distributions matching prescribed margins.
//
// Tables: cells are independent geometrics with expectations mu_jk where
//   log(1 + 1/mu_jk) = alpha_j + beta_k.
// Graphs: edges are independent Bernoullis with expectations mu_ij where
//   logit(mu_ij) = alpha_i + alpha_j.
// Both are fitted by damped Newton on the convex dual potential.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace latcount {

struct MarginSpec {
  std::vector<double> rows;
  std::vector<double> cols;

  std::size_t m() const { return rows.size(); }
  std::size_t n() const { return cols.size(); }
  double total() const;
};

/// Throws Error{InfeasibleMargins} when a margin is nonpositive, a side is
/// empty, or the row and column totals disagree beyond 1e-9 relative.
void validate(const MarginSpec& spec);

struct DegreeSpec {
  std::vector<double> degrees;

  std::size_t n() const { return degrees.size(); }
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 200;
};

struct GeometricFit {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::MatrixXd mu;  // m x n cell expectations
  double entropy = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

struct BernoulliFit {
  Eigen::VectorXd alpha;
  Eigen::MatrixXd mu;  // symmetric, zero diagonal
  // Original index of each fitted vertex. Vertices peeled off beforehand
  // (forced degree 0 or n-1) are absent.
  std::vector<std::size_t> vertices;
  double entropy = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// `start`, if given, is an initial (alpha, beta) pair; the fitted mu does not
/// depend on it.
GeometricFit fit_table(const MarginSpec& spec, const SolverOptions& opts = {},
                       std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> start = std::nullopt);

/// Peels forced vertices first (see peel_degrees) and fits the remaining
/// core; an empty core yields an empty fit.
BernoulliFit fit_graph(const DegreeSpec& spec, const SolverOptions& opts = {});

double entropy_table(const Eigen::MatrixXd& mu);
double entropy_table(const GeometricFit& fit);

double entropy_graph(const Eigen::MatrixXd& mu);
double entropy_graph(const BernoulliFit& fit);

/// Result of stripping vertices whose neighbourhood is forced: degree-0
/// vertices have no edges, degree-(n-1) vertices are adjacent to everyone.
struct PeeledDegrees {
  std::vector<double> core;          // residual degrees of the surviving vertices
  std::vector<std::size_t> kept;     // original indices of the surviving vertices
  std::size_t isolated = 0;          // removed with degree 0
  std::size_t universal = 0;         // removed with degree n-1
};

/// Throws Error{MaxEntBoundary} when peeling exposes a degree that cannot be
/// realised (negative, or larger than the remaining vertex count allows).
PeeledDegrees peel_degrees(const std::vector<double>& degrees);

}  // namespace latcount
