#include <doctest.h>

#include <cmath>
#include <random>

#include "latcount/error.hpp"
#include "latcount/maxent.hpp"

using namespace latcount;

namespace {

double bernoulli_entropy(double p) { return -(p * std::log(p) + (1 - p) * std::log(1 - p)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected latcount::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("fit_table: symmetric 2x2") {
  const auto fit = fit_table({{2, 2}, {2, 2}});
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) CHECK(fit.mu(j, k) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.residual <= 1e-10);
  CHECK(std::abs(fit.beta.mean()) <= 1e-12);
}

TEST_CASE("fit_table: equal columns give column-constant means") {
  const auto fit = fit_table({{3, 1}, {2, 2}});
  CHECK(fit.mu(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.mu(0, 1) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.mu(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.mu(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fit_table: infeasible margins") {
  CHECK(kind_of([] { fit_table({{1, 2}, {2, 2}}); }) == ErrorKind::InfeasibleMargins);
  CHECK(kind_of([] { fit_table({{0, 4}, {2, 2}}); }) == ErrorKind::InfeasibleMargins);
  CHECK(kind_of([] { fit_table({{}, {2, 2}}); }) == ErrorKind::InfeasibleMargins);
}

TEST_CASE("fit_table: dual parameterisation and margins hold") {
  const MarginSpec spec{{5, 12, 3, 7}, {9, 4, 14}};
  const auto fit = fit_table(spec);
  for (Eigen::Index j = 0; j < fit.mu.rows(); ++j) {
    CHECK(std::abs(fit.mu.row(j).sum() - spec.rows[j]) <= 1e-10);
    for (Eigen::Index k = 0; k < fit.mu.cols(); ++k)
      CHECK(std::log1p(1.0 / fit.mu(j, k)) == doctest::Approx(fit.alpha(j) + fit.beta(k)).epsilon(1e-12));
  }
  for (Eigen::Index k = 0; k < fit.mu.cols(); ++k) CHECK(std::abs(fit.mu.col(k).sum() - spec.cols[k]) <= 1e-10);
}

TEST_CASE("fit_table: solution does not depend on the starting point") {
  const MarginSpec spec{{5, 12, 3, 7}, {9, 4, 14}};
  const auto a = fit_table(spec);
  Eigen::VectorXd alpha0 = Eigen::VectorXd::Constant(4, 3.0);
  Eigen::VectorXd beta0(3);
  beta0 << -2.0, 1.0, 0.5;
  const auto b = fit_table(spec, {}, std::make_pair(alpha0, beta0));
  CHECK((a.mu - b.mu).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("fit_table: permutation and transpose") {
  const MarginSpec spec{{5, 12, 3, 7}, {9, 4, 14}};
  const auto fit = fit_table(spec);
  const auto perm = fit_table({{7, 3, 12, 5}, {9, 4, 14}});
  const int order[] = {3, 2, 1, 0};
  for (int j = 0; j < 4; ++j) CHECK((fit.mu.row(order[j]) - perm.mu.row(j)).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(std::abs(fit.entropy - perm.entropy) <= 1e-12 * fit.entropy);

  const auto tr = fit_table({spec.cols, spec.rows});
  CHECK((fit.mu.transpose() - tr.mu).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("fit_table: non-integer targets and large means") {
  const auto fit = fit_table({{800.0 + 1.0 / 3, 800.0 + 1.0 / 3, 800.0 + 1.0 / 3}, std::vector<double>(49, 49.0)});
  CHECK(fit.residual <= 1e-10);
  CHECK(fit.mu(0, 0) == doctest::Approx(49.0 / 3).epsilon(1e-10));
}

TEST_CASE("fit_table: highly unbalanced margins converge") {
  const auto fit = fit_table({{1, 1, 98}, {50, 25, 25}});
  CHECK(fit.residual <= 1e-10);
}

TEST_CASE("fit_graph: regular and two-class sequences") {
  const auto reg = fit_graph({std::vector<double>(8, 3.0)});
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) CHECK(reg.mu(i, j) == doctest::Approx(3.0 / 7).epsilon(1e-12));
  CHECK(reg.entropy == doctest::Approx(28 * bernoulli_entropy(3.0 / 7)).epsilon(1e-12));

  // Within-class probability is 1 here, so only the between-class value is
  // well conditioned.
  const auto edge = fit_graph({{5, 5, 5, 5, 2, 2, 2, 2}});
  CHECK(edge.mu(0, 4) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(edge.mu(3, 7) == doctest::Approx(0.5).epsilon(1e-10));

  const auto two = fit_graph({{5, 5, 5, 5, 5, 4, 4, 4, 4, 4}});
  CHECK(two.mu(0, 5) == doctest::Approx(0.5).epsilon(1e-10));
  for (int i = 0; i < 10; ++i) {
    CHECK(two.mu(i, i) == 0.0);
    for (int j = i + 1; j < 10; ++j) {
      CHECK(two.mu(i, j) == two.mu(j, i));
      const double logit = std::log(two.mu(i, j) / (1 - two.mu(i, j)));
      CHECK(logit == doctest::Approx(two.alpha(i) + two.alpha(j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("fit_graph: peeling and boundary detection") {
  CHECK(kind_of([] { fit_graph({{3, 3, 3, 0}}); }) == ErrorKind::MaxEntBoundary);

  const auto p = peel_degrees({4, 0, 2, 2, 3, 1});
  CHECK(p.isolated >= 1);
  CHECK(p.universal >= 1);

  // A star on 4 vertices: every vertex is forced.
  const auto star = fit_graph({{3, 1, 1, 1}});
  CHECK(star.vertices.empty());

  // Degree 0 and degree n-1 vertices are removed; the rest is fitted.
  const auto g = fit_graph({{6, 0, 3, 3, 3, 3, 3, 3}});
  CHECK(g.vertices.size() == 6);
  CHECK(g.residual <= 1e-10);
  CHECK(g.mu(0, 1) == doctest::Approx(2.0 / 5).epsilon(1e-12));
}

TEST_CASE("fit_graph: complement symmetry") {
  const std::vector<double> d{2, 3, 3, 4, 4, 5, 3, 2};
  std::vector<double> c;
  for (double x : d) c.push_back(7 - x);
  const auto a = fit_graph({d});
  const auto b = fit_graph({c});
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) CHECK(std::abs(a.mu(i, j) - (1 - b.mu(i, j))) <= 1e-9);
  CHECK(std::abs(a.entropy - b.entropy) <= 1e-9);
}

TEST_CASE("fit_graph: residuals on random graphical sequences") {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 6 + rep % 10;
    std::bernoulli_distribution edge(0.2 + 0.6 * (rep % 5) / 4.0);
    std::vector<double> d(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (edge(gen)) d[i] += 1, d[j] += 1;
    try {
      const auto fit = fit_graph({d});
      CHECK(fit.residual <= 1e-10);
    } catch (const Error& e) {
      // A sampled graph can sit on the boundary of the degree polytope.
      CHECK(e.kind() == ErrorKind::MaxEntBoundary);
    }
  }
}

TEST_CASE("entropy helpers") {
  CHECK(entropy_table(Eigen::MatrixXd::Constant(1, 1, 1.0)) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK(entropy_table(Eigen::MatrixXd::Constant(2, 2, 1.0)) == doctest::Approx(8 * std::log(2.0)).epsilon(1e-14));
  CHECK(entropy_table(Eigen::MatrixXd::Constant(1, 1, 1e-300)) >= 0.0);
  CHECK(entropy_table(Eigen::MatrixXd::Constant(1, 1, 1e-12)) < 1e-10);

  Eigen::MatrixXd half = Eigen::MatrixXd::Constant(4, 4, 0.5);
  half.diagonal().setZero();
  CHECK(entropy_graph(half) == doctest::Approx(6 * std::log(2.0)).epsilon(1e-14));
  Eigen::MatrixXd tiny = Eigen::MatrixXd::Constant(3, 3, 1e-13);
  tiny.diagonal().setZero();
  CHECK(entropy_graph(tiny) < 1e-10);
}
