#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>

#include "latcount/error.hpp"
#include "latcount/oracle.hpp"

using namespace latcount;
using oracle::BigInt;

namespace {

// Independent enumerators: every table with entries <= cap / every graph on n
// vertices, tallied by margins.
std::map<std::pair<std::vector<long long>, std::vector<long long>>, long long> tally_tables(int m, int n, int cap) {
  std::map<std::pair<std::vector<long long>, std::vector<long long>>, long long> out;
  std::vector<int> cells(m * n, 0);
  while (true) {
    std::vector<long long> r(m, 0), c(n, 0);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k) r[j] += cells[j * n + k], c[k] += cells[j * n + k];
    ++out[{r, c}];
    int i = 0;
    while (i < m * n && ++cells[i] > cap) cells[i++] = 0;
    if (i == m * n) break;
  }
  return out;
}

std::map<std::vector<long long>, long long> tally_graphs(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  std::map<std::vector<long long>, long long> out;
  for (unsigned long mask = 0; mask < (1ul << edges.size()); ++mask) {
    std::vector<long long> d(n, 0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (mask >> e & 1) ++d[edges[e].first], ++d[edges[e].second];
    ++out[d];
  }
  return out;
}

GeometricFit fit_of(std::vector<double> rows, std::vector<double> cols) { return fit_table({rows, cols}); }

}  // namespace

TEST_CASE("table oracle: small examples") {
  CHECK(oracle::exact_count_tables({2, 2}, {2, 2}).value == 3);
  CHECK(oracle::exact_count_tables({1, 1}, {1, 1}).value == 2);
  CHECK(oracle::exact_count_tables({5}, {1, 2, 2}).value == 1);
  CHECK(oracle::exact_count_tables({1, 2}, {2, 2}).value == 0);
  const auto big = oracle::exact_count_tables({100, 100, 100}, {100, 100, 100});
  CHECK(big.value == BigInt(13268976));
  CHECK(big.ln_value == doctest::Approx(std::log(13268976.0)).epsilon(1e-14));
}

TEST_CASE("table oracle: agrees with brute force") {
  for (auto [m, n, cap] : {std::tuple{2, 2, 4}, {2, 3, 3}, {3, 3, 2}, {1, 4, 4}}) {
    for (const auto& [margins, count] : tally_tables(m, n, cap)) {
      const auto& [r, c] = margins;
      const long long top = std::max(*std::max_element(r.begin(), r.end()), *std::max_element(c.begin(), c.end()));
      if (top > cap) continue;  // the enumeration truncated this class
      CAPTURE(m);
      CAPTURE(n);
      CHECK(oracle::exact_count_tables(r, c).value == count);
      CHECK(oracle::exact_count_tables(c, r).value == count);
    }
  }
}

TEST_CASE("table oracle: published 3x9 value and input checks") {
  const auto c = oracle::exact_count_tables({99, 99, 99}, std::vector<long long>(9, 33));
  CHECK(c.value == BigInt("2792071358042944601350"));
  CHECK_THROWS_AS(oracle::exact_count_tables({-1, 3}, {1, 1}), Error);
  CHECK_THROWS_AS(oracle::exact_count_tables({}, {1}), Error);
}

TEST_CASE("graph oracle: small examples") {
  CHECK(oracle::exact_count_graphs({1, 1, 1, 1}).value == 3);
  CHECK(oracle::exact_count_graphs({2, 2, 2}).value == 1);
  CHECK(oracle::exact_count_graphs({}).value == 1);
  CHECK(oracle::exact_count_graphs({0, 0}).value == 1);
  CHECK(oracle::exact_count_graphs({3, 3, 3, 3, 3, 3, 3, 3}).value == 19355);
  CHECK(oracle::exact_count_graphs({4, 4, 4, 4, 3, 3, 3, 3}).value == 14634);
  CHECK(oracle::exact_count_graphs({3, 3, 3, 0}).value == 0);
  CHECK(oracle::exact_count_graphs({5, 1, 1}).value == 0);
}

TEST_CASE("graph oracle: agrees with brute force on every sequence up to 6 vertices") {
  for (int n = 1; n <= 6; ++n) {
    const auto tally = tally_graphs(n);
    for (const auto& [d, count] : tally) {
      CHECK(oracle::exact_count_graphs(d).value == count);
      CHECK(oracle::is_graphical(d));
    }
    // Every sequence in [0, n-1]^n that never occurred has count zero.
    std::vector<long long> d(n, 0);
    while (true) {
      if (!tally.count(d)) {
        CHECK(oracle::exact_count_graphs(d).value == 0);
        CHECK(!oracle::is_graphical(d));
      }
      int i = 0;
      while (i < n && ++d[i] > n - 1) d[i++] = 0;
      if (i == n) break;
    }
  }
}

TEST_CASE("graph oracle: parity and complement") {
  CHECK(oracle::exact_count_graphs({1, 1, 1}).value == 0);
  CHECK(oracle::exact_count_graphs({3, 3, 2, 2, 2, 1, 0}).value == 0);
  for (const std::vector<long long>& d :
       {std::vector<long long>{3, 3, 2, 2, 2, 2, 1, 1}, {4, 4, 3, 3, 2, 2, 1, 1}, {5, 3, 3, 3, 2, 2, 1, 1}}) {
    std::vector<long long> c;
    for (long long x : d) c.push_back(static_cast<long long>(d.size()) - 1 - x);
    CHECK(oracle::exact_count_graphs(d).value == oracle::exact_count_graphs(c).value);
  }
}

TEST_CASE("oracle budget") {
  try {
    oracle::exact_count_tables({100, 100, 100}, {100, 100, 100}, 5);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  try {
    oracle::exact_count_graphs(std::vector<long long>(12, 5), 3);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  ::setenv("ENTROPY_COUNT_BUDGET", "1234", 1);
  CHECK(oracle::default_budget() == 1234);
  ::unsetenv("ENTROPY_COUNT_BUDGET");
  CHECK(oracle::default_budget() == 10'000'000);
}

TEST_CASE("big-integer log") {
  CHECK(std::isinf(oracle::ln(BigInt(0))));
  CHECK(oracle::ln(BigInt(1)) == 0.0);
  const BigInt big = BigInt(1) << 700;
  CHECK(oracle::ln(big) == doctest::Approx(700 * std::log(2.0)).epsilon(1e-14));
  CHECK(oracle::ln(BigInt("123456789012345678901234567890")) ==
        doctest::Approx(std::log(1.2345678901234568e29)).epsilon(1e-14));
}

TEST_CASE("quadrature: count identity on tiny tables") {
  struct Case {
    std::vector<double> r, c;
    double exact;
  };
  for (const auto& k : {Case{{1, 1}, {1, 1}, 2}, Case{{2, 2}, {2, 2}, 3}, Case{{2}, {1, 1}, 1}, Case{{3, 1}, {2, 2}, 2},
                        Case{{4}, {1, 1, 2}, 1}}) {
    const auto fit = fit_of(k.r, k.c);
    const auto q = oracle::charfn_quadrature_table(fit, 256);
    CHECK(std::exp(q.ln_probability + fit.entropy) == doctest::Approx(k.exact).epsilon(1e-3));
    CHECK(std::abs(q.imag) <= 1e-8);
  }
}

TEST_CASE("quadrature: argument checks") {
  CHECK_THROWS_AS(oracle::charfn_quadrature_table(fit_of({2, 2, 2}, {3, 3}), 256), Error);
  CHECK_THROWS_AS(oracle::charfn_quadrature_table(fit_of({2, 2}, {2, 2}), 32), Error);
}

TEST_CASE("rng: counter-based and reproducible") {
  oracle::CounterRng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  CHECK(oracle::CounterRng(42).at(5) == a.at(5));
  CHECK(oracle::CounterRng(0).at(0) == 0xE220A8397B1DCDAFULL);  // splitmix64 reference output
  oracle::CounterRng u(7);
  double sum = 0, sq = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / 1e5) < 0.02);
  CHECK(std::abs(sq / 1e5 - 1) < 0.02);
}

TEST_CASE("monte carlo: moments agree with the Wick sums") {
  Eigen::MatrixXd mu = Eigen::MatrixXd::Constant(8, 8, 3.0 / 7);
  mu.diagonal().setZero();
  const auto model = build_graph_covariance(mu);
  const auto c = graph_coefficients(mu);
  const auto s = summarize(model, c);
  const auto mc = oracle::mc_gaussian_moments(model, c, 200000, 2024);
  CHECK(std::abs(mc.kappa3_hat - s.kappa3) <= 4 * mc.se3);
  CHECK(std::abs(mc.kappa4_hat - s.kappa4) <= 4 * mc.se4);
  CHECK(mc.se3 > 0);
  CHECK(mc.se4 > 0);

  const auto again = oracle::mc_gaussian_moments(model, c, 200000, 2024);
  CHECK(again.kappa3_hat == mc.kappa3_hat);
  CHECK(again.kappa4_hat == mc.kappa4_hat);
  CHECK(again.se3 == mc.se3);

  const auto doubled = oracle::mc_gaussian_moments(model, c, 400000, 2024);
  const double ratio = doubled.se4 / mc.se4;
  CHECK(ratio >= 0.6);
  CHECK(ratio <= 0.85);
}

TEST_CASE("monte carlo: all-half graph has zero cubic moment") {
  Eigen::MatrixXd mu = Eigen::MatrixXd::Constant(6, 6, 0.5);
  mu.diagonal().setZero();
  const auto mc = oracle::mc_gaussian_moments(build_graph_covariance(mu), graph_coefficients(mu), 1000, 1);
  CHECK(mc.kappa3_hat == 0.0);
}
