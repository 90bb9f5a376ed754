#include <cmath>
#include <complex>
#include <numbers>

#include "latcount/error.hpp"
#include "latcount/oracle.hpp"

namespace latcount::oracle {

namespace {

// Characteristic function of X - mu for X geometric with mean mu.
std::complex<double> psi(double mu, double s) {
  const std::complex<double> e = std::polar(1.0, s);
  return std::polar(1.0, -mu * s) / (1.0 - mu * (e - 1.0));
}

}  // namespace

QuadratureResult charfn_quadrature_table(const GeometricFit& fit, std::size_t grid) {
  const Eigen::Index m = fit.mu.rows();
  const Eigen::Index n = fit.mu.cols();
  const Eigen::Index d = m + n - 1;
  if (d > 3) throw Error(ErrorKind::DimensionTooLarge, "quadrature supports m + n - 1 <= 3, got " + std::to_string(d));
  if (grid < 64) throw Error(ErrorKind::InvalidArgument, "quadrature grid must be at least 64");

  std::vector<double> nodes(grid);
  for (std::size_t g = 0; g < grid; ++g)
    nodes[g] = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(g) / static_cast<double>(grid);

  // Coordinates v_1..v_m, w_1..w_{n-1}; w_n = 0. Each cell depends on one or
  // two coordinates, so its factor is tabulated over those grid indices.
  struct Cell {
    std::size_t a, b;  // b == a when the cell sits in the last column
    std::vector<std::complex<double>> values;
  };
  std::vector<Cell> cells;
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double mu = fit.mu(j, k);
      Cell c{static_cast<std::size_t>(j), static_cast<std::size_t>(j), {}};
      if (k + 1 < n) {
        c.b = static_cast<std::size_t>(m + k);
        c.values.resize(grid * grid);
        for (std::size_t g = 0; g < grid; ++g)
          for (std::size_t h = 0; h < grid; ++h) c.values[g * grid + h] = psi(mu, nodes[g] + nodes[h]);
      } else {
        c.values.resize(grid);
        for (std::size_t g = 0; g < grid; ++g) c.values[g] = psi(mu, nodes[g]);
      }
      cells.push_back(std::move(c));
    }

  std::size_t points = 1;
  for (Eigen::Index k = 0; k < d; ++k) points *= grid;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::complex<double> sum = 0.0;
  for (std::size_t p = 0; p < points; ++p) {
    if (p > 0)
      for (auto& i : idx) {
        if (++i < grid) break;
        i = 0;
      }
    double re = 1.0, im = 0.0;
    for (const Cell& c : cells) {
      const std::complex<double>& f = c.b == c.a ? c.values[idx[c.a]] : c.values[idx[c.a] * grid + idx[c.b]];
      const double r = re * f.real() - im * f.imag();
      im = re * f.imag() + im * f.real();
      re = r;
    }
    sum += std::complex<double>(re, im);
  }
  sum /= static_cast<double>(points);

  QuadratureResult r;
  r.ln_probability = std::log(sum.real());
  r.imag = sum.imag();
  return r;
}

}  // namespace latcount::oracle
