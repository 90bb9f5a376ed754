#include "latcount/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace latcount::io {

namespace {

constexpr double kLn10 = 2.302585092994045684;

nlohmann::json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round6(x);
}

const char* model_name(Model m) { return m == Model::Table ? "table" : "graph"; }

}  // namespace

std::string sig6(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double round6(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", x);
  return std::strtod(buf, nullptr);
}

std::string count_display(double ln_value) {
  if (std::isinf(ln_value) && ln_value < 0) return "0";
  if (!std::isfinite(ln_value)) return sig6(ln_value);
  const double l10 = ln_value / kLn10;
  long long exponent = static_cast<long long>(std::floor(l10));
  double mantissa = std::round(std::pow(10.0, l10 - static_cast<double>(exponent)) * 100.0) / 100.0;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    ++exponent;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2fe%lld", mantissa, exponent);
  return buf;
}

nlohmann::json to_json(const std::vector<Diagnostic>& diagnostics) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : diagnostics) out.push_back({{"code", d.code}, {"message", d.message}});
  return out;
}

nlohmann::json to_json(const oracle::ExactCount& c) {
  return {{"instance", c.description},
          {"value", c.value.str()},
          {"ln", num(c.ln_value)},
          {"log10", num(c.ln_value / kLn10)},
          {"states", c.states}};
}

nlohmann::json to_json(const CountReport& r, const Extras& extras) {
  nlohmann::json j;
  j["model"] = model_name(r.model);
  j["d"] = r.d;
  j["entropy"] = num(r.entropy);
  j["log_det_V"] = num(r.log_det_V);
  j["kappa3"] = num(r.kappa3);
  j["kappa4"] = num(r.kappa4);
  j["lattice_log_det"] = num(r.lattice_log_det);
  j["ln_gauss"] = num(r.ln_gauss);
  j["ln_edgeworth"] = num(r.ln_edgeworth);
  j["log10_gauss"] = num(r.ln_gauss / kLn10);
  j["log10_edgeworth"] = num(r.ln_edgeworth / kLn10);
  j["count_gauss"] = count_display(r.ln_gauss);
  j["count_edgeworth"] = count_display(r.ln_edgeworth);
  j["zero_count"] = r.zero_count;
  if (r.model == Model::Graph) j["peeled"] = {{"isolated", r.peeled_isolated}, {"universal", r.peeled_universal}};
  j["solver"] = {{"iterations", r.solver_iterations}, {"residual", num(r.solver_residual)}};
  j["diagnostics"] = to_json(r.diagnostics);
  if (extras.exact) {
    nlohmann::json e = to_json(*extras.exact);
    const bool both_finite = std::isfinite(extras.exact->ln_value) && std::isfinite(r.ln_edgeworth);
    e["edgeworth_error"] = both_finite ? num(r.ln_edgeworth - extras.exact->ln_value) : nlohmann::json(nullptr);
    e["gauss_error"] = both_finite ? num(r.ln_gauss - extras.exact->ln_value) : nlohmann::json(nullptr);
    j["exact"] = std::move(e);
  }
  if (extras.mc) {
    const auto& m = *extras.mc;
    j["monte_carlo"] = {{"samples", m.samples}, {"seed", m.seed},   {"kappa3", num(m.kappa3_hat)},
                        {"se3", num(m.se3)},    {"kappa4", num(m.kappa4_hat)}, {"se4", num(m.se4)}};
  }
  return j;
}

std::string to_text(const oracle::ExactCount& c) {
  std::ostringstream os;
  os << "instance  " << c.description << "\n"
     << "exact     " << c.value.str() << "\n"
     << "ln        " << sig6(c.ln_value) << "\n"
     << "log10     " << sig6(c.ln_value / kLn10) << "\n"
     << "states    " << c.states << "\n";
  return os.str();
}

std::string to_text(const CountReport& r, const Extras& extras) {
  std::ostringstream os;
  os << "model            " << model_name(r.model) << "\n"
     << "dimension        " << r.d << "\n";
  if (r.zero_count) {
    os << "count            0 (no realisation exists)\n";
  } else {
    os << "entropy          " << sig6(r.entropy) << "\n"
       << "ln det V         " << sig6(r.log_det_V) << "\n"
       << "kappa3           " << sig6(r.kappa3) << "\n"
       << "kappa4           " << sig6(r.kappa4) << "\n"
       << "ln gauss         " << sig6(r.ln_gauss) << "  (log10 " << sig6(r.ln_gauss / kLn10) << ", "
       << count_display(r.ln_gauss) << ")\n"
       << "ln edgeworth     " << sig6(r.ln_edgeworth) << "  (log10 " << sig6(r.ln_edgeworth / kLn10) << ", "
       << count_display(r.ln_edgeworth) << ")\n"
       << "solver           " << r.solver_iterations << " iterations, residual " << sig6(r.solver_residual)
       << "\n";
  }
  if (r.model == Model::Graph && (r.peeled_isolated || r.peeled_universal))
    os << "peeled           " << r.peeled_isolated << " isolated, " << r.peeled_universal << " universal\n";
  if (extras.exact) {
    const auto& e = *extras.exact;
    os << "exact            " << e.value.str() << "  (ln " << sig6(e.ln_value) << ")\n";
    if (std::isfinite(e.ln_value) && std::isfinite(r.ln_edgeworth))
      os << "edgeworth error  " << sig6(r.ln_edgeworth - e.ln_value) << "\n"
         << "gauss error      " << sig6(r.ln_gauss - e.ln_value) << "\n";
  }
  if (extras.mc) {
    const auto& m = *extras.mc;
    os << "monte carlo      kappa3 " << sig6(m.kappa3_hat) << " +- " << sig6(m.se3) << ", kappa4 "
       << sig6(m.kappa4_hat) << " +- " << sig6(m.se4) << "  (" << m.samples << " samples, seed " << m.seed
       << ")\n";
  }
  for (const auto& d : r.diagnostics) os << "warning          [" << d.code << "] " << d.message << "\n";
  return os.str();
}

}  // namespace latcount::io
