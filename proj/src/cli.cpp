#include "latcount/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "latcount/error.hpp"
#include "latcount/estimator.hpp"
#include "latcount/oracle.hpp"
#include "latcount/report_io.hpp"
#include "latcount/repro.hpp"

namespace latcount::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string rows, cols, degrees, input;
  bool json = false;
  bool exact = false;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<std::size_t> mc_samples;
  std::optional<std::uint64_t> seed;
};

struct Instance {
  std::optional<MarginSpec> table;
  std::optional<DegreeSpec> graph;
  SolverOptions opts;
  bool exact = false;
  std::size_t mc_samples = 0;
  std::uint64_t seed = 1;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (item.empty() || end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
      throw UsageError(std::string(flag) + ": not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::vector<double> json_list(const nlohmann::json& j, const char* key) {
  if (!j.is_array() || j.empty()) throw UsageError(std::string("input: '") + key + "' must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw UsageError(std::string("input: '") + key + "' must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<long long> integers(const std::vector<double>& xs, const char* what) {
  std::vector<long long> out;
  for (double x : xs) {
    if (x != std::floor(x) || std::abs(x) > 9e15) throw UsageError(std::string(what) + " must be integers");
    out.push_back(static_cast<long long>(x));
  }
  return out;
}

Instance resolve(const Flags& f) {
  Instance inst;
  std::vector<double> rows, cols, degrees;
  bool have_rows = false, have_cols = false, have_degrees = false;

  if (!f.input.empty()) {
    std::ifstream in(f.input);
    if (!in) throw UsageError("cannot open input file '" + f.input + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("input is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw UsageError("input must be a JSON object");
    if (doc.contains("rows")) rows = json_list(doc["rows"], "rows"), have_rows = true;
    if (doc.contains("cols")) cols = json_list(doc["cols"], "cols"), have_cols = true;
    if (doc.contains("degrees")) degrees = json_list(doc["degrees"], "degrees"), have_degrees = true;
    if (doc.contains("options")) {
      const auto& o = doc["options"];
      if (!o.is_object()) throw UsageError("input: 'options' must be an object");
      try {
        if (o.contains("tol")) inst.opts.tol = o["tol"].get<double>();
        if (o.contains("max_iter")) inst.opts.max_iter = o["max_iter"].get<int>();
        if (o.contains("oracle")) inst.exact = o["oracle"].get<bool>();
        if (o.contains("mc_samples")) inst.mc_samples = o["mc_samples"].get<std::size_t>();
        if (o.contains("seed")) inst.seed = o["seed"].get<std::uint64_t>();
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("input: bad option value: " + std::string(e.what()));
      }
    }
  }
  if (!f.rows.empty()) rows = parse_list(f.rows, "--rows"), have_rows = true;
  if (!f.cols.empty()) cols = parse_list(f.cols, "--cols"), have_cols = true;
  if (!f.degrees.empty()) degrees = parse_list(f.degrees, "--degrees"), have_degrees = true;

  if (have_degrees && (have_rows || have_cols)) throw UsageError("give either rows/cols or degrees, not both");
  if (have_rows != have_cols) throw UsageError("rows and cols must be given together");
  if (!have_degrees && !have_rows) throw UsageError("no instance: use --rows/--cols, --degrees or --input");

  if (have_degrees) inst.graph = DegreeSpec{degrees};
  else inst.table = MarginSpec{rows, cols};

  if (f.tol) inst.opts.tol = *f.tol;
  if (f.max_iter) inst.opts.max_iter = *f.max_iter;
  if (f.exact) inst.exact = true;
  if (f.mc_samples) inst.mc_samples = *f.mc_samples;
  if (f.seed) inst.seed = *f.seed;
  if (!(inst.opts.tol > 0)) throw UsageError("--tol must be positive");
  if (inst.opts.max_iter <= 0) throw UsageError("--max-iter must be positive");
  return inst;
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InfeasibleMargins:
    case ErrorKind::MaxEntBoundary: return kInfeasible;
    case ErrorKind::NoConvergence:
    case ErrorKind::SingularCovariance:
    case ErrorKind::NotPositiveDefinite: return kSolverFailure;
    case ErrorKind::BudgetExceeded: return kBudgetExceeded;
    case ErrorKind::DimensionTooLarge:
    case ErrorKind::InvalidArgument: return kUsage;
  }
  return kUsage;
}

void add_instance_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--rows", f.rows, "Comma-separated row sums");
  sub->add_option("--cols", f.cols, "Comma-separated column sums");
  sub->add_option("--degrees", f.degrees, "Comma-separated vertex degrees");
  sub->add_option("--input", f.input, "JSON instance file");
  sub->add_flag("--json", f.json, "Single-line JSON output");
}

void add_solver_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--tol", f.tol, "Margin residual tolerance");
  sub->add_option("--max-iter", f.max_iter, "Newton iteration cap");
}

int cmd_count(const Flags& f, std::ostream& out) {
  const Instance inst = resolve(f);
  CountReport report;
  io::Extras extras;

  if (inst.table) {
    const MarginSpec& spec = *inst.table;
    validate(spec);
    const GeometricFit fit = fit_table(spec, inst.opts);
    report = estimate_table(spec, inst.opts);
    if (inst.mc_samples > 0)
      extras.mc = oracle::mc_gaussian_moments(build_table_covariance(fit), table_coefficients(fit.mu),
                                              inst.mc_samples, inst.seed);
    if (inst.exact)
      extras.exact = oracle::exact_count_tables(integers(spec.rows, "rows"), integers(spec.cols, "cols"));
  } else {
    const DegreeSpec& spec = *inst.graph;
    report = estimate_graph(spec, inst.opts);
    if (inst.mc_samples > 0 && !report.zero_count && report.d > 0) {
      const BernoulliFit fit = fit_graph(spec, inst.opts);
      extras.mc = oracle::mc_gaussian_moments(build_graph_covariance(fit), graph_coefficients(fit.mu),
                                              inst.mc_samples, inst.seed);
    }
    if (inst.exact) extras.exact = oracle::exact_count_graphs(integers(spec.degrees, "degrees"));
  }

  if (f.json) out << io::dump(io::to_json(report, extras)) << "\n";
  else out << io::to_text(report, extras);
  return kOk;
}

int cmd_diag(const Flags& f, std::ostream& out) {
  const Instance inst = resolve(f);
  nlohmann::json j;
  std::vector<Diagnostic> diags;
  if (inst.table) {
    validate(*inst.table);
    const GeometricFit fit = fit_table(*inst.table, inst.opts);
    diags = validity_diagnostics(*inst.table, fit);
    j["model"] = "table";
    j["solver"] = {{"iterations", fit.iterations}, {"residual", io::round6(fit.residual)}};
    j["cell_mean_min"] = io::round6(fit.mu.minCoeff());
    j["cell_mean_max"] = io::round6(fit.mu.maxCoeff());
  } else {
    const BernoulliFit fit = fit_graph(*inst.graph, inst.opts);
    diags = validity_diagnostics(*inst.graph, fit);
    j["model"] = "graph";
    j["solver"] = {{"iterations", fit.iterations}, {"residual", io::round6(fit.residual)}};
    j["core_vertices"] = fit.vertices.size();
  }
  j["diagnostics"] = io::to_json(diags);

  if (f.json) {
    out << io::dump(j) << "\n";
  } else {
    out << "model       " << j["model"].get<std::string>() << "\n"
        << "solver      " << j["solver"]["iterations"].get<int>() << " iterations, residual "
        << io::sig6(j["solver"]["residual"].get<double>()) << "\n";
    if (diags.empty()) out << "no warnings\n";
    for (const auto& d : diags) out << "warning     [" << d.code << "] " << d.message << "\n";
  }
  return kOk;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  const Instance inst = resolve(f);
  const std::size_t budget = oracle::default_budget();
  const oracle::ExactCount c =
      inst.table ? oracle::exact_count_tables(integers(inst.table->rows, "rows"), integers(inst.table->cols, "cols"),
                                              budget)
                 : oracle::exact_count_graphs(integers(inst.graph->degrees, "degrees"), budget);
  if (f.json) out << io::dump(io::to_json(c)) << "\n";
  else out << io::to_text(c);
  return kOk;
}

int cmd_repro(int table, bool json, std::ostream& out) {
  const repro::Report r = repro::run(table, oracle::default_budget());
  if (json) out << io::dump(repro::to_json(r)) << "\n";
  else out << repro::to_text(r);
  return r.passed() ? kOk : kReproMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate and exact counts of contingency tables and graphs with given degrees"};
  app.name("latcount");
  app.require_subcommand(1);

  Flags count_flags, diag_flags, oracle_flags;
  auto* count = app.add_subcommand("count", "Gaussian and Edgeworth estimates of the count");
  add_instance_flags(count, count_flags);
  add_solver_flags(count, count_flags);
  count->add_flag("--exact", count_flags.exact, "Also run the exact oracle");
  count->add_option("--mc-samples", count_flags.mc_samples, "Monte Carlo cross-check of kappa3/kappa4");
  count->add_option("--seed", count_flags.seed, "Monte Carlo seed");

  auto* diag = app.add_subcommand("diag", "Validity diagnostics for an instance");
  add_instance_flags(diag, diag_flags);
  add_solver_flags(diag, diag_flags);

  auto* orc = app.add_subcommand("oracle", "Exact count (arbitrary precision)");
  add_instance_flags(orc, oracle_flags);

  int table = 0;
  bool repro_json = false;
  auto* rep = app.add_subcommand("repro", "Recompute a published comparison table");
  rep->add_option("table", table, "Table number")->required()->check(CLI::IsMember({1, 2, 3}));
  rep->add_flag("--json", repro_json, "Single-line JSON output");

  std::vector<std::string> storage{"latcount"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count) return cmd_count(count_flags, out);
    if (*diag) return cmd_diag(diag_flags, out);
    if (*orc) return cmd_oracle(oracle_flags, out);
    if (*rep) return cmd_repro(table, repro_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  }
  return kUsage;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace latcount::cli
