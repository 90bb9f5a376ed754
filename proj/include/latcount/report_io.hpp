#pragma once

// Text and JSON rendering of estimates and exact counts. Log quantities are
// rounded to 6 significant figures in both forms; exact counts are decimal
// strings of arbitrary length.

#include <optional>
#include <string>

#include <json.hpp>

#include "latcount/estimator.hpp"
#include "latcount/oracle.hpp"

namespace latcount::io {

/// %.6g, with "-inf"/"inf"/"nan" spelled out.
std::string sig6(double x);

/// x rounded to 6 significant figures (non-finite values pass through).
double round6(double x);

/// "X.XXeNN" from a natural log, computed without exponentiating; "0" for -inf.
std::string count_display(double ln_value);

/// Optional extras attached to a count report.
struct Extras {
  std::optional<oracle::ExactCount> exact;
  std::optional<oracle::MCEstimate> mc;
};

nlohmann::json to_json(const CountReport& r, const Extras& extras = {});
nlohmann::json to_json(const oracle::ExactCount& c);
nlohmann::json to_json(const std::vector<Diagnostic>& diagnostics);

std::string to_text(const CountReport& r, const Extras& extras = {});
std::string to_text(const oracle::ExactCount& c);

/// Single-line form; parse(dump(j)).dump() == dump(j).
inline std::string dump(const nlohmann::json& j) { return j.dump(); }

}  // namespace latcount::io
