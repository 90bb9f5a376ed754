#pragma once

// Recomputation of the published comparison tables: constant-margin
// contingency tables (1), regular graphs (2) and two-class degree
// sequences (3).

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace latcount::repro {

/// Pass/fail tolerances, in one place. The published figures carry three
/// significant digits (tables) or two decimals (logs).
struct Tolerances {
  double log_nats = 0.02;     // Gauss / Edgeworth logs and Edgeworth errors
  double exact_log = 0.01;    // exact logs from the oracle
  double count_ratio = 0.02;  // |estimate / published - 1| for table counts
};
inline constexpr Tolerances kTolerances{};

/// Largest regular-graph order sent to the exact oracle (every published
/// row); rows above it, or over budget, fall back to the published exact logs.
inline constexpr std::size_t kGraphOracleMaxVertices = 18;

enum class Status { Pass, Fail, Excluded, ReferenceOnly };
const char* to_string(Status s) noexcept;

struct Row {
  std::string instance;
  std::string quantity;
  std::string published;   // as printed
  std::string computed;    // same format as `published`
  double delta = 0.0;      // ratio - 1 for counts, difference for logs
  double tolerance = 0.0;  // 0 when not checked
  Status status = Status::ReferenceOnly;
  std::string note;
};

struct Report {
  int table = 0;
  std::string title;
  std::vector<Row> rows;

  bool passed() const;
};

Report table1(std::size_t budget);
Report table2(std::size_t budget);
Report table3(std::size_t budget);

/// Throws latcount::Error{InvalidArgument} for tables other than 1, 2, 3.
Report run(int table, std::size_t budget);

std::string to_text(const Report& r);
nlohmann::json to_json(const Report& r);

}  // namespace latcount::repro
