#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "latcount/error.hpp"
#include "latcount/oracle.hpp"

namespace latcount::oracle {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<long long>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (long long x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::string describe(const char* kind, const std::vector<long long>& a, const std::vector<long long>& b = {}) {
  std::ostringstream os;
  os << kind << " [";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << "]";
  if (!b.empty()) {
    os << " x [";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << "]";
  }
  return os.str();
}

// Counts tables column by column. Residual row sums are kept sorted in
// descending order: the number of completions depends only on their multiset.
class TableCounter {
 public:
  TableCounter(std::vector<long long> cols, std::size_t budget) : cols_(std::move(cols)), budget_(budget) {
    memo_.resize(cols_.size());
  }

  BigInt count(std::size_t level, const std::vector<long long>& residual) {
    if (level + 1 >= cols_.size()) return 1;  // last column is forced
    auto& table = memo_[level];
    if (auto it = table.find(residual); it != table.end()) return it->second;
    if (++states_ > budget_)
      throw Error(ErrorKind::BudgetExceeded, "table oracle exceeded " + std::to_string(budget_) + " memo states");

    std::vector<long long> suffix(residual.size() + 1, 0);
    for (std::size_t i = residual.size(); i-- > 0;) suffix[i] = suffix[i + 1] + residual[i];

    BigInt total = 0;
    std::vector<long long> next(residual.size());
    std::function<void(std::size_t, long long)> place = [&](std::size_t row, long long left) {
      if (row == residual.size()) {
        std::vector<long long> key = next;
        std::sort(key.begin(), key.end(), std::greater<>());
        total += count(level + 1, key);
        return;
      }
      const long long lo = std::max(0LL, left - suffix[row + 1]);
      const long long hi = std::min(residual[row], left);
      for (long long x = lo; x <= hi; ++x) {
        next[row] = residual[row] - x;
        place(row + 1, left - x);
      }
    };
    place(0, cols_[level]);
    table.emplace(residual, total);
    return total;
  }

  std::size_t states() const { return states_; }

 private:
  std::vector<long long> cols_;
  std::size_t budget_;
  std::size_t states_ = 0;
  std::vector<std::unordered_map<std::vector<long long>, BigInt, VecHash>> memo_;
};

}  // namespace

double ln(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  const std::size_t shift = bits > 62 ? bits - 62 : 0;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

std::size_t default_budget() {
  if (const char* env = std::getenv("ENTROPY_COUNT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

ExactCount exact_count_tables(const std::vector<long long>& rows, const std::vector<long long>& cols,
                              std::size_t budget) {
  if (rows.empty() || cols.empty()) throw Error(ErrorKind::InvalidArgument, "table oracle needs rows and columns");
  auto negative = [](long long x) { return x < 0; };
  if (std::any_of(rows.begin(), rows.end(), negative) || std::any_of(cols.begin(), cols.end(), negative))
    throw Error(ErrorKind::InfeasibleMargins, "table oracle needs nonnegative margins");

  ExactCount out;
  out.description = describe("table", rows, cols);
  const long long rs = std::accumulate(rows.begin(), rows.end(), 0LL);
  const long long cs = std::accumulate(cols.begin(), cols.end(), 0LL);
  if (rs != cs) {
    out.value = 0;
    out.ln_value = ln(out.value);
    return out;
  }

  // Enumerating a column costs compositions into (#rows) parts: use the
  // shorter side as rows.
  std::vector<long long> r = rows.size() <= cols.size() ? rows : cols;
  std::vector<long long> c = rows.size() <= cols.size() ? cols : rows;
  std::sort(r.begin(), r.end(), std::greater<>());

  TableCounter counter(c, budget);
  out.value = counter.count(0, r);
  out.ln_value = ln(out.value);
  out.states = counter.states();
  return out;
}

}  // namespace latcount::oracle
