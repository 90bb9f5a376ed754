#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "latcount/error.hpp"
#include "latcount/oracle.hpp"

namespace latcount::oracle {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<long long>& v) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ULL;
    for (long long x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// State: residual degrees, zeros dropped, sorted descending. The vertex with
// the largest residual picks its neighbours; vertices with equal residuals
// are interchangeable, so a choice is a count per residual value.
class GraphCounter {
 public:
  explicit GraphCounter(std::size_t budget) : budget_(budget) {}

  BigInt count(const std::vector<long long>& state) {
    if (state.empty()) return 1;
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    if (++states_ > budget_)
      throw Error(ErrorKind::BudgetExceeded, "graph oracle exceeded " + std::to_string(budget_) + " memo states");

    BigInt total = 0;
    if (is_graphical(state)) {
      const long long need = state.front();
      // Groups of equal residual among the remaining vertices.
      std::vector<std::pair<long long, long long>> groups;
      for (std::size_t i = 1; i < state.size(); ++i) {
        if (groups.empty() || groups.back().first != state[i]) groups.push_back({state[i], 0});
        ++groups.back().second;
      }
      std::vector<long long> take(groups.size(), 0);
      std::function<void(std::size_t, long long, BigInt)> choose = [&](std::size_t g, long long left, BigInt mult) {
        if (g == groups.size()) {
          if (left != 0) return;
          std::vector<long long> next;
          next.reserve(state.size());
          for (std::size_t i = 0; i < groups.size(); ++i) {
            for (long long c = 0; c < take[i]; ++c)
              if (groups[i].first - 1 > 0) next.push_back(groups[i].first - 1);
            for (long long c = take[i]; c < groups[i].second; ++c) next.push_back(groups[i].first);
          }
          std::sort(next.begin(), next.end(), std::greater<>());
          total += mult * count(next);
          return;
        }
        const long long cap = std::min(groups[g].second, left);
        for (long long k = 0; k <= cap; ++k) {
          take[g] = k;
          choose(g + 1, left - k, mult * binomial(groups[g].second, k));
        }
        take[g] = 0;
      };
      choose(0, need, BigInt(1));
    }
    memo_.emplace(state, total);
    return total;
  }

  std::size_t states() const { return states_; }

 private:
  std::size_t budget_;
  std::size_t states_ = 0;
  std::unordered_map<std::vector<long long>, BigInt, VecHash> memo_;
};

}  // namespace

bool is_graphical(std::vector<long long> d) {
  if (std::any_of(d.begin(), d.end(), [](long long x) { return x < 0; })) return false;
  const long long sum = std::accumulate(d.begin(), d.end(), 0LL);
  if (sum % 2 != 0) return false;
  std::sort(d.begin(), d.end(), std::greater<>());
  const auto n = static_cast<long long>(d.size());
  long long lhs = 0;
  for (long long k = 1; k <= n; ++k) {
    lhs += d[k - 1];
    long long rhs = k * (k - 1);
    for (long long i = k; i < n; ++i) rhs += std::min(d[i], k);
    if (lhs > rhs) return false;
  }
  return true;
}

ExactCount exact_count_graphs(const std::vector<long long>& degrees, std::size_t budget) {
  ExactCount out;
  {
    std::ostringstream os;
    os << "graph [";
    for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
    os << "]";
    out.description = os.str();
  }
  const auto n = static_cast<long long>(degrees.size());
  if (std::any_of(degrees.begin(), degrees.end(), [n](long long x) { return x < 0 || x > n - 1; })) {
    out.value = 0;
    out.ln_value = ln(out.value);
    return out;
  }
  std::vector<long long> state;
  for (long long x : degrees)
    if (x > 0) state.push_back(x);
  std::sort(state.begin(), state.end(), std::greater<>());

  // Labelled count: the memoised recursion already counts labelled
  // neighbourhoods (binomial multiplicities), so no symmetry factor is needed.
  GraphCounter counter(budget);
  out.value = counter.count(state);
  out.ln_value = ln(out.value);
  out.states = counter.states();
  return out;
}

}  // namespace latcount::oracle
