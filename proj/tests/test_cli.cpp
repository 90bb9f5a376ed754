#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latcount/cli.hpp"
#include "latcount/report_io.hpp"

using namespace latcount;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(P_tmpdir) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("count: exit codes") {
  CHECK(run({"count", "--rows", "2,2", "--cols", "2,2"}).code == cli::kOk);
  CHECK(run({"count", "--degrees", "1,1,1"}).code == cli::kOk);
  CHECK(run({"count", "--rows", "1,2", "--cols", "2,2"}).code == cli::kInfeasible);
  CHECK(run({"count", "--rows", "0,4", "--cols", "2,2"}).code == cli::kInfeasible);
  CHECK(run({"count", "--rows", "2,x", "--cols", "2,2"}).code == cli::kUsage);
  CHECK(run({"count", "--rows", "2,2"}).code == cli::kUsage);
  CHECK(run({"count", "--rows", "2,2", "--cols", "2,2", "--degrees", "1,1"}).code == cli::kUsage);
  CHECK(run({"count", "--bogus"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"count", "--degrees", "4,4,4,4,3,3,3,3", "--max-iter", "0"}).code == cli::kUsage);
  CHECK(run({"count", "--rows", "1,1,98", "--cols", "50,25,25", "--max-iter", "1"}).code == cli::kSolverFailure);
  CHECK(run({"count", "--degrees", "0.5,0.5"}).code == cli::kSolverFailure);
  CHECK(run({"count", "--degrees", "2,2"}).code == cli::kInfeasible);
  CHECK(run({"count", "--degrees", "4,4,4,0,0,0"}).code == cli::kInfeasible);
  CHECK(run({"count", "--degrees", "3,3,3,3,0,0"}).code == cli::kOk);
}

TEST_CASE("count: text report") {
  const auto r = run({"count", "--degrees", "3,3,3,3,3,3,3,3", "--exact"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("exact            19355") != std::string::npos);
  CHECK(r.out.find("edgeworth error  0.049742") != std::string::npos);

  const auto z = run({"count", "--degrees", "1,1,1"});
  CHECK(z.out.find("count            0") != std::string::npos);
}

TEST_CASE("count: json output round-trips byte for byte") {
  for (const auto& args : {std::vector<std::string>{"count", "--rows", "100,100,100", "--cols", "100,100,100",
                                                    "--exact", "--json"},
                           {"count", "--degrees", "4,4,4,4,3,3,3,3", "--json", "--mc-samples", "2000", "--seed", "9"},
                           {"count", "--degrees", "1,1,1", "--json"},
                           {"diag", "--rows", "1,10", "--cols", "5,6", "--json"},
                           {"oracle", "--degrees", "3,3,3,3,3,3,3,3,3,3", "--json"},
                           {"repro", "3", "--json"}}) {
    const auto r = run(args);
    REQUIRE(!r.out.empty());
    const std::string line = r.out.substr(0, r.out.size() - 1);
    CHECK(r.out.back() == '\n');
    CHECK(line.find('\n') == std::string::npos);
    CHECK(nlohmann::json::parse(line).dump() == line);
  }
  const auto j = nlohmann::json::parse(run({"count", "--degrees", "1,1,1", "--json"}).out);
  CHECK(j["ln_edgeworth"].is_null());
  CHECK(j["zero_count"] == true);
  CHECK(j["count_edgeworth"] == "0");

  const auto e = nlohmann::json::parse(
      run({"count", "--rows", "100,100,100", "--cols", "100,100,100", "--exact", "--json"}).out);
  CHECK(e["exact"]["value"] == "13268976");
  CHECK(e["count_edgeworth"] == "1.27e7");
  CHECK(e["ln_edgeworth"].get<double>() == 16.3588);
}

TEST_CASE("count: input file and flag overrides") {
  const auto path = temp_file("latcount_instance.json",
                              R"({"degrees": [4,4,4,4,3,3,3,3], "options": {"oracle": true, "tol": 1e-11}})");
  const auto r = run({"count", "--input", path, "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["exact"]["value"] == "14634");
  CHECK(j["model"] == "graph");

  const auto table = temp_file("latcount_table.json", R"({"rows": [2,2], "cols": [2,2]})");
  CHECK(nlohmann::json::parse(run({"count", "--input", table, "--json"}).out)["model"] == "table");

  CHECK(run({"count", "--input", temp_file("latcount_both.json", R"({"rows":[1],"cols":[1],"degrees":[1,1]})")}).code ==
        cli::kUsage);
  CHECK(run({"count", "--input", temp_file("latcount_bad.json", "{not json")}).code == cli::kUsage);
  CHECK(run({"count", "--input", "/nonexistent/latcount.json"}).code == cli::kUsage);
}

TEST_CASE("oracle command") {
  auto r = run({"oracle", "--rows", "2,2", "--cols", "2,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("exact     3\n") != std::string::npos);
  CHECK(run({"oracle", "--degrees", "2,2,2"}).out.find("exact     1\n") != std::string::npos);
  CHECK(run({"oracle", "--degrees", "1,1,1,1"}).out.find("exact     3\n") != std::string::npos);
  CHECK(run({"oracle", "--degrees", "1.5,1.5"}).code == cli::kUsage);

  ::setenv("ENTROPY_COUNT_BUDGET", "2", 1);
  CHECK(run({"oracle", "--rows", "100,100,100", "--cols", "100,100,100"}).code == cli::kBudgetExceeded);
  ::unsetenv("ENTROPY_COUNT_BUDGET");
}

TEST_CASE("diag command") {
  const auto r = run({"diag", "--rows", "2,2", "--cols", "2,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("no warnings") != std::string::npos);
  const auto w = run({"diag", "--rows", "1,10", "--cols", "5,6"});
  CHECK(w.out.find("[margin_ratio]") != std::string::npos);
}

TEST_CASE("repro command") {
  CHECK(run({"repro", "7"}).code == cli::kUsage);
  const auto r = run({"repro", "3"});
  CHECK((r.code == cli::kOk || r.code == cli::kReproMismatch));
  CHECK(r.out.find("44443333") != std::string::npos);
}

TEST_CASE("count display") {
  CHECK(io::count_display(std::log(1.116e59)) == "1.12e59");
  CHECK(io::count_display(std::log(9.996e6)) == "1.00e7");
  CHECK(io::count_display(std::log(19355.0)) == "1.94e4");
  CHECK(io::count_display(0.0) == "1.00e0");
  CHECK(io::count_display(-std::numeric_limits<double>::infinity()) == "0");
  CHECK(io::sig6(9.870706) == "9.87071");
  CHECK(io::round6(16.358812) == 16.3588);
}
