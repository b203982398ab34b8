#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adjfilter/cli.hpp"
#include "adjfilter/error.hpp"
#include "adjfilter/report.hpp"
#include "adjfilter/verify.hpp"
#include "json.hpp"

using namespace adjfilter;

namespace {

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "adjfilter");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char c) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string f; std::getline(is, f, c);) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("rank ranges") {
  CHECK(parse_rank_range("5") == std::pair<int, int>{5, 5});
  CHECK(parse_rank_range("2..8") == std::pair<int, int>{2, 8});
  CHECK_THROWS_AS(parse_rank_range("8..2"), Error);
  CHECK_THROWS_AS(parse_rank_range("x"), Error);
  CHECK_THROWS_AS(parse_rank_range("3..4x"), Error);
}

TEST_CASE("compute json") {
  const auto r = run({"compute", "--family", "A", "--rank", "5", "--prime", "5", "--format", "json"});
  REQUIRE(r.rc == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["family"] == "A");
  CHECK(j["rank"] == 5);
  int total = 0;
  for (int x : j["factor_log_orders"]) {
    CHECK((x == 1 || x == 2));
    total += x;
  }
  CHECK(total == 15);
  CHECK(j["alpha_length"] == j["factor_log_orders"].size());
  CHECK(j["terms"].back()["log_order"] == 0);
}

TEST_CASE("compute G2") {
  const auto r = run({"compute", "--family", "G2", "--rank", "2", "--prime", "5"});
  REQUIRE(r.rc == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["alpha_length"] == j["lcs_length"]);
  CHECK(j["iterations"] == 0);
}

TEST_CASE("bad input exits with 2") {
  auto r = run({"compute", "--family", "A", "--rank", "5", "--prime", "2"});
  CHECK(r.rc == 2);
  CHECK(r.err.find("BadPrime") != std::string::npos);
  CHECK(run({"compute", "--family", "D", "--rank", "2"}).rc == 2);
  CHECK(run({"compute", "--family", "G2", "--prime", "3"}).rc == 2);
  CHECK(run({"compute", "--family", "E", "--rank", "6"}).rc == 2);
  CHECK(run({"compute", "--family", "A", "--rank", "3", "--format", "xml"}).rc == 2);
  CHECK(run({"frobnicate"}).rc == 2);
}

TEST_CASE("compare table") {
  const auto r = run({"compare", "--family", "A", "--ranks", "2..8", "--prime", "3"});
  REQUIRE(r.rc == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 8);
  CHECK(ls[0] == "family,rank,prime,lcs_length,alpha_length,grading_dim,histogram");
  int prev = 0;
  for (int d = 2; d <= 8; ++d) {
    const auto f = split(ls[d - 1], ',');
    REQUIRE(f.size() == 7);
    CHECK(std::stoi(f[1]) == d);
    CHECK(std::stoi(f[3]) == d);
    const int alpha = std::stoi(f[4]);
    CHECK(alpha >= std::stoi(f[3]));
    CHECK(alpha >= prev);
    prev = alpha;
    int sum = 0;
    for (const auto& bucket : split(f[6], ';')) sum += std::stoi(split(bucket, ':')[1]);
    CHECK(sum == alpha);
  }
  CHECK(ls[1].rfind("A,2,3,2,2,", 0) == 0);

  const auto dr = run({"compare", "--family", "D", "--rank", "4", "--prime", "3"});
  REQUIRE(dr.rc == 0);
  CHECK(split(lines(dr.out)[1], ',')[5] == "2");
}

TEST_CASE("output is deterministic across thread counts") {
  const std::vector<std::string> args{"compute", "--family", "A,B,C", "--ranks", "3..6", "--format", "csv"};
  setenv("ADJFILTER_THREADS", "1", 1);
  CHECK(job_threads() == 1);
  const auto one = run(args);
  setenv("ADJFILTER_THREADS", "4", 1);
  const auto four = run(args);
  unsetenv("ADJFILTER_THREADS");
  REQUIRE(one.rc == 0);
  CHECK(one.out == four.out);
  CHECK(one.out == run(args).out);
  CHECK(lines(one.out)[0] == "family,rank,prime,term,index,log_order,factor_log_order,roots");
}

TEST_CASE("text output and --out") {
  const auto path = std::filesystem::temp_directory_path() / "adjfilter_cli_test.txt";
  const auto r = run({"compute", "--family", "B", "--rank", "3", "--format", "text", "--out", path.string()});
  REQUIRE(r.rc == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().rfind("B3 over Z/3Z", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("compute with oracle checks") {
  const auto r = run({"compute", "--family", "A", "--rank", "3", "--oracle"});
  REQUIRE(r.rc == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["oracle"]["passed"] == true);
}

TEST_CASE("verify") {
  const auto r = run({"verify"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  const auto small = run({"verify", "--cap", "100"});
  CHECK(small.rc == 0);
  CHECK(small.out.find("SKIP  B3 p=3  commutators") != std::string::npos);
  CHECK(small.out.find("PASS  A2 p=3  commutators") != std::string::npos);
}

TEST_CASE("verify reports a corrupted table") {
  RootSystem a3(Family::A, 3);
  const int p2 = a3.simple_root(1), p3 = a3.simple_root(2);
  const RootSystem bad = a3.with_structure_constant(p2, p3, 2);
  const auto rep = verify_system(bad, 3, GroupOracle::kDefaultCap);
  CHECK(rep.failed());
  std::ostringstream os;
  CHECK(print_reports({rep}, os) == 1);
  CHECK(os.str().find("FAIL  A3 p=3  structure constants: root pair (0,1,0), (0,0,1)") != std::string::npos);
}

TEST_CASE("comparison rows") {
  AlphaSeries a;
  a.family = Family::B;
  a.rank = 4;
  a.prime = 3;
  a.lcs_length = 7;
  a.grading_dim = 2;
  a.factor_log_orders = {1, 2, 2, 3, 1};
  const auto row = ComparisonRow::from_series(a);
  CHECK(row.csv() == "B,4,3,7,5,2,1:2;2:2;3:1");
}
