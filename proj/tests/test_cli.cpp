#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace switchcap::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("parse_index_list") {
    CHECK(parse_index_list("2,3,6") == std::vector<std::size_t>{2, 3, 6});
    CHECK(parse_index_list("2..5") == std::vector<std::size_t>{2, 3, 4, 5});
    CHECK(parse_index_list("1..3, 8") == std::vector<std::size_t>{1, 2, 3, 8});
    CHECK_THROWS_AS(parse_index_list(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_list("2,,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_list("-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_list("5..2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_index_list("x"), std::invalid_argument);
  }

  TEST_CASE("parse_order_list") {
    const auto o = parse_order_list("0,1,2;1,0,2");
    REQUIRE(o.size() == 2);
    CHECK(o[1] == std::vector<std::size_t>{1, 0, 2});
    CHECK_THROWS_AS(parse_order_list("0,1;"), std::invalid_argument);
  }

  TEST_CASE("log_spaced") {
    const auto v = log_spaced(2, 10000, 12);
    CHECK(v.front() == 2);
    CHECK(v.back() == 10000);
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(log_spaced(2, 4, 50).size() == 3);
    CHECK(log_spaced(7, 7, 5) == std::vector<std::size_t>{7});
    CHECK_THROWS_AS(log_spaced(0, 5, 3), std::invalid_argument);
  }

  TEST_CASE("table prints the default grid") {
    const auto r = invoke({"table"});
    REQUIRE(r.code == kOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 11);
    CHECK(l[1].find("0.0488") != std::string::npos);
    CHECK(l[10].find("0.0619") != std::string::npos);
  }

  TEST_CASE("sweep csv header and ordering") {
    const auto r = invoke({"sweep", "--dims", "3,2", "--orders", "6,2..3"});
    REQUIRE(r.code == kOk);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 7);
    CHECK(l[0] == "m_orders,dim,chi_bits,s_min_bits,s_control_bits");
    CHECK(l[1].rfind("2,2,", 0) == 0);
    CHECK(l[3].rfind("6,2,", 0) == 0);
    CHECK(l[4].rfind("2,3,", 0) == 0);
    CHECK(l[1] == "2,2,0.0487949406954,1.90563906223,0.954434002925");
  }

  TEST_CASE("sweep output is byte-stable across jobs") {
    const auto a = invoke({"sweep", "--dims", "2..5", "--orders", "1..40", "--jobs", "1"});
    const auto b = invoke({"sweep", "--dims", "2..5", "--orders", "1..40", "--jobs", "7"});
    REQUIRE(a.code == kOk);
    CHECK(a.out == b.out);
  }

  TEST_CASE("sweep json and file output") {
    const auto r = invoke({"sweep", "--dims", "2", "--orders", "2", "--format", "json", "--seed", "9"});
    REQUIRE(r.code == kOk);
    const auto doc = json::parse(r.out);
    CHECK(doc["meta"]["seed"] == 9);
    CHECK(doc["meta"]["version"] == "0.1.0");
    CHECK(std::abs(doc["rows"][0]["chi_bits"].get<double>() - 0.0487949406954) < 1e-12);

    const auto path = std::filesystem::temp_directory_path() / "switchcap_cli_test.csv";
    REQUIRE(invoke({"sweep", "--dims", "2", "--orders", "2", "--out", path.string()}).code == kOk);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == "m_orders,dim,chi_bits,s_min_bits,s_control_bits");
    std::filesystem::remove(path);
  }

  TEST_CASE("sweep log points") {
    const auto r = invoke({"sweep", "--dims", "2", "--orders", "2..10000", "--log-points", "5"});
    REQUIRE(r.code == kOk);
    const auto l = lines(r.out);
    CHECK(l.size() == 6);
    CHECK(l.back().rfind("10000,2,", 0) == 0);
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({}).code == kBadArguments);
    CHECK(invoke({"bogus"}).code == kBadArguments);
    CHECK(invoke({"--help"}).code == kOk);
    CHECK(invoke({"sweep", "--dims", "1", "--orders", "2"}).code == kBadArguments);
    CHECK(invoke({"sweep", "--dims", "65", "--orders", "2"}).code == kBadArguments);
    CHECK(invoke({"sweep", "--dims", "2", "--orders", "0"}).code == kBadArguments);
    CHECK(invoke({"sweep", "--dims", "2", "--orders", "1000001"}).code == kBadArguments);
    CHECK(invoke({"sweep", "--dims", "2"}).code == kBadArguments);
    CHECK(invoke({"sweep", "--dims", "2", "--orders", "2", "--out", "/nonexistent_dir/x.csv"}).code ==
          kIoError);
    CHECK(invoke({"verify", "--n-channels", "8", "--dim", "4"}).code == kSizeGuard);
    CHECK(invoke({"verify", "--order-mode", "explicit"}).code == kBadArguments);
    CHECK(invoke({"verify", "--n-channels", "3", "--order-mode", "explicit", "--explicit", "0,1,2;0,1,2"})
              .code == kBadArguments);
    CHECK(invoke({"limit", "--dim", "1"}).code == kBadArguments);
  }

  TEST_CASE("verify cyclic cases pass") {
    const auto r = invoke({"verify", "--n-channels", "2,3", "--dim", "2"});
    REQUIRE(r.code == kOk);
    for (const auto& l : lines(r.out)) {
      const auto doc = json::parse(l);
      CHECK(doc["status"] == "pass");
      CHECK(doc["passed"] == true);
      CHECK(doc["max_block_residual"].get<double>() < 1e-12);
      CHECK(std::abs(doc["chi_analytic"].get<double>() - doc["chi_oracle"].get<double>()) < 1e-6);
    }
  }

  TEST_CASE("verify reports non-cyclic blocks without failing") {
    const auto r = invoke(
        {"verify", "--n-channels", "3", "--dim", "2", "--order-mode", "explicit", "--explicit", "0,1,2;1,0,2"});
    REQUIRE(r.code == kOk);
    const auto doc = json::parse(lines(r.out).at(0));
    CHECK(doc["status"] == "divergent-block");
    CHECK(doc["passed"].is_null());
    CHECK(doc["max_block_residual"].get<double>() < 1e-12);
    const auto& block = doc["non_cyclic_blocks"].at(0)["cross_term"];
    // I/d^3 for d = 2.
    CHECK(std::abs(block[0][0][0].get<double>() - 0.125) < 1e-12);
    CHECK(std::abs(block[1][1][0].get<double>() - 0.125) < 1e-12);
    CHECK(std::abs(block[0][1][0].get<double>()) < 1e-12);
  }

  TEST_CASE("verify fails on an impossible tolerance") {
    CHECK(invoke({"verify", "--n-channels", "2", "--dim", "3", "--chi-tol", "0"}).code == kVerificationFailed);
  }

  TEST_CASE("limit") {
    const auto r = invoke({"limit", "--dim", "2", "--format", "json"});
    REQUIRE(r.code == kOk);
    const auto doc = json::parse(r.out);
    CHECK(std::abs(doc["limit_bits"].get<double>() - 0.311278124459132864) < 1e-14);
    CHECK(doc["convergence"].size() == 3);
    CHECK(doc["convergence"][2]["gap_bits"].get<double>() < 1e-4);
    CHECK(invoke({"limit"}).out.find("limit_bits 0.311278124459") != std::string::npos);
  }
}
