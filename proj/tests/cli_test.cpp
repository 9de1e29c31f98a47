#include "abelat/cli.hpp"

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include <gtest/gtest.h>

namespace abelat {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, MinvecJson) {
  Outcome r = run({"minvec", "Z3", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["d_squared"], 6);
  EXPECT_EQ(j["count"], 6);
  EXPECT_EQ(j["well_rounded"], true);
}

TEST(Cli, MinvecDump) {
  Outcome r = run({"minvec", "Z4", "--dump", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["vectors"].size(), 4u);
  EXPECT_EQ(j["well_rounded"], false);
  EXPECT_EQ(run({"minvec", "Z4", "--dump"}).code, 0);
}

TEST(Cli, Z4BasisIsADomainError) {
  Outcome r = run({"build-basis", "Z4"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("not well-rounded"), std::string::npos);
  Outcome j = run({"build-basis", "Z4", "--json"});
  EXPECT_EQ(j.code, 1);
  EXPECT_EQ(nlohmann::json::parse(j.out)["error"]["code"], "not_well_rounded");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  Outcome flag = run({"minvec", "Z3", "--bogus"});
  EXPECT_EQ(flag.code, 2);
  EXPECT_NE(flag.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"minvec", "Zx"}).code, 2);
  EXPECT_EQ(run({"verify", "/nonexistent/basis.txt"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  Outcome parse = run({"minvec", "Z1x", "--json"});
  EXPECT_EQ(parse.code, 2);
  EXPECT_EQ(nlohmann::json::parse(parse.out)["error"]["code"], "parse_error");
}

TEST(Cli, CoveringTable) {
  Outcome r = run({"covering-table", "--n", "3,4", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3,1.0000,1.8257,2.4142,1.7701"), std::string::npos);
  EXPECT_NE(r.out.find("4,1.0954,1.9443,2.5097"), std::string::npos);
  Outcome alias = run({"covering", "table", "--n", "3,4", "--format", "csv"});
  EXPECT_EQ(alias.out, r.out);
  Outcome j = run({"covering-table", "--n", "3", "--json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(nlohmann::json::parse(j.out)[0]["recursive_sq"], "47/15");
  Outcome full = run({"covering-table"});
  EXPECT_NE(full.out.find("500.0002"), std::string::npos);
}

TEST(Cli, EstimateIsDeterministic) {
  Outcome a = run({"covering-estimate", "Z4", "--samples", "200", "--seed", "9", "--json"});
  Outcome b = run({"covering", "estimate", "Z4", "--samples", "200", "--seed", "9", "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const double est = nlohmann::json::parse(a.out)["estimate"];
  EXPECT_LE(est, 1.5 + 1e-9);
  EXPECT_GE(est, 1.5 - 1e-2);
}

TEST(Cli, AutVerify) {
  Outcome r = run({"aut-verify", "Z7", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["equal"], true);
  EXPECT_EQ(j["order"], 6);
  EXPECT_EQ(run({"aut", "verify", "Z2xZ2"}).code, 0);
  EXPECT_EQ(run({"aut-verify", "Z13"}).code, 1);
}

TEST(Cli, BuildThenVerify) {
  const auto path = std::filesystem::temp_directory_path() / "abelat_cli_test_basis.txt";
  Outcome b = run({"build-basis", "Z3xZ5", "--seed", "3", "--out", path.string(), "--json"});
  ASSERT_EQ(b.code, 0);
  auto j = nlohmann::json::parse(b.out);
  EXPECT_EQ(j["group"], "Z3xZ5");
  EXPECT_EQ(j["trace"]["fallback_used"], false);
  Outcome v = run({"verify", path.string(), "--json"});
  EXPECT_EQ(v.code, 0);
  Outcome again = run({"build-basis", "Z3xZ5", "--seed", "3", "--json"});
  auto k = nlohmann::json::parse(again.out);
  EXPECT_EQ(k["columns"], j["columns"]);
  EXPECT_EQ(k["trace"], j["trace"]);
  std::filesystem::remove(path);
}

TEST(Cli, BasisAndGroupInfo) {
  Outcome info = run({"group-info", "Z2xZ2", "--json"});
  ASSERT_EQ(info.code, 0);
  EXPECT_EQ(nlohmann::json::parse(info.out)["elements"].size(), 4u);
  Outcome basis = run({"basis", "Z2xZ4", "--json"});
  ASSERT_EQ(basis.code, 0);
  EXPECT_EQ(nlohmann::json::parse(basis.out)["det_gram"], "512");
}

}  // namespace
}  // namespace abelat
