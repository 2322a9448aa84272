#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "numrad/commands.hpp"
#include "numrad/inequalities.hpp"
#include "numrad/io.hpp"

namespace numrad {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("numrad_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    write_text_file(p, text);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ListMatchesCatalog) {
  const CliRun r = run({"list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("I-MAIN "), std::string::npos);
  const CliRun j = run({"list", "--json"});
  const json doc = json::parse(j.out);
  EXPECT_EQ(doc["inequalities"].size(), catalog_list().size());
  bool found = false;
  for (const auto& e : doc["inequalities"])
    if (e["id"] == "I-HD-BLOCK") found = e["arity"] == 4;
  EXPECT_TRUE(found);
  // Header + one row per entry + one per implication.
  const auto lines = std::count(r.out.begin(), r.out.end(), '\n');
  EXPECT_EQ(static_cast<std::size_t>(lines), 1 + catalog_list().size() + implication_list().size());
}

TEST_F(CliTest, ReproPassesAndFaultInjectionFails) {
  const CliRun ok = run({"repro"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("repro: PASS"), std::string::npos);
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);

  const CliRun bad = run({"repro", "--inject-fault", "example2x2:r_abs_product"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("FAIL example2x2 r_abs_product"), std::string::npos);
}

TEST_F(CliTest, ReproJsonReportsFollowSchema) {
  const CliRun r = run({"repro", "--json"});
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_TRUE(doc["pass"].get<bool>());
  ASSERT_FALSE(doc["reports"].empty());
  for (const auto& rep : doc["reports"]) {
    for (const char* key :
         {"id", "sign", "lhs", "rhs", "slack", "holds", "applicable", "details", "inputs_digest"})
      EXPECT_TRUE(rep.contains(key)) << key;
    EXPECT_TRUE(rep["id"].is_string());
    EXPECT_TRUE(rep["sign"] == "n/a" || rep["sign"] == "+" || rep["sign"] == "-");
    EXPECT_TRUE(rep["holds"].is_boolean());
    EXPECT_TRUE(rep["details"].is_object());
    EXPECT_EQ(rep["inputs_digest"].get<std::string>().size(), 16U);
  }
}

TEST_F(CliTest, CheckWorkedMatrix) {
  const std::string f = write("r22.json", R"({"n": 2, "re": [[1, 4], [1, 1]]})");
  const CliRun r = run({"check", f, "--inequality", "I-MAIN", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc.size(), 1U);
  EXPECT_TRUE(doc[0]["holds"].get<bool>());
  EXPECT_NEAR(doc[0]["slack"].get<double>(), 0.5 * (0.5 * (5.0 + std::sqrt(13.0)) + 3.0) - 3.5,
              1e-9);
}

TEST_F(CliTest, CheckIdentityAllUnary) {
  const std::string f =
      write("id.json", R"({"n": 3, "re": [[1,0,0],[0,1,0],[0,0,1]], "im": [[0,0,0],[0,0,0],[0,0,0]]})");
  const CliRun r = run({"check", f, "--json"});
  EXPECT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  std::size_t unary = 0;
  for (const CatalogEntry& e : catalog_list()) unary += e.arity == 1 ? 1 : 0;
  EXPECT_EQ(doc.size(), unary);
  for (const auto& rep : doc) EXPECT_TRUE(rep["holds"].get<bool>()) << rep["id"];
}

TEST_F(CliTest, CheckPreconditionFailureIsReported) {
  const std::string a = write("a.json", R"({"n": 2, "re": [[1, 2], [3, 4]]})");
  const std::string b = write("b.json", R"({"n": 2, "re": [[0, 1], [0, 0]], "im": [[1, 0], [0, 0]]})");
  const CliRun r = run({"check", a, b, "--inequality", "I-GEN-FG"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("not-applicable"), std::string::npos);
  EXPECT_NE(r.out.find("intertwining_residual"), std::string::npos);
}

TEST_F(CliTest, CheckSignedEntryAndImplication) {
  const std::string a = write("a.json", R"({"n": 2, "re": [[0, 1], [0, 0]]})");
  const std::string b = write("b.json", R"({"n": 2, "re": [[0, 0], [1, 0]]})");
  const CliRun r = run({"check", a, b, "-i", "I-COMM-MU", "--sign", "-", "--json"});
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc.size(), 1U);
  EXPECT_EQ(doc[0]["sign"], "-");
  EXPECT_NEAR(doc[0]["lhs"].get<double>(), 1.0, 1e-12);

  const std::string ex =
      write("ex.json", R"({"n": 3, "re": [[0,3,0],[0,0,0],[0,0,1]]})");
  const CliRun imp = run({"check", ex, "-i", "IMP-ZERO-PRODUCT", "--json"});
  EXPECT_EQ(imp.code, 0);
  const json ij = json::parse(imp.out);
  EXPECT_FALSE(ij[0]["hypothesis_holds"].get<bool>());
  EXPECT_TRUE(ij[0]["conclusion_holds"].get<bool>());
}

TEST_F(CliTest, CheckErrorsExitTwo) {
  const std::string bad = write("bad.json", "{\"n\": 2, \"re\": [[1, 2], [3, 4]");
  const CliRun syntax = run({"check", bad});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("byte"), std::string::npos);

  const std::string shape = write("shape.json", R"({"n": 2, "re": [[1, 2], [3]]})");
  const CliRun s = run({"check", shape});
  EXPECT_EQ(s.code, 2);
  EXPECT_NE(s.err.find("/re/1"), std::string::npos);

  const std::string ok = write("ok.json", R"({"n": 2, "re": [[1, 2], [3, 4]]})");
  EXPECT_EQ(run({"check", ok, "-i", "I-MU"}).code, 2);
  EXPECT_EQ(run({"check", ok, "-i", "I-NOPE"}).code, 2);
  EXPECT_EQ(run({"check", ok, "-i", ","}).code, 2);
  const CliRun pair = run({"check", ok, "-i", "I-MAIN,I-KIT03"});
  EXPECT_EQ(pair.code, 0);
  EXPECT_NE(pair.out.find("I-KIT03 "), std::string::npos);
  EXPECT_EQ(run({"check", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"check", ok, ok, ok}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, SweepGinibreOrdering) {
  const std::string out = path("s.json");
  const CliRun r = run({"sweep", "--family", "ginibre", "--n", "4", "--trials", "200", "--seed",
                     "42", "--entries", "I-MAIN,I-KIT03", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(read_text_file(out));
  for (const auto& s : doc["summaries"]) {
    EXPECT_EQ(s["violations"], 0);
    if (s["id"] == "I-MAIN") {
      EXPECT_EQ(s["tighter_than"]["I-KIT03"].get<double>(), 1.0);
    }
  }
  EXPECT_EQ(doc["spec"]["family"], "ginibre");
  EXPECT_EQ(doc["reports"].size(), 400U);
}

TEST_F(CliTest, SweepEqualityFamilies) {
  const std::string nil = path("nil.json");
  ASSERT_EQ(run({"sweep", "--family", "nilpotent_rank1", "--n", "5", "--trials", "200",
                 "--entries", "I-MAIN", "--out", nil})
                .code,
            0);
  for (const auto& rep : json::parse(read_text_file(nil))["reports"])
    EXPECT_LE(rep["slack"].get<double>(), 1e-6);

  const std::string herm = path("herm.json");
  ASSERT_EQ(run({"sweep", "--family", "hermitian_gauss", "--n", "3", "--trials", "500",
                 "--entries", "I-EQV", "--out", herm})
                .code,
            0);
  for (const auto& rep : json::parse(read_text_file(herm))["reports"]) {
    const auto& upper = rep["links"][1];
    EXPECT_LE(std::abs(upper["rhs"].get<double>() - upper["lhs"].get<double>()), 1e-6);
  }
}

TEST_F(CliTest, SweepCsvMatchesJson) {
  const std::vector<std::string> base{"sweep", "--family", "ginibre", "--n", "3", "--trials", "20",
                                      "--entries", "I-FH,I-MU"};
  auto with_out = [&](const std::string& p) {
    auto a = base;
    a.push_back("--out");
    a.push_back(p);
    return a;
  };
  ASSERT_EQ(run(with_out(path("r.csv"))).code, 0);
  ASSERT_EQ(run(with_out(path("r.json"))).code, 0);
  const json doc = json::parse(read_text_file(path("r.json")));
  std::istringstream csv(read_text_file(path("r.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "id,sign,trial,lhs,rhs,slack,holds,applicable");
  std::size_t k = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    ASSERT_EQ(cells.size(), 8U);
    const auto& rep = doc["reports"][k++];
    EXPECT_EQ(cells[0], rep["id"]);
    EXPECT_EQ(cells[1], rep["sign"]);
    EXPECT_EQ(std::stod(cells[3]), rep["lhs"].get<double>());
    EXPECT_EQ(std::stod(cells[4]), rep["rhs"].get<double>());
    EXPECT_EQ(std::stod(cells[5]), rep["slack"].get<double>());
  }
  EXPECT_EQ(k, doc["reports"].size());
}

TEST_F(CliTest, SweepThreadCountDoesNotChangeOutput) {
  for (const char* ext : {".json", ".csv"}) {
    const std::string p1 = path(std::string("t1") + ext);
    const std::string p8 = path(std::string("t8") + ext);
    const std::vector<std::string> base{"sweep", "--family", "intertwined_pair", "--n", "3",
                                        "--trials", "40", "--seed", "7"};
    auto a1 = base, a8 = base;
    a1.insert(a1.end(), {"--threads", "1", "--out", p1});
    a8.insert(a8.end(), {"--threads", "8", "--out", p8});
    ASSERT_EQ(run(a1).code, 0);
    ASSERT_EQ(run(a8).code, 0);
    EXPECT_EQ(read_text_file(p1), read_text_file(p8)) << ext;
  }
}

TEST_F(CliTest, SweepUsageErrors) {
  EXPECT_EQ(run({"sweep", "--family", "cauchy"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "ginibre", "--out", path("x.txt"), "--trials", "1"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "intertwined_pair", "--entries", "I-MAIN"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "ginibre", "--param", "oops"}).code, 2);
  EXPECT_EQ(run({"sweep", "--family", "ginibre", "--trials", "1", "--out",
                 (dir_ / "no" / "such" / "dir.json").string()})
                .code,
            2);
}

TEST_F(CliTest, GlobalOverrides) {
  const std::string f = write("r22.json", R"({"n": 2, "re": [[1, 4], [1, 1]]})");
  EXPECT_EQ(run({"--grid", "64", "--refine-tol", "1e-10", "--tol-cmp", "1e-6", "--kernel",
                 "scalar", "check", f, "-i", "I-EQV"})
                .code,
            0);
  EXPECT_EQ(run({"--kernel", "auto", "list"}).code, 0);
  EXPECT_EQ(run({"--grid", "2", "list"}).code, 2);
}

}  // namespace
}  // namespace numrad
