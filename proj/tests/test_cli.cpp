#include <doctest.h>

#include <fstream>
#include <sstream>

#include "exind/cli.hpp"
#include "exind/measure_io.hpp"
#include "fixtures.hpp"

using namespace exind;
using namespace exind::testing;

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

std::string write_measure(const std::string& name, const ExponentMeasure& m) {
  const auto path = temp_dir() / name;
  std::ofstream(path) << to_json(m).dump();
  return path.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  const auto path = temp_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("validate") {
    CHECK(run({"validate", write_measure("ind.json", m_ind())}).code == cli::kOk);
    const auto bad = run({"validate", write_text("zero.json", R"({"d":2,"atoms":[{"omega":[0,0],"mass":1}]})")});
    CHECK(bad.code == cli::kInputError);
    CHECK(bad.out.find("AllZeroDirection(atom 0)") != std::string::npos);
    CHECK(run({"validate", write_text("broken.json", "{not json")}).code == cli::kInputError);
    CHECK(run({"validate", (temp_dir() / "absent.json").string()}).code == cli::kInputError);
  }

  TEST_CASE("check exit codes and report") {
    const auto blk = write_measure("blk.json", m_blk());
    const auto ok = run({"check", blk, "--A", "1,2", "--C", "3"});
    CHECK(ok.code == cli::kOk);
    const auto doc = nlohmann::json::parse(ok.out);
    CHECK(doc["cond_i"] == true);
    CHECK(doc["new_notion"] == true);
    CHECK(doc["agree"] == true);

    CHECK(run({"check", write_measure("dep.json", m_dep()), "--A", "1", "--C", "2"}).code == cli::kDependent);
    CHECK(run({"check", blk, "--A", "1", "--C", "2,3"}).code == cli::kDependent);
    // Blocks that do not partition {1..d} are bad flags.
    CHECK(run({"check", blk, "--A", "1", "--C", "2"}).code == cli::kBadFlags);
    CHECK(run({"check", blk, "--A", "1,2", "--C", "4"}).code == cli::kBadFlags);
    CHECK(run({"check", blk, "--A", "1,2"}).code == cli::kBadFlags);
    const auto invalid = write_text("dead.json", R"({"d":3,"atoms":[{"omega":[1,0,0],"mass":1}]})");
    CHECK(run({"check", invalid, "--A", "1", "--C", "2,3"}).code == cli::kInputError);
  }

  TEST_CASE("flags") {
    CHECK(run({}).code == cli::kBadFlags);
    CHECK(run({"frobnicate"}).code == cli::kBadFlags);
    CHECK(run({"validate", "x.json", "--bogus"}).code == cli::kBadFlags);
    CHECK(run({"--help"}).code == cli::kOk);
  }

  TEST_CASE("graph with DOT and certification") {
    const auto blk = write_measure("blk.json", m_blk());
    const auto dot = (temp_dir() / "blk.dot").string();
    const auto res = run({"graph", blk, "--dot", dot, "--certify"});
    CHECK(res.code == cli::kOk);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["components"] == nlohmann::json::parse("[[1,2],[3]]"));
    CHECK(doc["certified"] == true);
    CHECK(slurp(dot).find("cluster_1") != std::string::npos);
  }

  TEST_CASE("simulate requires a seed and is byte deterministic") {
    const auto blk = write_measure("blk.json", m_blk());
    const auto a = (temp_dir() / "a.csv").string();
    const auto b = (temp_dir() / "b.csv").string();
    CHECK(run({"simulate", blk, "--n", "100", "--out", a}).code == cli::kBadFlags);
    CHECK(run({"simulate", blk, "--n", "2000", "--seed", "7", "--out", a}).code == cli::kOk);
    CHECK(run({"simulate", blk, "--n", "2000", "--seed", "7", "--out", b}).code == cli::kOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a + ".meta.json") == slurp(b + ".meta.json"));
    CHECK(run({"simulate", blk, "--n", "10", "--seed", "7", "--conditional", "4", "--out", a}).code ==
          cli::kBadFlags);
    CHECK(run({"simulate", blk, "--n", "0", "--seed", "7", "--out", a}).code == cli::kBadFlags);
  }

  TEST_CASE("estimate chi and graph from samples") {
    const auto blk = write_measure("blk.json", m_blk());
    const auto csv = (temp_dir() / "blk_samples.csv").string();
    REQUIRE(run({"simulate", blk, "--n", "20000", "--seed", "11", "--out", csv}).code == cli::kOk);
    const auto chi_csv = (temp_dir() / "chi.csv").string();
    const auto res = run({"estimate", "--in", csv, "--graph", "--csv", chi_csv});
    REQUIRE(res.code == cli::kOk);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["graph"]["components"] == nlohmann::json::parse("[[1,2],[3]]"));
    CHECK(slurp(chi_csv).rfind("x1,x2,x3\n", 0) == 0);
    CHECK(run({"estimate", "--in", csv, "--graph"}).out == res.out);
    CHECK(run({"estimate", "--in", (temp_dir() / "none.csv").string()}).code == cli::kInputError);
  }

  TEST_CASE("estimate runs the factorization test on conditional batches") {
    const auto dep = write_measure("dep.json", m_dep());
    const auto csv = (temp_dir() / "dep_cond.csv").string();
    REQUIRE(run({"simulate", dep, "--n", "2000", "--seed", "3", "--conditional", "1", "--out", csv}).code == cli::kOk);
    const auto res = run({"estimate", "--in", csv, "--A", "1", "--C", "2", "--seed", "5"});
    REQUIRE(res.code == cli::kOk);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["reject"] == true);
    CHECK(doc["k"] == 1);
    CHECK(run({"estimate", "--in", csv, "--A", "1", "--C", "2"}).code == cli::kBadFlags);
    CHECK(run({"estimate", "--in", csv}).code == cli::kBadFlags);
    CHECK(run({"estimate", "--in", csv, "--A", "1", "--C", "2", "--seed", "5", "--n-perm", "10"}).code ==
          cli::kBadFlags);
  }

  TEST_CASE("crosscheck") {
    const auto res = run({"crosscheck", "--d", "4", "--atoms", "5", "--trials", "50", "--seed", "1"});
    CHECK(res.code == cli::kOk);
    CHECK(nlohmann::json::parse(res.out)["lemma_disagreements"] == 0);
    CHECK(run({"crosscheck", "--d", "4", "--atoms", "5", "--trials", "50", "--seed", "1"}).out == res.out);
    CHECK(run({"crosscheck", "--d", "4", "--atoms", "5", "--trials", "50"}).code == cli::kBadFlags);
    CHECK(run({"crosscheck", "--d", "4", "--atoms", "2", "--trials", "5", "--seed", "1"}).code == cli::kBadFlags);
  }
}
