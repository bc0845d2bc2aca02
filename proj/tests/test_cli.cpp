#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(AVCYC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const std::string kFixture = std::string(AVCYC_TEST_DATA_DIR) + "/lmfdb_fixture.jsonl";

}  // namespace

TEST_CASE("validate") {
  auto ok = run("validate --p 2 --r 1 --g 1 --poly 1,1,2");
  CHECK(ok.code == 0);
  auto j = json::parse(ok.out);
  CHECK(j["schema_version"] == "1");
  CHECK(j["is_weil"] == true);
  CHECK(j["is_ordinary"] == true);
  CHECK(j["is_irreducible"] == true);
  CHECK(j["context"]["point_count"] == "4");

  auto neg = run("validate --p 2 --r 1 --g 1 --poly 1,0,2");
  CHECK(neg.code == 1);
  CHECK(json::parse(neg.out)["is_ordinary"] == false);

  auto bad = run("validate --p 2 --r 1 --g 1 --poly 1,1");
  CHECK(bad.code == 2);
  CHECK(json::parse(bad.out)["error"] == "wrong_degree");

  CHECK(run("validate --p 2 --poly 1,x,2").code == 2);
  CHECK(run("validate --p 6 --poly 1,1,6").code == 2);
  CHECK(run("validate --poly 1,1,2").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("validate --p 2 --poly 1,3,2").code == 1);  // not Weil
}

TEST_CASE("classify") {
  auto r5 = run("classify --p 5 --r 1 --g 1 --poly 1,-2,5 --no-timing");
  CHECK(r5.code == 0);
  auto j = json::parse(r5.out);
  CHECK(j["summary"]["classes"] == "2");
  CHECK(j["summary"]["cyclic"] == "1");
  CHECK(j["summary"]["not_cyclic"] == "1");
  CHECK(j["completeness"] == "certified");
  CHECK_FALSE(j.contains("timing"));
  std::set<std::string> groups;
  for (const auto& c : j["classes"]) {
    groups.insert(c["group"].get<std::string>());
    CHECK(c["oracle_agrees"] == true);
  }
  CHECK(groups == std::set<std::string>{"Z/4", "(Z/2)^2"});

  auto r2 = run("classify --p 2 --r 1 --g 1 --poly 1,1,2");
  CHECK(r2.code == 0);
  auto j2 = json::parse(r2.out);
  CHECK(j2["summary"]["classes"] == "1");
  CHECK(j2["summary"]["cyclic"] == "1");
  CHECK(j2.contains("timing"));

  auto refused = run("classify --p 2 --r 1 --g 1 --poly 1,0,2");
  CHECK(refused.code == 1);
  CHECK(json::parse(refused.out)["reason"] == "not ordinary");

  CHECK(run("classify --p 5 --poly 1,-2,5 --index-bound 0").code == 2);
  auto small = json::parse(run("classify --p 5 --poly 1,-2,5 --index-bound 1 --no-timing").out);
  CHECK(small["summary"]["classes"] == "1");
}

TEST_CASE("classify output is byte-deterministic") {
  std::string args = "classify --p 2 --r 1 --g 2 --poly 1,-1,-1,-2,4 --no-timing";
  auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  fs::path out = fs::temp_directory_path() / ("avcyc_cli_" + std::to_string(::getpid()) + ".json");
  CHECK(run(args + " --out " + out.string()).code == 0);
  CHECK(slurp(out) == a.out);
  fs::remove(out);
}

TEST_CASE("convert") {
  auto m2i = run("convert --p 2 --poly 1,1,2 --matrix '0,-2;1,-1'");
  CHECK(m2i.code == 0);
  auto j = json::parse(m2i.out);
  CHECK(j["ideal"]["basis"] == json::parse(R"([["1","0"],["0","1"]])"));
  CHECK(j["round_trip"]["status"] == "conjugate");

  auto i2m = run("convert --p 2 --poly 1,1,2 --ideal '1,0;0,1'");
  CHECK(i2m.code == 0);
  auto k = json::parse(i2m.out);
  CHECK(k["matrix"] == json::parse(R"([["0","-2"],["1","-1"]])"));
  CHECK(k["round_trip"]["status"] == "equivalent");

  auto flat = run("convert --p 5 --poly 1,-2,5 --matrix 1,-2,2,1 --dim 2");
  CHECK(flat.code == 0);
  CHECK(json::parse(flat.out)["round_trip"]["status"] == "conjugate");

  auto bad = run("convert --p 2 --poly 1,1,2 --matrix '0,-3;1,-1'");
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["message"] == "not in M_{n,f}");

  CHECK(run("convert --p 2 --poly 1,1,2 --ideal '1/2,0;0,1'").code == 1);  // not alpha-stable
  CHECK(run("convert --p 2 --poly 1,1,2").code == 2);
}

TEST_CASE("sweep") {
  auto r = run("sweep --p 2 --r 1 --g 1 --no-timing");
  CHECK(r.code == 0);
  CHECK(r.out.find("2,\"1,1,2\",1,1,0,certified") != std::string::npos);
  CHECK(r.out.find("2,\"1,-1,2\",1,1,0,certified") != std::string::npos);

  auto x = run("sweep --p 2 --r 1 --g 1 --no-timing --fixtures " + kFixture);
  CHECK(x.code == 0);
  auto pos = x.out.find("# cross-validation");
  REQUIRE(pos != std::string::npos);
  auto j = json::parse(x.out.substr(pos + 19));
  CHECK(j["records"] == "20");
  CHECK(j["mismatches"].empty());

  auto g3 = run("sweep --p 2 --g 3");
  CHECK(g3.code == 1);
  CHECK(json::parse(g3.out)["error"] == "capability");
  CHECK(run("sweep --p 2 --r 5 --g 1").code == 1);

  fs::path d1 = fs::temp_directory_path() / ("avcyc_sweep1_" + std::to_string(::getpid()));
  fs::path d2 = fs::temp_directory_path() / ("avcyc_sweep2_" + std::to_string(::getpid()));
  CHECK(run("sweep --p 3 --g 1 --no-timing --jobs 3 --out-dir " + d1.string() + " --fixtures " + kFixture).code == 0);
  CHECK(run("sweep --p 3 --g 1 --no-timing --jobs 1 --out-dir " + d2.string() + " --fixtures " + kFixture).code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(d1)) {
    ++files;
    CHECK(slurp(e.path()) == slurp(d2 / e.path().filename()));
  }
  CHECK(fs::exists(d1 / "sweep.csv"));
  CHECK(fs::exists(d1 / "cross_validation.json"));
  CHECK(files >= 5);
  fs::remove_all(d1);
  fs::remove_all(d2);

  CHECK(run("sweep --p 2 --g 1 --fetch --endpoint http://127.0.0.1:1/x").code == 1);
}
