#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "rgtool/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "rgtool");
  std::ostringstream out, err;
  int code = rgtool::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Workdir {
 public:
  Workdir() : dir_(fs::temp_directory_path() / ("rgtool_test_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) const {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("coset command") {
  Workdir w;
  auto c5 = w.write("c5.pres", "gens: a\nrel: a^5\n");
  auto f2 = w.write("f2.pres", "gens: a b\n");
  auto r = run({"coset", c5});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("index 5\n", 0) == 0);
  r = run({"coset", f2, "--subgens", "a,b"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("index 1\n", 0) == 0);
  r = run({"coset", f2, "--subgens", "[a,b],a^2,b,a b a'"});
  CHECK(r.out.rfind("index 2\n", 0) == 0);
  r = run({"coset", f2, "--max-cosets", "100"});
  CHECK(r.code == 2);
  CHECK(run({"coset", w.path("missing.pres")}).code == 3);
  CHECK(run({"coset", f2, "--subgens", "c"}).code == 3);
}

TEST_CASE("pichain command") {
  Workdir w;
  auto f2 = w.write("f2.pres", "gens: a b\n");
  auto r = run({"pichain", f2, "--primes", "2,3", "--depth", "2"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::vector<nlohmann::json> stages;
  for (std::string line; std::getline(lines, line);) stages.push_back(nlohmann::json::parse(line));
  REQUIRE(stages.size() == 2);
  CHECK(stages[0]["cumulative_index"] == 4);
  CHECK(stages[1]["cumulative_index"] == 972);
  CHECK(stages[0]["generator_count"] == 5);

  r = run({"pichain", f2, "--primes", "2,3", "--depth", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());

  auto triv = w.write("triv.pres", "gens: a\nrel: a\n");
  r = run({"pichain", triv, "--primes", "2,3,5", "--depth", "3"});
  CHECK(r.code == 0);
  std::istringstream tl(r.out);
  int count = 0;
  for (std::string line; std::getline(tl, line); ++count) {
    CHECK(nlohmann::json::parse(line)["cumulative_index"] == 1);
  }
  CHECK(count == 3);

  CHECK(run({"pichain", f2, "--primes", "2,3", "--depth", "2", "--max-index", "100"}).code == 2);
  CHECK(run({"pichain", f2, "--primes", "2,4", "--depth", "1"}).code == 3);
  CHECK(run({"pichain", f2, "--primes", "2", "--depth", "2"}).code == 3);
}

TEST_CASE("construct and verify commands") {
  Workdir w;
  auto f2 = w.write("f2.pres", "gens: a b\n");
  auto cert = w.path("cert.json");
  auto r = run({"construct", f2, "--primes", "2,3,5,7,11", "--epsilon", "1/2", "--deficiency", "2",
                "--elements", "4", "--out", cert});
  CHECK(r.code == 0);
  auto stdout_run = run({"construct", f2, "--primes", "2,3,5,7,11", "--epsilon", "1/2",
                         "--deficiency", "2", "--elements", "4"});
  CHECK(stdout_run.out == read(cert));

  r = run({"verify", cert, f2});
  CHECK(r.code == 0);

  auto j = nlohmann::json::parse(read(cert));
  j["records"][2]["ineq9"]["dA"] = "812";
  auto bad = w.write("bad.json", j.dump(2));
  r = run({"verify", bad, f2});
  CHECK(r.code == 1);
  CHECK(r.err.find("record 2") != std::string::npos);

  auto broken = w.write("broken.json", "{\"records\": [");
  CHECK(run({"verify", broken, f2}).code == 3);

  CHECK(run({"construct", f2, "--primes", "2,3", "--epsilon", "1/1", "--deficiency", "2"}).code == 3);
  CHECK(run({"construct", f2, "--primes", "2,3", "--epsilon", "0.5", "--deficiency", "2"}).code == 3);

  r = run({"construct", f2, "--primes", "2,3,5", "--epsilon", "1/2", "--deficiency", "2",
           "--elements", "1"});
  CHECK(r.code == 0);
  auto one = nlohmann::json::parse(r.out);
  REQUIRE(one["records"].size() == 2);
  CHECK(one["records"][1]["case"] == "extend");

  auto part = w.path("part.json");
  run({"construct", f2, "--primes", "2,3,5,7,11", "--epsilon", "1/2", "--deficiency", "2",
       "--elements", "2", "--out", part});
  r = run({"construct", f2, "--primes", "2,3,5,7,11", "--epsilon", "1/2", "--deficiency", "2",
           "--elements", "4", "--resume", part});
  CHECK(r.code == 0);
  CHECK(r.out == read(cert));

  auto c3 = w.write("c3.pres", "gens: a b c\nrel: a^2\n");
  r = run({"construct", c3, "--primes", "2,3", "--epsilon", "1/2", "--deficiency", "2",
           "--max-index", "4"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.out)["budget_report"]["complete"] == false);
}

TEST_CASE("oracle command") {
  auto r = run({"oracle", "--catalog", "s3", "--primes", "2,3", "--check", "all"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: pass") != std::string::npos);
  CHECK(r.out.find("membership mismatches 0") != std::string::npos);

  r = run({"oracle", "--catalog", "d4", "--primes", "2,2", "--check", "contains"});
  CHECK(r.code == 0);
  CHECK(r.out.find("subgroups 10") != std::string::npos);
  CHECK(r.out.find("n = none") == std::string::npos);

  CHECK(run({"oracle", "--catalog", "nope", "--primes", "2"}).code == 3);
  CHECK(run({"oracle", "--catalog", "s3", "--primes", "2", "--check", "bogus"}).code == 3);

  r = run({"oracle", "--catalog", "s3", "--primes", "3,2", "--check", "ord"});
  CHECK(r.code == 1);

  auto serial = run({"oracle", "--catalog", "all", "--primes", "2,3"});
  auto parallel = run({"--jobs", "4", "oracle", "--catalog", "all", "--primes", "2,3"});
  CHECK(serial.out == parallel.out);
  CHECK(serial.code == parallel.code);

  Workdir w;
  auto tbl = w.write("c3.tbl", "3\n0 1 2\n1 2 0\n2 0 1\n");
  r = run({"oracle", "--table", tbl, "--primes", "3", "--check", "all"});
  CHECK(r.code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("rgtool ", 0) == 0);
}
