#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "dichot/cli.hpp"

using namespace dichot;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json strip_timing(json doc) {
  if (doc.is_object()) {
    doc.erase("elapsed_seconds");
    for (auto &[key, value] : doc.items())
      value = strip_timing(value);
  } else if (doc.is_array()) {
    for (auto &value : doc)
      value = strip_timing(value);
  }
  return doc;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("dichot_cli_" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("strong") {
  const auto both = run({"strong", "--k", "1", "--method", "both", "--format", "json"});
  CHECK(both.code == kExitOk);
  const auto doc = json::parse(both.out);
  CHECK(doc["s"] == "1");
  CHECK(doc["methods_agree"] == true);
  CHECK(doc["theorem_holds"] == true);
  CHECK(doc["s_bruteforce"] == "1");

  const auto table = run({"strong", "--k", "5", "--k", "7"});
  CHECK(table.code == kExitOk);
  CHECK(table.out.rfind("k  s(2k)\n5  3\n7  9\n", 0) == 0);

  const auto even = run({"strong", "--k", "4", "--method", "formula"});
  CHECK(even.code == kExitUsage);
  CHECK(even.err.find("This formula is for odd k.") != std::string::npos);

  const auto explore = run({"strong", "--k", "6", "--method", "bruteforce", "--allow-even",
                            "--format", "csv"});
  CHECK(explore.code == kExitOk);
  CHECK(explore.out.find("\n6,6,bruteforce,") != std::string::npos);

  CHECK(run({"strong", "--k", "9", "--method", "bruteforce", "--bf-cutoff", "7"}).code ==
        kExitUsage);
  CHECK(run({"strong", "--k", "9", "--max-order", "50"}).code == kExitUsage);
  CHECK(run({"strong", "--k", "3", "--method", "guess"}).code == kExitUsage);
  CHECK(run({"strong", "--k", "3", "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("numbers are decimal strings") {
  const auto doc = json::parse(run({"strong", "--k", "9", "--format", "json"}).out);
  for (const char *key : {"k", "n", "s", "s_formula", "qrig_at_minus_one", "group_order",
                          "class_count", "subgroup_count", "elapsed_seconds"})
    CHECK(doc[key].is_string());
  CHECK(doc["s"] == "40");
  CHECK(doc["qrig_at_minus_one"] == "-40");
  CHECK(doc["subgroup_count"] == "98");
}

TEST_CASE("qrig") {
  const auto k1 = run({"qrig", "--k", "1", "--format", "json"});
  REQUIRE(k1.code == kExitOk);
  const auto doc = json::parse(k1.out);
  CHECK(doc["coefficients"] == json::array({"0", "1"}));
  CHECK(doc["at_minus_one"] == "-1");

  const auto k3 = json::parse(run({"qrig", "--k", "3", "--format", "json"}).out);
  CHECK(k3["paths_agree"] == true);
  CHECK(k3["palindromic"] == true);
  CHECK(k3["paths"].size() == 3);
  CHECK(k3["paths"]["moebius"] == k3["paths"]["bruteforce"]);
  CHECK(k3["paths"]["tom"] == k3["paths"]["bruteforce"]);

  const auto big = json::parse(run({"qrig", "--n", "18", "--format", "json"}).out);
  CHECK(big["paths"].size() == 2);
  CHECK(big["at_minus_one"] == "-40");

  const auto text = run({"qrig", "--n", "10"});
  CHECK(text.out.find("coefficients (low to high): 0 0 0 2 3 5 3 2\n") != std::string::npos);
  CHECK(run({"qrig", "--n", "9"}).code == kExitUsage);
  CHECK(run({"qrig", "--n", "6", "--k", "3"}).code == kExitUsage);
}

TEST_CASE("tables") {
  const auto tom = json::parse(run({"tom", "--n", "2", "--format", "json"}).out);
  CHECK(tom["convention"] == "descending");
  CHECK(tom["marks"] == json::array({json::array({"1", "1"}), json::array({"0", "2"})}));
  const auto asc = json::parse(run({"tom", "--n", "2", "--convention", "ascending",
                                    "--format", "json"}).out);
  CHECK(asc["marks"] == json::array({json::array({"2", "0"}), json::array({"1", "1"})}));
  CHECK(run({"tom", "--n", "2", "--convention", "sideways"}).code == kExitUsage);

  const auto qp = run({"quasipolarities", "--n", "12"});
  CHECK(qp.code == kExitOk);
  CHECK(qp.out.find("(6, 1)\n") != std::string::npos);
  CHECK(qp.out.find("(2, 5)\n") != std::string::npos);

  const auto lat = json::parse(run({"lattice", "--n", "6", "--format", "json"}).out);
  CHECK(lat["subgroup_count"] == "16");
  long total = 0;
  for (const auto &c : lat["classes"])
    total += std::stol(c["length"].get<std::string>());
  CHECK(total == 16);
  CHECK(run({"lattice", "--n", "6"}).out.find("subgroups: 16, classes: 10") != std::string::npos);
}

TEST_CASE("verify") {
  const auto ok = run({"verify", "--k", "9"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("holds") != std::string::npos);
  CHECK(run({"verify", "--k", "2"}).code == kExitUsage);
  CHECK(run({"verify", "--k", "21", "--format", "json"}).code == kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"strong", "--k", "x"}).code == kExitUsage);
  CHECK(run({"strong"}).code == kExitUsage);
  CHECK(run({"strong", "--help"}).code == kExitOk);
}

TEST_CASE("cache round trip") {
  TempDir dir;
  const std::string cache = dir.path.string();
  const auto cold = run({"strong", "--k", "11", "--format", "json", "--cache-dir", cache});
  CHECK(cold.err.find("miss") != std::string::npos);
  CHECK(std::filesystem::exists(dir.path / "affine_lattice_n22.json"));
  const auto warm = run({"strong", "--k", "11", "--format", "json", "--cache-dir", cache});
  CHECK(warm.err.find("hit") != std::string::npos);
  CHECK(strip_timing(json::parse(cold.out)).dump() == strip_timing(json::parse(warm.out)).dump());

  const auto uncached = run({"strong", "--k", "11", "--format", "json"});
  CHECK(strip_timing(json::parse(uncached.out)).dump() ==
        strip_timing(json::parse(cold.out)).dump());

  // the order cap still applies to cached lattices
  CHECK(run({"strong", "--k", "11", "--max-order", "100", "--cache-dir", cache}).code ==
        kExitUsage);

  for (const char *cmd : {"tom", "lattice"}) {
    const auto a = run({cmd, "--n", "22", "--cache-dir", cache});
    const auto b = run({cmd, "--n", "22"});
    CHECK(a.out == b.out);
  }

  // a corrupted cache file is recomputed rather than trusted
  {
    std::ofstream broken(dir.path / "affine_lattice_n22.json");
    broken << "{\"schema_version\": \"0\"}";
  }
  const auto rebuilt = run({"strong", "--k", "11", "--format", "json", "--cache-dir", cache});
  CHECK(rebuilt.code == kExitOk);
  CHECK(strip_timing(json::parse(rebuilt.out)).dump() ==
        strip_timing(json::parse(cold.out)).dump());
}

TEST_CASE("environment overrides") {
  setenv("DICHOT_FORMAT", "csv", 1);
  const auto r = run({"strong", "--k", "3"});
  unsetenv("DICHOT_FORMAT");
  CHECK(r.out.rfind("k,s,", 0) == 0);
}
