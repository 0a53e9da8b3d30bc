#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "plucker/cli.hpp"

using namespace plucker;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("plucker_test_" + name); }

}  // namespace

TEST_CASE("params") {
  const auto r = run({"params", "-q", "2", "-l", "2", "-m", "4"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "q=2 l=2 m=4\nn=35\nk=6\nd=16\nd2=20\ne=19\ne'=15\n");
  const auto a = run({"params", "-q", "2", "-l", "2", "-m", "4", "--alpha", "1,4"});
  CHECK(a.out.find("n_alpha=7\nk_alpha=3\nd_alpha=4\n") != std::string::npos);
  const auto b = run({"params", "-q", "2", "-l", "3", "-m", "6"});
  CHECK(b.out.find("n=1395\n") != std::string::npos);
  CHECK(b.out.find("e=883\n") != std::string::npos);
  CHECK(b.out.find("e'=755\n") != std::string::npos);
  // no second weight for l = 1
  CHECK(run({"params", "-q", "3", "-l", "1", "-m", "4"}).out.find("d2=") == std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({"params", "-q", "6", "-l", "2", "-m", "4"}).code == kExitUsage);
  CHECK(run({"params", "-q", "2", "-l", "5", "-m", "4"}).code == kExitUsage);
  CHECK(run({"nosuch"}).code == kExitUsage);
  CHECK(run({"decompose", "-q", "2", "-l", "2", "-m", "4", "-f", "X:1,5"}).code == kExitUsage);
  CHECK(run({"verify", "-q", "2", "-l", "2", "-m", "4", "--suite", "bogus"}).code == kExitUsage);
  CHECK(run({"wdist", "-q", "2", "-l", "2", "-m", "4", "--format", "xml"}).code == kExitUsage);
  const auto r = run({"verify", "-q", "2", "-l", "1", "-m", "4", "--suite", "second"});
  CHECK(r.code == kExitUsage);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("wdist output formats and files") {
  const auto csv = run({"wdist", "-q", "2", "-l", "2", "-m", "4", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out == "weight,count\n0,1\n16,35\n20,28\n");
  const auto path = scratch("wdist.json");
  const auto r = run({"wdist", "-q", "3", "-l", "2", "-m", "4", "-o", path.string()});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["counts"]["81"] == "260");
  CHECK(j["counts"]["90"] == "468");
  const auto s = run({"wdist", "-q", "2", "-l", "2", "-m", "4", "--alpha", "1,4", "--format", "csv"});
  CHECK(s.out.rfind("weight,count\n0,1\n4,", 0) == 0);
  fs::remove(path);
}

TEST_CASE("wdist is identical across worker counts") {
  std::string ref;
  for (const char* j : {"1", "2", "4"}) {
    const auto r = run({"wdist", "-q", "2", "-l", "2", "-m", "5", "-j", j});
    CHECK(r.code == kExitOk);
    if (ref.empty()) ref = r.out;
    CHECK(r.out == ref);
  }
}

TEST_CASE("budget exits 2") {
  const auto r = run({"wdist", "-q", "2", "-l", "2", "-m", "4", "--budget", "100"});
  CHECK(r.code == kExitBudget);
  CHECK(r.err.find("budget") != std::string::npos);
  ::setenv("PLUCKER_BUDGET", "100", 1);
  CHECK(run({"wdist", "-q", "2", "-l", "2", "-m", "4"}).code == kExitBudget);
  // the flag wins over the environment
  CHECK(run({"wdist", "-q", "2", "-l", "2", "-m", "4", "--budget", "100000"}).code == kExitOk);
  ::unsetenv("PLUCKER_BUDGET");
  CHECK(run({"wdist", "-q", "2", "-l", "2", "-m", "4"}).code == kExitOk);
}

TEST_CASE("decompose") {
  const auto r = run({"decompose", "-q", "2", "-l", "2", "-m", "4", "-f", "X:1,2+X:3,4"});
  CHECK(r.code == kExitOk);
  CHECK(r.out ==
        "functional: X:1,2 + X:3,4\nwedge: v1^v2 + v3^v4\nverdict: nondecomposable\ndim V(z): 0\nbasis: (none)\n");
  const auto d = run({"decompose", "-q", "2", "-l", "2", "-m", "4", "-f", "X:3,4", "--debug-signs"});
  CHECK(d.out.find("verdict: decomposable\n") != std::string::npos);
  CHECK(d.out.find("basis: v1, v2\n") != std::string::npos);
  CHECK(d.out.find("unsigned verdict: decomposable\n") != std::string::npos);
  const auto j = run({"decompose", "-q", "3", "-l", "2", "-m", "4", "-f", R"({"1,2": "1", "1,3": "2"})"});
  CHECK(j.code == kExitOk);
  CHECK(j.out.find("verdict: decomposable\n") != std::string::npos);
}

TEST_CASE("strings dump") {
  const auto r = run({"strings", "-q", "2", "-l", "2", "-m", "3"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["fibers"].size() == 2);
  CHECK(j["fibers"][0]["points"].size() == 3);
  CHECK(j["sub_grassmannian"].size() == 1);
  CHECK(j["sub_grassmannian"][0] == "1 0 0;0 1 0");
}

TEST_CASE("verify exit codes and report file") {
  const auto path = scratch("verify.json");
  const auto ok = run({"verify", "-q", "2", "-l", "2", "-m", "4", "--suite", "nogin", "-o", path.string()});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.rfind("PASS nogin q=2 l=2 m=4", 0) == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["pass"] == true);
  CHECK(j["reports"].size() == 1);
  // the codimension-two corollary fails at m = 5
  const auto bad = run({"verify", "-q", "2", "-l", "3", "-m", "5", "--suite", "all"});
  CHECK(bad.code == kExitFailed);
  CHECK(bad.out.find("FAIL corollary q=2 l=3 m=5") != std::string::npos);
  CHECK(bad.out.find("PASS nogin q=2 l=3 m=5") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("verify config matrix") {
  const auto cfg = scratch("matrix.toml");
  std::ofstream(cfg) << "# small matrix\n[[job]]\nq = 2\nell = 2\nm = 4\nsuite = nogin\n\n[[job]]\nq = 3\nl = 2\nm = 4\n"
                        "suite = l2\nparallelism = 2\nseed = 5\n";
  const auto r = run({"verify", "--config", cfg.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("PASS nogin q=2 l=2 m=4") != std::string::npos);
  CHECK(r.out.find("PASS l2 q=3 l=2 m=4") != std::string::npos);
  std::ofstream(cfg) << "q = 2\n";
  CHECK(run({"verify", "--config", cfg.string()}).code == kExitUsage);
  fs::remove(cfg);
  CHECK(run({"verify", "--config", "/nonexistent/plucker.toml"}).code == kExitUsage);
}
