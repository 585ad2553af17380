#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "modstar/cli.hpp"
#include "modstar/csv.hpp"
#include "modstar/geodesic.hpp"
#include "modstar/specialfn.hpp"
#include "modstar/vardi.hpp"

using namespace modstar;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "modstar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST_CASE("subcommand list") {
  const std::vector<std::string> want{"iid-modgauss", "density-check", "dedekind-figure", "vardi-phi",
                                      "vardi-law",    "geodesics",     "sarnak",          "selberg",
                                      "wieand-limit", "counterexample", "invert-limit"};
  CHECK(subcommand_names() == want);
}

TEST_CASE("geodesics row") {
  const auto r = invoke({"geodesics", "--x", "7", "--output", "-"});
  CHECK(r.code == 0);
  CHECK(r.out == "trace,norm,length,psi,word\n3,6.8541019662496845,1.9248473002384139,0,RL\n");
}

TEST_CASE("figure row count and adapter values") {
  const auto r = invoke({"dedekind-figure", "--t", "1.5707963267948966", "--n-max", "5000", "--stride", "10", "--output", "-"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls[0] == "t,N,value");
  CHECK(ls.size() == 501);

  const auto small = invoke({"dedekind-figure", "--t", "2", "--n-max", "50", "--output", "-"});
  const auto tr = figure_trace(2.0, 50, 1);
  const auto sl = lines(small.out);
  REQUIRE(sl.size() == tr.rows.size() + 1);
  for (std::size_t i = 0; i < tr.rows.size(); ++i)
    CHECK(sl[i + 1] == "2," + csv::format(tr.rows[i].n) + "," + csv::format(tr.rows[i].value));
}

TEST_CASE("sarnak and selberg adapters") {
  const auto r = invoke({"sarnak", "--t", "0.2", "--x", "500", "--output", "-"});
  const auto v = sarnak_trace(0.2, 500.0);
  CHECK(lines(r.out)[1] == "0.20000000000000001,500," + csv::format(v.value) + "," + csv::format(v.phi1));
  CHECK(invoke({"sarnak", "--t", "0.3", "--x", "500", "--output", "-"}).code == 1);
  const auto ex = invoke({"sarnak", "--t", "0.3", "--x", "500", "--exploratory", "--output", "-"});
  CHECK(ex.code == 0);
  CHECK(lines(ex.out)[1].ends_with(",nan"));
  const auto s = invoke({"selberg", "--x", "1000,2000", "--output", "-"});
  CHECK(lines(s.out)[1] == "1000," + csv::format(selberg_check(1000.0)) + ",155");
}

TEST_CASE("wieand adapter") {
  const auto r = invoke({"wieand-limit", "--gamma", "0.125", "--t-max", "1.5707963267948966", "--points", "3", "--output", "-"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls[3] == "1.5707963267948966," + csv::format(wieand_limit(std::numbers::pi / 2, 0.125)) + ",0,wieand gamma=0.125");
  CHECK(invoke({"wieand-limit", "--t-max", "3.2", "--output", "-"}).code == 1);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"geodesics", "--x", "7", "--bogus", "1", "--output", "-"}).code == 2);
  CHECK(invoke({"geodesics", "--x", "seven", "--output", "-"}).code == 2);
  CHECK(invoke({"geodesics", "--output", "-"}).code == 2);
  CHECK(invoke({"geodesics", "--x", "7", "-o", "-"}).code == 2);
  const auto pole = invoke({"vardi-phi", "--t", "12.566370614359172", "--output", "-"});
  CHECK(pole.code == 1);
  CHECK(pole.err.find("at or beyond pole") != std::string::npos);
  CHECK(invoke({"invert-limit", "--k", "1", "--c", "-1", "--output", "-"}).code == 1);
  CHECK(invoke({"dedekind-figure", "--t", "6.3", "--n-max", "10", "--claim-convergent", "--output", "-"}).code == 1);
  CHECK(invoke({"dedekind-figure", "--t", "1.0", "--n-max", "10", "--claim-convergent", "--output", "-"}).code == 0);
  CHECK(invoke({"density-check", "--coeffs", "2,1", "--output", "-"}).code == 1);

  RunConfig bad;
  bad.subcommand = "geodesics";
  bad.params["x"] = "7";
  bad.chunks = 0;
  std::ostringstream o, e;
  CHECK(run(bad, o, e) == 2);
  bad.subcommand = "nope";
  bad.chunks = 1;
  CHECK(run(bad, o, e) == 2);
}

TEST_CASE("help documents windows") {
  auto help = [](const std::string& cmd) { return invoke({cmd, "--help"}).out; };
  CHECK(help("wieand-limit").find("|t| < pi") != std::string::npos);
  CHECK(help("sarnak").find("|t| <= pi/12") != std::string::npos);
  CHECK(help("vardi-phi").find("|t| < 4 pi") != std::string::npos);
  CHECK(invoke({"sarnak", "--help"}).code == 0);
}

TEST_CASE("file output and metadata") {
  const fs::path dir = fs::temp_directory_path() / "modstar_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / "g.csv";
  REQUIRE(invoke({"geodesics", "--x", "30", "--seed", "5", "--output", out.string()}).code == 0);
  CHECK(slurp(out).starts_with("trace,norm,length,psi,word\n"));
  const auto meta = slurp(out.string() + ".meta");
  CHECK(meta.find("subcommand=geodesics\n") != std::string::npos);
  CHECK(meta.find("param.x=30\n") != std::string::npos);
  CHECK(meta.find("seed=5\n") != std::string::npos);
  CHECK(meta.find("version=") != std::string::npos);
  CHECK(meta.find("wall_clock_seconds=") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("vardi-phi determinism") {
  const std::vector<std::string> args{"vardi-phi", "--t", "1.5707963267948966", "--samples", "1000000",
                                      "--seed", "42", "--chunks", "8", "--output", "-"};
  const auto a = invoke(args), b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
