#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sadic/measure.hpp>
#include <sadic/serialize.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sadic;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exitCode;
  std::string output;
};

fs::path workDir() {
  fs::path d = fs::temp_directory_path() / "sadic_cli_test";
  fs::create_directories(d);
  return d;
}

Run runCli(const std::string& args, const Json& config, const std::string& name,
           bool force = true) {
  fs::path dir = workDir();
  fs::path cfg = dir / (name + ".json");
  fs::path out = dir / (name + ".out");
  {
    std::ofstream f(cfg);
    f << config.dump(2);
  }
  std::string cmd = std::string(SADIC_CLI_PATH) + " " + args + " --config " + cfg.string() +
                    " --out " + out.string() + (force ? " --force" : "") + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  Run r;
  r.exitCode = WEXITSTATUS(rc);
  if (fs::exists(out)) {
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
  }
  return r;
}

}  // namespace

TEST_CASE("content subcommand") {
  Json cfg;
  cfg["scalar"] = {{"places", "inf,3"}, {"components", {{"inf", "6"}, {"3", "6"}}}};
  auto r = runCli("content", cfg, "content");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("2\n") != std::string::npos);
  CHECK(r.output.find("# config_hash=") != std::string::npos);
}

TEST_CASE("delta subcommand on the standard lattice") {
  Json cfg = Json::parse(R"({"lattice": {"places": "inf,2",
      "matrix": {"inf": [["1","0"],["0","1"]], "2": [["1","0"],["0","1"]]}}})");
  auto r = runCli("delta", cfg, "delta");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("delta_sq,delta,witness,certified") != std::string::npos);
  CHECK(r.output.find("1,1,") != std::string::npos);
  CHECK(r.output.find("true") != std::string::npos);
}

TEST_CASE("malformed places string is a config error (exit 2)") {
  Json cfg;
  cfg["scalar"] = {{"places", "inf,4"}, {"components", {{"inf", "1"}, {"4", "1"}}}};
  auto r = runCli("content", cfg, "badplaces");
  CHECK(r.exitCode == 2);
}

TEST_CASE("refusing to overwrite without --force") {
  Json cfg;
  cfg["scalar"] = {{"places", "inf"}, {"components", {{"inf", "5"}}}};
  auto first = runCli("content", cfg, "overwrite");
  CHECK(first.exitCode == 0);
  auto second = runCli("content", cfg, "overwrite", false);
  CHECK(second.exitCode == 2);
}

TEST_CASE("nondiv subcommand emits the fraction table") {
  Json cfg;
  cfg["p"] = 3;
  cfg["n"] = 2;
  cfg["f"] = {{"0", "1"}, {"0", "0", "1"}};
  cfg["s"] = 6;
  cfg["t"] = {3.0, 0.0, 3.0};
  cfg["grid_level"] = 3;
  cfg["eps_exps"] = {1, 2, 3};
  cfg["rho"] = "1/3";
  cfg["cert"] = {{"d", 1}, {"k", 2}};
  auto r = runCli("nondiv", cfg, "nondiv");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("eps,fraction_lo,fraction_hi,rhs,pass") != std::string::npos);
  CHECK(r.output.find("3^-1,") != std::string::npos);
}

TEST_CASE("scan subcommand: byte-identical reruns and worker independence") {
  Json y;
  y["places"] = "3";
  y["components"] = {{"3", {"84"}}};
  Json cfg;
  cfg["y"] = y;
  cfg["mode"] = "vwa";
  cfg["height"] = 40;
  cfg["eps"] = "1/2";
  auto a = runCli("scan", cfg, "scan_a");
  auto b = runCli("scan", cfg, "scan_b");
  CHECK(a.exitCode == 0);
  CHECK(a.output == b.output);
  auto c = runCli("scan --workers 3", cfg, "scan_c");
  CHECK(a.output == c.output);
}

TEST_CASE("dirichlet subcommand verifies the liouville embedding") {
  Json y = toJson(liouvilleVector(3, 3));
  Json cfg;
  cfg["y"] = y;
  cfg["witness"] = {"-84", "1"};
  cfg["eps"] = "1/2";
  cfg["arch_mode"] = false;
  auto r = runCli("dirichlet", cfg, "dirichlet");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("\"delta_verified\": true") != std::string::npos);
  CHECK(r.output.find("\"exponent_window_exact\": true") != std::string::npos);
}

TEST_CASE("friendly subcommand on the cantor measure") {
  Json cfg;
  cfg["p"] = 3;
  cfg["kind"] = "self_similar";
  cfg["resolution"] = 6;
  cfg["maps"] = {{{"a", "3"}, {"b", "1"}, {"weight", "1/2"}},
                 {{"a", "3"}, {"b", "2"}, {"weight", "1/2"}}};
  auto r = runCli("friendly", cfg, "friendly");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("\"federer_bound\": \"2\"") != std::string::npos);
  CHECK(r.output.find("\"nonplanar\": true") != std::string::npos);
}

TEST_CASE("dichotomy subcommand: case ii on the block-triangular map") {
  Json cfg;
  cfg["places"] = "inf";
  cfg["m"] = 2;
  cfg["h"] = {{{{"1/2"}, {"0", "1"}}, {{"0"}, {"2"}}}};
  cfg["h_inv"] = {{{{"2"}, {"0", "-1"}}, {{"0"}, {"1/2"}}}};
  cfg["grid"] = {{"0"}, {"1"}, {"-2"}};
  cfg["eps"] = {"1/2"};
  cfg["cert"] = {{"d", 1}, {"k", 1}};
  auto r = runCli("dichotomy", cfg, "dichotomy");
  CHECK(r.exitCode == 0);
  CHECK(r.output.find("\"case\": \"ii\"") != std::string::npos);
  CHECK(r.output.find("\"literally_constant\": true") != std::string::npos);
}

TEST_CASE("serialization round trips") {
  PlaceSet S = PlaceSet::parse("inf,2,3");
  RatMat g(2, 2);
  g << Rat(1, 2), Rat(3), Rat(0), Rat(2);
  SLattice lat = SLattice::fromDiagonalMatrix(S, g);
  SLattice back = slatticeFromJson(toJson(lat));
  CHECK(back.S == lat.S);
  CHECK(back.g.at(Place::finite(2)) == g);

  YVector y = liouvilleVector(3, 2);
  YVector yb = yvectorFromJson(toJson(y));
  CHECK(yb.comp[0][0] == y.comp[0][0]);
  CHECK(yb.tailVal[0] == y.tailVal[0]);

  SModule mod(S, g);
  SModule mb = smoduleFromJson(toJson(mod));
  CHECK(mb.rank() == 2);
  CHECK(mb.diagonalGenerators() == g);
}

TEST_CASE("measure mass tables serialize with exact rationals") {
  SimilitudeFamily fam;
  fam.p = 3;
  fam.maps = {{Rat(3), Rat(1)}, {Rat(3), Rat(2)}};
  auto mu = CylinderMeasure::selfSimilar(fam, {Rat(1, 2), Rat(1, 2)});
  Json t = measureTableJson(mu, 2);
  CHECK(t["place"] == 3);
  CHECK(t["masses"].size() == 4);
  CHECK(t["masses"]["4"] == "1/4");  // digits (1,1)
}
