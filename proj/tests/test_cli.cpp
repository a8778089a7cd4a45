#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "difflat/autocorr.hpp"
#include "difflat/comb.hpp"
#include "difflat/format.hpp"

namespace fs = std::filesystem;
using difflat::cli::run;

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

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("difflat_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const auto p = path / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"comb", "gen", "--rule", "constant", "--preset", "square"}).code == 2);  // no radius
  CHECK(invoke({"lattice", "info"}).code == 2);
  CHECK(invoke({"lattice", "info", "--preset", "pentagonal"}).code == 2);
  CHECK(invoke({"autocorr", "--comb", "/nonexistent/comb.txt", "--zmax", "1"}).code == 2);
  CHECK(invoke({"verify", "--suite", "nonsense"}).code == 2);
  CHECK(invoke({"verify"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"verify", "--help"}).code == 0);
}

TEST_CASE("malformed lattice file names the file and line") {
  TempDir dir;
  const auto path = dir.file("bad.lat", "# square lattice\ndim 2\nbasis 1 0 0 x\n");
  const auto r = invoke({"lattice", "info", "--basis", path});
  CHECK(r.code == 2);
  CHECK(r.err.find(path + ":3") != std::string::npos);

  const auto singular = dir.file("singular.lat", "dim 2\nbasis 1 2 2 4\n");
  const auto s = invoke({"comb", "gen", "--rule", "constant", "--basis", singular, "--radius", "3"});
  CHECK(s.code == 2);
  CHECK(s.err.find(singular + ":2") != std::string::npos);
}

TEST_CASE("malformed config names the file and line") {
  TempDir dir;
  const auto path = dir.file("bad.ini", "[poisson]\nradii = 10, 20\n[broken\n");
  const auto r = invoke({"verify", "--suite", "poisson", "--config", path});
  CHECK(r.code == 2);
  CHECK(r.err.find(path + ":3") != std::string::npos);

  const auto typo = dir.file("typo.ini", "[poisson]\nradii = 10, twenty\n");
  const auto t = invoke({"verify", "--suite", "poisson", "--config", typo});
  CHECK(t.code == 2);
  CHECK(t.err.find("poisson.radii") != std::string::npos);

  const auto unknown = invoke({"verify", "--suite", "poisson", "--set", "poisson.raddi=10"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("poisson.raddi") != std::string::npos);
  CHECK(invoke({"verify", "--suite", "poisson", "--set", "noequals"}).code == 2);
  CHECK(invoke({"verify", "--suite", "poisson", "--set", "poisson.radii=20,10"}).code == 2);
}

TEST_CASE("lattice info") {
  const auto r = invoke({"lattice", "info", "--preset", "square"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("density = 1\n") != std::string::npos);
  CHECK(r.out.find("packing_radius = 0.5\n") != std::string::npos);
  CHECK(r.out.find("dual_basis = 1 0 0 1\n") != std::string::npos);
  CHECK(r.out.find("covering_radius_estimate = 0.70710678118654757\n") != std::string::npos);

  TempDir dir;
  const auto path = dir.file("rect.lat", "dim = 2\nbasis = 2 0 0 1\n");
  const auto rect = invoke({"lattice", "info", "--basis", path});
  CHECK(rect.code == 0);
  CHECK(rect.out.find("density = 0.5\n") != std::string::npos);
  CHECK(rect.out.find("dual_basis = 0.5 0 0 1\n") != std::string::npos);
}

TEST_CASE("schemas are versioned and match CSV headers") {
  const auto all = invoke({"--schema"});
  CHECK(all.code == 0);
  for (const char* name : {"autocorr/1", "autocorr-scan/1", "diffract/1", "bragg/1", "verify-periodicity/1",
                           "verify-complement/1", "verify-homometry/1", "verify-poisson/1"}) {
    CHECK(all.out.find(std::string("schema ") + name) != std::string::npos);
  }
  const auto one = invoke({"diffract", "--schema"});
  CHECK(one.code == 0);
  CHECK(one.out.rfind("schema diffract/1\n", 0) == 0);
  CHECK(one.out.find("autocorr") == std::string::npos);
}

TEST_CASE("comb gen, autocorr and diffract round trip") {
  TempDir dir;
  const auto comb_path = dir.file("c.txt");
  const auto gen = invoke({"comb", "gen", "--rule", "bernoulli", "--param", "p=0.4", "--param", "seed=5", "--preset",
                           "hexagonal", "--radius", "6", "--out", comb_path});
  REQUIRE(gen.code == 0);
  const auto comb = difflat::load_comb(comb_path);
  CHECK(comb.provenance().has_value());
  CHECK(comb == difflat::generate(difflat::WeightRule::bernoulli(0.4, 5), comb.lattice(), 6.0));

  const auto ac = invoke({"autocorr", "--comb", comb_path, "--zmax", "2.5"});
  REQUIRE(ac.code == 0);
  const auto rows = lines(ac.out);
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0] == "# schema: autocorr/1");
  CHECK(rows[1] == "z1,z2,re,im");
  const auto table = difflat::autocorrelation(comb, 2.5);
  REQUIRE(rows.size() == table.entries.size() + 2);
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    const std::string want = std::to_string(e.z[0]) + "," + std::to_string(e.z[1]) + "," +
                             difflat::format_double(e.value.real()) + "," + difflat::format_double(e.value.imag());
    CHECK(rows[i + 2] == want);
    double back = 0.0;
    const auto cells = rows[i + 2].substr(rows[i + 2].find(',', rows[i + 2].find(',') + 1) + 1);
    REQUIRE(difflat::parse_double(cells.substr(0, cells.find(',')), back));
    CHECK(back == e.value.real());  // 17 digits round-trip exactly
  }

  const auto single = invoke({"autocorr", "--comb", comb_path, "--zmax", "2.5", "--variant", "single", "--window", "4"});
  CHECK(single.code == 0);
  CHECK(invoke({"autocorr", "--comb", comb_path, "--zmax", "20"}).code == 2);

  const auto csv_path = dir.file("d.csv");
  const auto df = invoke({"diffract", "--comb", comb_path, "--grid", "8", "--domain", "parallelepiped", "--out", csv_path});
  REQUIRE(df.code == 0);
  const auto drows = lines(slurp(csv_path));
  CHECK(drows[0] == "# schema: diffract/1");
  CHECK(drows[1] == "k1,k2,intensity,bragg_flag");
  CHECK(drows.size() == 64 + 2);
  CHECK(drows[2].substr(drows[2].size() - 2) == ",1");

  const auto profiled = invoke({"diffract", "--comb", comb_path, "--grid", "8", "--sigma", "0.1"});
  CHECK(profiled.code == 0);
  CHECK(invoke({"diffract", "--comb", comb_path, "--sigma", "0"}).code == 2);
  CHECK(invoke({"diffract", "--comb", comb_path, "--domain", "hexagon"}).code == 2);
}

TEST_CASE("autocorrelation scans and bragg ladders") {
  const auto scan = invoke({"autocorr", "--rule", "constant", "--preset", "square", "--z", "1,0", "--radii", "10,20"});
  REQUIRE(scan.code == 0);
  const auto rows = lines(scan.out);
  CHECK(rows[0] == "# schema: autocorr-scan/1");
  CHECK(rows[1] == "r,re,im");
  CHECK(rows.size() == 4);
  CHECK(invoke({"autocorr", "--rule", "constant", "--preset", "square", "--z", "1,0"}).code == 2);
  CHECK(invoke({"autocorr", "--rule", "constant", "--preset", "square", "--z", "1,0", "--radii", "10",
                "--variant", "single"}).code == 2);

  const auto bragg = invoke({"bragg", "--rule", "constant", "--preset", "rectangular", "--kstar", "1,-1", "--radii",
                             "20,40"});
  REQUIRE(bragg.code == 0);
  const auto brows = lines(bragg.out);
  CHECK(brows[0] == "# schema: bragg/1");
  CHECK(brows[1] == "kstar1,kstar2,radius,amplitude");
  CHECK(brows.size() == 4);
  CHECK(invoke({"bragg", "--rule", "constant", "--preset", "square", "--kstar", "1,0,0", "--radii", "5"}).code == 2);
  CHECK(invoke({"bragg", "--rule", "constant", "--preset", "square", "--kstar", "1,0", "--radii", "5",
                "--param", "q=1"}).code == 2);
}

TEST_CASE("verify suites report, breach and override") {
  const auto periodic = invoke({"verify", "--suite", "periodicity", "--set", "lattice.preset=hexagonal", "--set",
                                "periodicity.radius=50"});
  CHECK(periodic.code == 0);
  CHECK(periodic.out.find("max relative residual") != std::string::npos);
  CHECK(periodic.out.find("PASS") != std::string::npos);

  const auto poisson = invoke({"verify", "--suite", "poisson"});
  CHECK(poisson.code == 0);

  TempDir dir;
  const auto cfg = dir.file("h.ini", "[homometry]\nradii = 40, 80\ntolerance = 1e-9\n");
  const auto strict = invoke({"verify", "--suite", "homometry", "--config", cfg});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("FAIL") != std::string::npos);
  // flags win over the file
  CHECK(invoke({"verify", "--suite", "homometry", "--config", cfg, "--set", "homometry.tolerance=0.05"}).code == 0);

  const auto not_half = invoke({"verify", "--suite", "homometry", "--set", "homometry.rule=bernoulli", "--set",
                                "homometry.p=0.2", "--set", "homometry.radii=30"});
  CHECK(not_half.code == 2);
  CHECK(invoke({"verify", "--suite", "poisson", "--set", "poisson.rule=visible"}).code == 2);

  const auto lat = dir.file("hex.lat", "dim 2\nbasis 1 0.5 0 0.8660254037844386\n");
  const auto from_file = dir.file("p.ini", "[lattice]\nfile = hex.lat\n[periodicity]\nradius = 10\nsamples = 4\n");
  CHECK(invoke({"verify", "--suite", "periodicity", "--config", from_file}).code == 0);
}

TEST_CASE("verify output is byte-identical across runs") {
  TempDir dir;
  const std::vector<std::vector<std::string>> runs{
      {"periodicity", "periodicity.rule=bernoulli", "periodicity.radius=20"},
      {"complement", "complement.radii=20,40", "complement.z_count=4"},
      {"homometry", "homometry.radii=20,40", "homometry.zmax=3"},
      {"poisson", "poisson.radii=10,20", "lattice.preset=hexagonal"},
  };
  for (const auto& r : runs) {
    const auto a = dir.file(r[0] + "_a.csv");
    const auto b = dir.file(r[0] + "_b.csv");
    const auto ra = invoke({"verify", "--suite", r[0], "--set", r[1], "--set", r[2], "--out", a});
    const auto rb = invoke({"verify", "--suite", r[0], "--set", r[1], "--set", r[2], "--out", b});
    CHECK(ra.code == 0);
    CHECK(ra.out == rb.out);
    const auto text = slurp(a);
    CHECK(text.rfind("# schema: verify-" + r[0] + "/1\n", 0) == 0);
    CHECK(text == slurp(b));
  }
}
