#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "difflat/autocorr.hpp"
#include "difflat/complement.hpp"
#include "difflat/diffraction.hpp"
#include "difflat/format.hpp"

namespace difflat::cli {

namespace {

const std::set<std::string> kRuleKeys{"rule", "value", "re", "im", "k", "p", "seed"};

std::set<std::string> with_rule_keys(std::set<std::string> keys) {
  keys.insert(kRuleKeys.begin(), kRuleKeys.end());
  return keys;
}

Lattice config_lattice(const Config& cfg, const std::filesystem::path& config_dir) {
  cfg.require_known("lattice", {"preset", "basis", "file"});
  const int given = cfg.has("lattice.preset") + cfg.has("lattice.basis") + cfg.has("lattice.file");
  if (given > 1) throw ConfigError("[lattice] takes only one of preset, basis, file");
  if (const auto file = cfg.text("lattice.file")) {
    std::filesystem::path p(*file);
    if (p.is_relative()) p = config_dir / p;
    return load_lattice(p);
  }
  if (cfg.has("lattice.basis")) {
    const auto values = cfg.reals("lattice.basis", {});
    try {
      return Lattice(basis_from_row_major(values));
    } catch (const Error& e) {
      throw ConfigError(std::string("field 'lattice.basis': ") + e.what());
    }
  }
  return preset_lattice(cfg.text("lattice.preset", "square"));
}

// The fallback rule and its parameters apply only when the section names no rule.
WeightRule config_rule(const Config& cfg, const std::string& section, const std::string& fallback,
                       std::map<std::string, std::string> fallback_params = {}) {
  const auto name = cfg.text(section + ".rule");
  std::map<std::string, std::string> params = name ? std::map<std::string, std::string>{} : fallback_params;
  for (const auto& key : kRuleKeys) {
    if (key == "rule") continue;
    if (auto v = cfg.text(section + "." + key)) params[key] = *v;
  }
  return make_rule(name.value_or(fallback), params);
}

std::vector<double> config_radii(const Config& cfg, const std::string& key, const std::vector<double>& fallback) {
  auto radii = cfg.reals(key, fallback);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw ConfigError("field '" + key + "': radii must be positive and strictly increasing");
    }
  }
  return radii;
}

double positive(const Config& cfg, const std::string& key, double fallback) {
  const double v = cfg.real(key, fallback);
  if (!(v > 0.0)) throw ConfigError("field '" + key + "' must be positive");
  return v;
}

int positive_int(const Config& cfg, const std::string& key, long long fallback) {
  const long long v = cfg.integer(key, fallback);
  if (v < 1 || v > 1'000'000) throw ConfigError("field '" + key + "' must be between 1 and 1000000");
  return static_cast<int>(v);
}

// Uniform integer in [-range, range] from the counter-based generator.
std::int64_t uniform_int(std::uint64_t seed, const LatticeVector& counter, std::int64_t range) {
  const double u = point_uniform(seed, counter);
  return std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(u * static_cast<double>(2 * range + 1))), 2 * range) -
         range;
}

std::string pad(const std::string& s, std::size_t width = 25) {
  return s.size() >= width ? s + "  " : s + std::string(width - s.size(), ' ');
}

struct Verdict {
  double value;
  double tolerance;
  std::string what;
};

int report(std::ostream& out, const std::string& suite, const Verdict& v) {
  const bool pass = v.value <= v.tolerance;
  out << suite << ": " << v.what << " = " << format_double(v.value) << "  tolerance = " << format_double(v.tolerance)
      << "  " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kSuccess : kToleranceBreach;
}

int run_periodicity(const Config& cfg, const Lattice& lat, Sink& csv_sink, std::ostream& out) {
  const std::string s = "periodicity";
  cfg.require_known(s, with_rule_keys({"radius", "samples", "shifts", "shift_range", "k_range", "sample_seed", "tolerance"}));
  const WeightRule rule = config_rule(cfg, s, "constant");
  const double radius = positive(cfg, s + ".radius", 50.0);
  const int samples = positive_int(cfg, s + ".samples", 50);
  const int shifts = positive_int(cfg, s + ".shifts", 5);
  const int shift_range = positive_int(cfg, s + ".shift_range", 3);
  const double k_range = positive(cfg, s + ".k_range", 2.0);
  const auto seed = static_cast<std::uint64_t>(cfg.integer(s + ".sample_seed", 1));
  const double tol = positive(cfg, s + ".tolerance", 1e-9);

  const WeightedComb comb = generate(rule, lat, radius);
  const Lattice dual = lat.dual();
  const int n = lat.dim();
  std::vector<Vector> ks;
  std::vector<LatticeVector> us;
  for (int i = 0; i < samples; ++i) {
    Vector k(n);
    for (int j = 0; j < n; ++j) k(j) = (2.0 * point_uniform(seed, LatticeVector{0, i, j}) - 1.0) * k_range;
    ks.push_back(k);
  }
  std::vector<Vector> shifted;
  for (int i = 0; i < samples; ++i) {
    for (int m = 0; m < shifts; ++m) {
      LatticeVector u(n);
      for (int j = 0; j < n; ++j) u[j] = uniform_int(seed, LatticeVector{1 + m, i, j}, shift_range);
      us.push_back(u);
      shifted.push_back(ks[static_cast<std::size_t>(i)] + dual.cartesian(u));
    }
  }
  const auto base = intensities(comb, ks);
  const auto moved = intensities(comb, shifted);

  CsvWriter csv(csv_sink.stream(), schema("verify-periodicity"), n);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    for (int m = 0; m < shifts; ++m) {
      const auto idx = static_cast<std::size_t>(i * shifts + m);
      const double d = base[static_cast<std::size_t>(i)];
      const double residual = std::abs(moved[idx] - d) / (1.0 + d);
      worst = std::max(worst, residual);
      std::vector<std::string> row{std::to_string(i), std::to_string(m)};
      for (const auto& c : real_cells(ks[static_cast<std::size_t>(i)])) row.push_back(c);
      for (const auto& c : coord_cells(us[idx])) row.push_back(c);
      row.push_back(format_double(d));
      row.push_back(format_double(residual));
      csv.row(row);
    }
  }
  out << "periodicity: " << rule.describe() << ", r = " << format_double(radius) << ", " << samples << " wave vectors x "
      << shifts << " dual shifts\n";
  return report(out, s, {worst, tol, "max relative residual"});
}

std::vector<LatticeVector> config_zs(const Config& cfg, const std::string& s, int dim) {
  if (const auto text = cfg.text(s + ".z")) {
    auto zs = parse_int_tuples(*text, "field '" + s + ".z'");
    for (const auto& z : zs) {
      if (z.dim != dim) throw ConfigError("field '" + s + ".z': vector " + z.to_string() + " has the wrong dimension");
    }
    return zs;
  }
  const int count = positive_int(cfg, s + ".z_count", 10);
  const int range = positive_int(cfg, s + ".z_range", 5);
  const auto seed = static_cast<std::uint64_t>(cfg.integer(s + ".z_seed", 7));
  std::vector<LatticeVector> zs;
  for (int i = 0; i < count; ++i) {
    LatticeVector z(dim);
    for (int j = 0; j < dim; ++j) z[j] = uniform_int(seed, LatticeVector{i, j}, range);
    zs.push_back(z);
  }
  return zs;
}

int run_complement(const Config& cfg, const Lattice& lat, Sink& csv_sink, std::ostream& out) {
  const std::string s = "complement";
  cfg.require_known(s, with_rule_keys({"radii", "z", "z_count", "z_range", "z_seed", "scaled_tolerance"}));
  const WeightRule rule = config_rule(cfg, s, "bernoulli", {{"p", "0.3"}, {"seed", "42"}});
  const auto radii = config_radii(cfg, s + ".radii", {50.0, 100.0, 200.0});
  const auto zs = config_zs(cfg, s, lat.dim());
  const double tol = positive(cfg, s + ".scaled_tolerance", 4.0);

  const WeightedComb full = generate(rule, lat, radii.back());
  CsvWriter csv(csv_sink.stream(), schema("verify-complement"), lat.dim());
  double worst = 0.0;
  out << "complement: " << rule.describe() << ", " << zs.size() << " difference vectors\n";
  out << "  radius                   max residual             max residual*radius\n";
  for (double r : radii) {
    const auto rows = complement_autocorr_check(restrict_to_ball(full, r), zs);
    double at_r = 0.0;
    for (const auto& e : rows) {
      at_r = std::max(at_r, e.residual);
      auto row = std::vector<std::string>{format_double(r)};
      for (const auto& c : coord_cells(e.z)) row.push_back(c);
      row.push_back(format_double(e.residual));
      row.push_back(format_double(e.residual * r));
      csv.row(row);
    }
    worst = std::max(worst, at_r * r);
    out << "  " << pad(format_double(r)) << pad(format_double(at_r)) << format_double(at_r * r) << '\n';
  }
  return report(out, s, {worst, tol, "max residual*radius"});
}

int run_homometry(const Config& cfg, const Lattice& lat, Sink& csv_sink, std::ostream& out) {
  const std::string s = "homometry";
  cfg.require_known(s, with_rule_keys({"radii", "zmax", "tolerance"}));
  const WeightRule rule = config_rule(cfg, s, "checkerboard");
  const auto radii = config_radii(cfg, s + ".radii", {100.0, 200.0});
  const double zmax = positive(cfg, s + ".zmax", 5.0);
  const double tol = positive(cfg, s + ".tolerance", 0.05);

  const auto ball = enumerate_ball(lat, zmax + 1e-9 * std::max(1.0, zmax));
  const std::vector<LatticeVector> zs(ball.begin(), ball.end());
  const WeightedComb full = generate(rule, lat, radii.back());
  CsvWriter csv(csv_sink.stream(), schema("verify-homometry"), lat.dim());
  double worst = 0.0;
  out << "homometry: " << rule.describe() << ", |z| <= " << format_double(zmax) << " (" << zs.size() << " vectors)\n";
  out << "  radius                   max |nu_S - nu_S'|\n";
  for (double r : radii) {
    const double h = homometry_check(restrict_to_ball(full, r), zs);
    worst = std::max(worst, h);
    csv.row({format_double(r), format_double(h)});
    out << "  " << pad(format_double(r)) << format_double(h) << '\n';
  }
  return report(out, s, {worst, tol, "max residual"});
}

std::vector<LatticeVector> default_kstars(int dim) {
  if (dim == 1) return {LatticeVector{0}, LatticeVector{1}, LatticeVector{-1}, LatticeVector{2}, LatticeVector{5}};
  if (dim == 2) {
    return {LatticeVector{0, 0}, LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}, LatticeVector{2, -1}};
  }
  return {LatticeVector{0, 0, 0}, LatticeVector{1, 0, 0}, LatticeVector{0, 1, 0}, LatticeVector{0, 0, 1},
          LatticeVector{1, 1, -1}};
}

int run_poisson(const Config& cfg, const Lattice& lat, Sink& csv_sink, std::ostream& out) {
  const std::string s = "poisson";
  cfg.require_known(s, with_rule_keys({"radii", "kstar", "tolerance"}));
  const WeightRule rule = config_rule(cfg, s, "constant");
  if (rule.kind != RuleKind::constant) throw ConfigError("field 'poisson.rule' must be constant");
  const auto radii = config_radii(cfg, s + ".radii", {50.0, 100.0, 200.0});
  std::vector<LatticeVector> kstars = default_kstars(lat.dim());
  if (const auto text = cfg.text(s + ".kstar")) kstars = parse_int_tuples(*text, "field 'poisson.kstar'");
  const double tol = positive(cfg, s + ".tolerance", 0.02);
  const double target = std::norm(rule.value) * lat.density() * lat.density();

  CsvWriter csv(csv_sink.stream(), schema("verify-poisson"), lat.dim());
  double worst = 0.0;
  out << "poisson: " << rule.describe() << ", target |w|^2 dens^2 = " << format_double(target) << '\n';
  out << "  kstar      radius                   amplitude                relative error\n";
  for (const auto& d : kstars) {
    if (d.dim != lat.dim()) throw ConfigError("field 'poisson.kstar': " + d.to_string() + " has the wrong dimension");
    const BraggEntry e = bragg_amplitude(rule, lat, d, radii);
    for (const auto& sample : e.ladder) {
      const double rel = std::abs(sample.amplitude - target) / target;
      auto row = coord_cells(d);
      row.push_back(format_double(sample.radius));
      row.push_back(format_double(sample.amplitude));
      row.push_back(format_double(rel));
      csv.row(row);
      out << "  " << pad(d.to_string(), 11) << pad(format_double(sample.radius)) << pad(format_double(sample.amplitude))
          << format_double(rel) << '\n';
    }
    worst = std::max(worst, std::abs(e.extrapolated - target) / target);
  }
  return report(out, s, {worst, tol, "max relative error at the largest radius"});
}

}  // namespace

int verify(const VerifyOptions& o, std::ostream& out) {
  Config cfg;
  std::filesystem::path dir = ".";
  if (!o.config_file.empty()) {
    cfg = Config::load(o.config_file);
    dir = std::filesystem::path(o.config_file).parent_path();
  }
  for (const auto& assignment : o.overrides) cfg.set(assignment);
  const Lattice lat = config_lattice(cfg, dir);

  std::ostringstream discard;
  Sink sink(o.out, discard);
  int status = kSuccess;
  if (o.suite == "periodicity") {
    status = run_periodicity(cfg, lat, sink, out);
  } else if (o.suite == "complement") {
    status = run_complement(cfg, lat, sink, out);
  } else if (o.suite == "homometry") {
    status = run_homometry(cfg, lat, sink, out);
  } else if (o.suite == "poisson") {
    status = run_poisson(cfg, lat, sink, out);
  } else {
    throw ConfigError("unknown suite '" + o.suite + "' (periodicity, complement, homometry, poisson)");
  }
  sink.close();
  return status;
}

}  // namespace difflat::cli
