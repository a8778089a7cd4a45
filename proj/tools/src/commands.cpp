#include "commands.hpp"

#include <cmath>
#include <numbers>
#include <map>
#include <ostream>

#include "cli.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "difflat/autocorr.hpp"
#include "difflat/diffraction.hpp"
#include "difflat/format.hpp"

namespace difflat::cli {

Lattice preset_lattice(const std::string& name) {
  if (name == "integers") return Lattice(Matrix::Identity(1, 1));
  if (name == "square") return Lattice(Matrix::Identity(2, 2));
  if (name == "cubic") return Lattice(Matrix::Identity(3, 3));
  if (name == "rectangular") {
    Matrix b = Matrix::Identity(2, 2);
    b(0, 0) = 2.0;
    return Lattice(b);
  }
  if (name == "hexagonal") {
    Matrix b(2, 2);
    b << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
    return Lattice(b);
  }
  throw ConfigError("unknown lattice preset '" + name + "' (integers, square, rectangular, hexagonal, cubic)");
}

Lattice resolve_lattice(const LatticeSource& src) {
  if (!src.basis_file.empty() && !src.preset.empty()) throw ConfigError("give either --basis or --preset, not both");
  if (!src.basis_file.empty()) return load_lattice(src.basis_file);
  if (!src.preset.empty()) return preset_lattice(src.preset);
  throw ConfigError("a lattice is required (--basis <file> or --preset <name>)");
}

WeightRule resolve_rule(const RuleSource& src) {
  if (src.name.empty()) throw ConfigError("--rule is required");
  std::map<std::string, std::string> params;
  for (const auto& p : src.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param '" + p + "' is not of the form key=value");
    if (!params.emplace(p.substr(0, eq), p.substr(eq + 1)).second) {
      throw ConfigError("--param '" + p.substr(0, eq) + "' given twice");
    }
  }
  return make_rule(src.name, params);
}

Sink::Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
  if (path_.empty()) return;
  file_.open(path_);
  if (!file_) throw ConfigError("cannot open output file '" + path_ + "'");
}

void Sink::close() {
  if (path_.empty()) {
    fallback_.flush();
    return;
  }
  file_.close();
  if (!file_) throw Error("failed writing '" + path_ + "'");
}

std::string join_coords(const LatticeVector& v) {
  std::string s;
  for (int j = 0; j < v.dim; ++j) s += (j ? " " : "") + std::to_string(v[j]);
  return s;
}

std::vector<std::string> coord_cells(const LatticeVector& v) {
  std::vector<std::string> out;
  for (int j = 0; j < v.dim; ++j) out.push_back(std::to_string(v[j]));
  return out;
}

std::vector<std::string> real_cells(const Vector& v) {
  std::vector<std::string> out;
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back(format_double(v(j)));
  return out;
}

namespace {

std::string row_major(const Matrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (s.empty() ? "" : " ") + format_double(m(i, j));
  }
  return s;
}

template <class... Cells>
std::vector<std::string> concat(std::vector<std::string> head, const Cells&... rest) {
  (head.insert(head.end(), rest.begin(), rest.end()), ...);
  return head;
}

}  // namespace

int lattice_info(const LatticeInfoOptions& o, std::ostream& out) {
  const Lattice lat = resolve_lattice(o.lattice);
  if (o.covering_grid < 8) throw ConfigError("--covering-grid must be at least 8");
  out << "dim = " << lat.dim() << '\n'
      << "basis = " << row_major(lat.basis()) << '\n'
      << "det = " << format_double(lat.det_abs()) << '\n'
      << "density = " << format_double(lat.density()) << '\n'
      << "packing_radius = " << format_double(lat.packing_radius()) << '\n'
      << "shortest_vector = " << join_coords(lat.shortest_vector()) << '\n'
      << "dual_basis = " << row_major(lat.dual().basis()) << '\n'
      << "dual_density = " << format_double(lat.dual().density()) << '\n'
      << "covering_radius_estimate = " << format_double(covering_radius_estimate(lat, o.covering_grid)) << '\n'
      << "covering_grid = " << o.covering_grid << '\n';
  return kSuccess;
}

int comb_gen(const CombGenOptions& o, std::ostream& out) {
  const Lattice lat = resolve_lattice(o.lattice);
  const WeightRule rule = resolve_rule(o.rule);
  const WeightedComb comb = generate(rule, lat, o.radius);
  Sink sink(o.out, out);
  write_comb(sink.stream(), comb);
  sink.close();
  if (sink.to_file()) {
    out << "wrote " << comb.nonzero_count() << " of " << comb.size() << " points (" << rule.describe() << ", r = "
        << format_double(o.radius) << ") to " << o.out << '\n';
  }
  return kSuccess;
}

int autocorr(const AutocorrOptions& o, std::ostream& out) {
  const Variant variant = parse_variant(o.variant);
  const bool scan = !o.radii.empty() || !o.z.empty() || !o.rule.name.empty();
  if (scan && !o.comb_file.empty()) throw ConfigError("--comb cannot be combined with the scan options --rule/--z/--radii");
  if (scan) {
    if (o.z.empty() || o.radii.empty()) throw ConfigError("a convergence scan needs --rule, --z and --radii");
    const Lattice lat = resolve_lattice(o.lattice);
    const WeightRule rule = resolve_rule(o.rule);
    const LatticeVector z = parse_int_tuple(o.z, "--z");
    const auto radii = parse_real_list(o.radii, "--radii");
    if (variant != Variant::pair_in_window) throw ConfigError("convergence scans use the pair variant only");
    const auto samples = convergence_scan(rule, lat, z, radii);
    Sink sink(o.out, out);
    CsvWriter csv(sink.stream(), schema("autocorr-scan"), lat.dim());
    for (const auto& s : samples) {
      csv.row({format_double(s.radius), format_double(s.value.real()), format_double(s.value.imag())});
    }
    sink.close();
    return kSuccess;
  }
  if (o.comb_file.empty()) throw ConfigError("--comb <file> is required (or use --rule/--z/--radii for a scan)");
  const WeightedComb comb = load_comb(o.comb_file);
  const AutocorrTable table = autocorrelation(comb, o.z_max, variant, o.window);
  Sink sink(o.out, out);
  CsvWriter csv(sink.stream(), schema("autocorr"), comb.dim());
  for (const auto& e : table.entries) {
    csv.row(concat(coord_cells(e.z), std::vector<std::string>{format_double(e.value.real()), format_double(e.value.imag())}));
  }
  sink.close();
  return kSuccess;
}

int diffract(const DiffractOptions& o, std::ostream& out) {
  if (o.comb_file.empty()) throw ConfigError("--comb <file> is required");
  if (o.grid < 1) throw ConfigError("--grid must be positive");
  if (o.sigma && !(*o.sigma > 0.0)) throw ConfigError("--sigma must be positive");
  const DomainMode mode = parse_domain_mode(o.domain);
  const WeightedComb comb = load_comb(o.comb_file);
  const auto grid = fundamental_domain_grid(comb.lattice().dual(), o.grid, mode);
  const DiffractionGrid result = diffraction_grid(comb, grid, mode);
  Sink sink(o.out, out);
  CsvWriter csv(sink.stream(), schema("diffract"), comb.dim());
  for (const auto& s : result.samples) {
    const double value = o.sigma ? std::exp(-4.0 * std::numbers::pi * std::numbers::pi * *o.sigma * *o.sigma *
                                            s.k.squaredNorm()) * s.intensity
                                 : s.intensity;
    csv.row(concat(real_cells(s.k), std::vector<std::string>{format_double(value), s.bragg_adjacent ? "1" : "0"}));
  }
  sink.close();
  return kSuccess;
}

int bragg(const BraggOptions& o, std::ostream& out) {
  const Lattice lat = resolve_lattice(o.lattice);
  const WeightRule rule = resolve_rule(o.rule);
  if (o.kstar.empty()) throw ConfigError("at least one --kstar is required");
  if (o.radii.empty()) throw ConfigError("--radii is required");
  const auto radii = parse_real_list(o.radii, "--radii");
  std::vector<BraggEntry> entries;
  for (const auto& text : o.kstar) {
    const LatticeVector d = parse_int_tuple(text, "--kstar");
    if (d.dim != lat.dim()) throw ConfigError("--kstar '" + text + "' has the wrong dimension for the lattice");
    entries.push_back(bragg_amplitude(rule, lat, d, radii));
  }
  Sink sink(o.out, out);
  {
    CsvWriter csv(sink.stream(), schema("bragg"), lat.dim());
    for (const auto& e : entries) {
      for (const auto& s : e.ladder) {
        csv.row(concat(coord_cells(e.dual_coords), std::vector<std::string>{format_double(s.radius), format_double(s.amplitude)}));
      }
    }
  }
  sink.close();
  if (sink.to_file()) {
    for (const auto& e : entries) {
      out << "kstar = " << join_coords(e.dual_coords) << "  extrapolated = " << format_double(e.extrapolated)
          << "  trend = " << format_double(e.trend) << '\n';
    }
  }
  return kSuccess;
}

}  // namespace difflat::cli
