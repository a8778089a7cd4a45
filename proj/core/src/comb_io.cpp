#include <fstream>
#include <ostream>
#include <string>

#include "difflat/comb.hpp"
#include "difflat/error.hpp"
#include "difflat/format.hpp"

namespace difflat {

void write_comb(std::ostream& os, const WeightedComb& comb) {
  const Lattice& lat = comb.lattice();
  const int n = lat.dim();
  os << "#dim " << n << '\n' << "#basis";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) os << ' ' << format_double(lat.basis()(i, j));
  }
  os << '\n' << "#radius " << format_double(comb.cutoff_radius()) << '\n';
  if (const auto& prov = comb.provenance()) os << "#rng " << prov->name << " #seed " << prov->seed << '\n';

  const auto points = comb.points();
  const auto weights = comb.weights();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] == Complex{}) continue;
    for (int j = 0; j < n; ++j) os << points[i][j] << ' ';
    os << ' ' << format_double(weights[i].real()) << ' ' << format_double(weights[i].imag()) << '\n';
  }
}

WeightedComb read_comb(std::istream& is, const std::string& source_name) {
  int dim = 0;
  std::vector<double> basis_values;
  double radius = 0.0;
  bool have_radius = false;
  std::optional<RngProvenance> provenance;
  std::map<LatticeVector, Complex> entries;
  std::map<LatticeVector, std::size_t> entry_lines;

  auto fail = [&](std::size_t line, const std::string& what) -> MalformedCombFile {
    return MalformedCombFile(source_name, line, what);
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    auto tokens = split_whitespace(line);
    if (line.front() == '#') {
      if (!entries.empty()) throw fail(line_no, "header line after data lines");
      const std::string_view key = tokens.front();
      if (key == "#dim") {
        long long v = 0;
        if (tokens.size() != 2 || !parse_int64(tokens[1], v) || v < 1 || v > kMaxDim) {
          throw fail(line_no, "'#dim' must be a single integer in 1..3");
        }
        dim = static_cast<int>(v);
      } else if (key == "#basis") {
        basis_values.clear();
        for (std::size_t i = 1; i < tokens.size(); ++i) {
          double v = 0.0;
          if (!parse_double(tokens[i], v)) throw fail(line_no, "cannot parse basis entry '" + std::string(tokens[i]) + "'");
          basis_values.push_back(v);
        }
      } else if (key == "#radius") {
        if (tokens.size() != 2 || !parse_double(tokens[1], radius) || !(radius > 0.0)) {
          throw fail(line_no, "'#radius' must be a single positive number");
        }
        have_radius = true;
      } else if (key == "#rng") {
        long long seed = 0;
        if (tokens.size() != 4 || tokens[2] != "#seed" || !parse_int64(tokens[3], seed) || seed < 0) {
          throw fail(line_no, "expected '#rng <name> #seed <non-negative integer>'");
        }
        provenance = RngProvenance{std::string(tokens[1]), static_cast<std::uint64_t>(seed)};
      }
      // other '#' lines are comments
      continue;
    }
    if (dim == 0 || basis_values.empty() || !have_radius) {
      throw fail(line_no, "data line before the '#dim', '#basis' and '#radius' headers");
    }
    if (tokens.size() != static_cast<std::size_t>(dim) + 2) {
      throw fail(line_no, "expected " + std::to_string(dim) + " integer coordinates followed by re and im");
    }
    LatticeVector t(dim);
    for (int j = 0; j < dim; ++j) {
      long long v = 0;
      if (!parse_int64(tokens[static_cast<std::size_t>(j)], v)) {
        throw fail(line_no, "cannot parse coordinate '" + std::string(tokens[static_cast<std::size_t>(j)]) + "'");
      }
      t[j] = v;
    }
    double re = 0.0, im = 0.0;
    if (!parse_double(tokens[static_cast<std::size_t>(dim)], re) ||
        !parse_double(tokens[static_cast<std::size_t>(dim) + 1], im)) {
      throw fail(line_no, "cannot parse weight");
    }
    if (!entries.emplace(t, Complex{re, im}).second) throw fail(line_no, "duplicate lattice vector " + t.to_string());
    entry_lines.emplace(t, line_no);
  }

  if (dim == 0) throw fail(0, "missing '#dim' header");
  if (basis_values.size() != static_cast<std::size_t>(dim * dim)) {
    throw fail(0, "'#basis' needs " + std::to_string(dim * dim) + " entries");
  }
  if (!have_radius) throw fail(0, "missing '#radius' header");

  std::optional<Lattice> lattice;
  try {
    lattice.emplace(basis_from_row_major(basis_values));
  } catch (const Error& e) {
    throw fail(0, e.what());
  }
  WeightedComb zero(*lattice, radius);
  for (const auto& [t, w] : entries) {
    if (zero.index_of(t) < 0) throw fail(entry_lines[t], "lattice vector " + t.to_string() + " lies outside the cutoff ball");
  }
  return WeightedComb::from_entries(*lattice, radius, entries, provenance);
}

void save_comb(const std::filesystem::path& path, const WeightedComb& comb) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_comb(os, comb);
}

WeightedComb load_comb(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw MalformedCombFile(path.string(), 0, "cannot open file");
  return read_comb(is, path.string());
}

}  // namespace difflat
