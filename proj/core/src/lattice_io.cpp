#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "difflat/error.hpp"
#include "difflat/format.hpp"
#include "difflat/lattice.hpp"

namespace difflat {

Matrix basis_from_row_major(std::span<const double> values) {
  int n = 0;
  switch (values.size()) {
    case 1: n = 1; break;
    case 4: n = 2; break;
    case 9: n = 3; break;
    default:
      throw InvalidArgument("basis needs 1, 4 or 9 row-major entries, got " + std::to_string(values.size()));
  }
  Matrix basis(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) basis(i, j) = values[static_cast<std::size_t>(i * n + j)];
  }
  return basis;
}

void write_lattice(std::ostream& os, const Lattice& lat) {
  const int n = lat.dim();
  os << "dim " << n << '\n' << "basis";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) os << ' ' << format_double(lat.basis()(i, j));
  }
  os << '\n';
}

Lattice read_lattice(std::istream& is, const std::string& source_name) {
  int dim = 0;
  std::size_t dim_line = 0;
  std::vector<double> values;
  std::size_t basis_line = 0;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = split_whitespace(line);
    std::string_view key = tokens.front();
    if (key.back() == ':' || key.back() == '=') key.remove_suffix(1);
    std::size_t first = 1;
    if (tokens.size() > 1 && (tokens[1] == "=" || tokens[1] == ":")) first = 2;

    if (key == "dim") {
      long long v = 0;
      if (tokens.size() != first + 1 || !parse_int64(tokens[first], v) || v < 1 || v > kMaxDim) {
        throw MalformedLatticeFile(source_name, line_no, "'dim' must be a single integer in 1..3");
      }
      dim = static_cast<int>(v);
      dim_line = line_no;
    } else if (key == "basis") {
      values.clear();
      for (std::size_t i = first; i < tokens.size(); ++i) {
        double v = 0.0;
        if (!parse_double(tokens[i], v)) {
          throw MalformedLatticeFile(source_name, line_no, "cannot parse basis entry '" + std::string(tokens[i]) + "'");
        }
        values.push_back(v);
      }
      basis_line = line_no;
    } else {
      throw MalformedLatticeFile(source_name, line_no, "unknown field '" + std::string(key) + "'");
    }
  }
  if (dim_line == 0) throw MalformedLatticeFile(source_name, line_no, "missing 'dim' field");
  if (basis_line == 0) throw MalformedLatticeFile(source_name, line_no, "missing 'basis' field");
  if (values.size() != static_cast<std::size_t>(dim * dim)) {
    throw MalformedLatticeFile(source_name, basis_line,
                               "'basis' needs " + std::to_string(dim * dim) + " entries for dim " +
                                   std::to_string(dim) + ", got " + std::to_string(values.size()));
  }
  try {
    return Lattice(basis_from_row_major(values));
  } catch (const Error& e) {
    throw MalformedLatticeFile(source_name, basis_line, e.what());
  }
}

void save_lattice(const std::filesystem::path& path, const Lattice& lat) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  write_lattice(os, lat);
}

Lattice load_lattice(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw MalformedLatticeFile(path.string(), 0, "cannot open file");
  return read_lattice(is, path.string());
}

}  // namespace difflat
