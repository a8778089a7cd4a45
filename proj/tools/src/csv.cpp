#include "csv.hpp"

#include <ostream>
#include <stdexcept>

namespace difflat::cli {

std::vector<std::string> Schema::header(int dim) const {
  std::vector<std::string> out;
  for (const auto& c : columns) {
    if (!c.per_axis) {
      out.push_back(c.name);
      continue;
    }
    for (int j = 1; j <= dim; ++j) out.push_back(c.name + std::to_string(j));
  }
  return out;
}

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> all{
      {"autocorr", 1,
       {{"z", true, "int", "lattice coordinates of the difference vector"},
        {"re", false, "float", "real part of the autocorrelation coefficient"},
        {"im", false, "float", "imaginary part of the autocorrelation coefficient"}}},
      {"autocorr-scan", 1,
       {{"r", false, "float", "cutoff radius"},
        {"re", false, "float", "real part of the coefficient at the fixed difference vector"},
        {"im", false, "float", "imaginary part"}}},
      {"diffract", 1,
       {{"k", true, "float", "Cartesian wave vector reduced into the dual fundamental domain"},
        {"intensity", false, "float", "|S_r(k)|^2 / vol(B_r), times the profile factor when --sigma is set"},
        {"bragg_flag", false, "0|1", "1 when k lies within 1/r of a dual-lattice point"}}},
      {"bragg", 1,
       {{"kstar", true, "int", "dual-basis coordinates of the Bragg point"},
        {"radius", false, "float", "cutoff radius"},
        {"amplitude", false, "float", "|S_r(k*) / vol(B_r)|^2"}}},
      {"verify-periodicity", 1,
       {{"sample", false, "int", "index of the random wave vector"},
        {"shift", false, "int", "index of the dual-lattice shift"},
        {"k", true, "float", "Cartesian wave vector"},
        {"u", true, "int", "dual-basis coordinates of the shift"},
        {"intensity", false, "float", "D_r(k)"},
        {"residual", false, "float", "|D_r(k+u) - D_r(k)| / (1 + D_r(k))"}}},
      {"verify-complement", 1,
       {{"radius", false, "float", "cutoff radius"},
        {"z", true, "int", "lattice coordinates of the difference vector"},
        {"residual", false, "float", "|(nu_S'(z) - dens S') - (nu_S(z) - dens S)|"},
        {"scaled_residual", false, "float", "residual times radius"}}},
      {"verify-homometry", 1,
       {{"radius", false, "float", "cutoff radius"},
        {"max_residual", false, "float", "max over |z| <= zmax of |nu_S(z) - nu_S'(z)|"}}},
      {"verify-poisson", 1,
       {{"kstar", true, "int", "dual-basis coordinates of the Bragg point"},
        {"radius", false, "float", "cutoff radius"},
        {"amplitude", false, "float", "|S_r(k*) / vol(B_r)|^2"},
        {"relative_error", false, "float", "|amplitude - |w|^2 dens^2| / (|w|^2 dens^2)"}}},
  };
  return all;
}

const Schema& schema(const std::string& name) {
  for (const auto& s : schemas()) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("no CSV schema named " + name);
}

void print_schema(std::ostream& os, const Schema& s) {
  os << "schema " << s.tag() << '\n';
  for (const auto& c : s.columns) {
    const std::string name = c.per_axis ? c.name + "1.." + c.name + "n" : c.name;
    os << "  " << name << std::string(name.size() < 18 ? 18 - name.size() : 1, ' ') << c.type
       << std::string(c.type.size() < 8 ? 8 - c.type.size() : 1, ' ') << c.description << '\n';
  }
}

CsvWriter::CsvWriter(std::ostream& os, const Schema& s, int dim) : os_(os) {
  const auto cols = s.header(dim);
  width_ = cols.size();
  os_ << "# schema: " << s.tag() << '\n';
  for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
  os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("CSV row width does not match the schema");
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
  os_ << '\n';
}

}  // namespace difflat::cli
