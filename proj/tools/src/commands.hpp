#pragma once

#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "difflat/comb.hpp"
#include "difflat/lattice.hpp"

namespace difflat::cli {

struct LatticeSource {
  std::string basis_file;
  std::string preset;
};

struct RuleSource {
  std::string name;
  std::vector<std::string> params;  // key=value
};

Lattice preset_lattice(const std::string& name);
Lattice resolve_lattice(const LatticeSource& src);
WeightRule resolve_rule(const RuleSource& src);

// Output stream: the named file, or `fallback` when no path is given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback);
  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }
  bool to_file() const { return !path_.empty(); }
  void close();

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ofstream file_;
};

struct LatticeInfoOptions {
  LatticeSource lattice;
  int covering_grid = 32;
};

struct CombGenOptions {
  LatticeSource lattice;
  RuleSource rule;
  double radius = 0.0;
  std::string out;
};

struct AutocorrOptions {
  std::string comb_file;
  double z_max = 0.0;
  std::string variant = "pair";
  std::optional<double> window;
  // scan mode
  LatticeSource lattice;
  RuleSource rule;
  std::string z;
  std::string radii;
  std::string out;
};

struct DiffractOptions {
  std::string comb_file;
  int grid = 64;
  std::string domain = "voronoi";
  std::optional<double> sigma;
  std::string out;
};

struct BraggOptions {
  LatticeSource lattice;
  RuleSource rule;
  std::vector<std::string> kstar;
  std::string radii;
  std::string out;
};

struct VerifyOptions {
  std::string suite;
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out;
};

int lattice_info(const LatticeInfoOptions& o, std::ostream& out);
int comb_gen(const CombGenOptions& o, std::ostream& out);
int autocorr(const AutocorrOptions& o, std::ostream& out);
int diffract(const DiffractOptions& o, std::ostream& out);
int bragg(const BraggOptions& o, std::ostream& out);
int verify(const VerifyOptions& o, std::ostream& out);

std::string join_coords(const LatticeVector& v);
std::vector<std::string> coord_cells(const LatticeVector& v);
std::vector<std::string> real_cells(const Vector& v);

}  // namespace difflat::cli
