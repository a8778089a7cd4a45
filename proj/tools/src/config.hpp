#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "difflat/types.hpp"

namespace difflat::cli {

// INI-style run configuration: one [section] per task plus a shared
// [lattice] section. Values set with `section.key=value` overrides replace
// file values.
class Config {
 public:
  Config() = default;

  static Config load(const std::filesystem::path& path);

  void set(const std::string& assignment);

  bool has(const std::string& key) const;
  std::optional<std::string> text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;

  // Throws ConfigError naming the first key in `section` outside `allowed`.
  void require_known(const std::string& section, const std::set<std::string>& allowed) const;

 private:
  boost::property_tree::ptree tree_;
  std::string source_ = "<defaults>";
};

// Comma- or whitespace-separated lists.
std::vector<double> parse_real_list(const std::string& text, const std::string& what);
LatticeVector parse_int_tuple(const std::string& text, const std::string& what);
// Semicolon-separated integer tuples: "1,0; 2,-1".
std::vector<LatticeVector> parse_int_tuples(const std::string& text, const std::string& what);

}  // namespace difflat::cli
