#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>

#include "cli.hpp"
#include "difflat/format.hpp"

namespace difflat::cli {

namespace pt = boost::property_tree;

Config Config::load(const std::filesystem::path& path) {
  Config c;
  c.source_ = path.string();
  try {
    pt::read_ini(path.string(), c.tree_);
  } catch (const pt::ini_parser_error& e) {
    if (e.line() == 0) throw ConfigError(path.string() + ": " + e.message());
    throw ConfigError(path.string() + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return c;
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  const std::string key{trim(std::string_view(assignment).substr(0, eq))};
  const std::string value{trim(std::string_view(assignment).substr(eq + 1))};
  if (key.find('.') == std::string::npos || key.front() == '.' || key.back() == '.') {
    throw ConfigError("override key '" + key + "' must be section.key");
  }
  tree_.put(pt::ptree::path_type(key, '.'), value);
}

bool Config::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

std::optional<std::string> Config::text(const std::string& key) const {
  auto v = tree_.get_optional<std::string>(key);
  if (!v) return std::nullopt;
  return std::string(trim(*v));
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  return text(key).value_or(fallback);
}

double Config::real(const std::string& key, double fallback) const {
  const auto v = text(key);
  if (!v) return fallback;
  double out = 0.0;
  if (!parse_double(*v, out)) throw ConfigError(source_ + ": field '" + key + "' is not a number: '" + *v + "'");
  return out;
}

long long Config::integer(const std::string& key, long long fallback) const {
  const auto v = text(key);
  if (!v) return fallback;
  long long out = 0;
  if (!parse_int64(*v, out)) throw ConfigError(source_ + ": field '" + key + "' is not an integer: '" + *v + "'");
  return out;
}

std::vector<double> Config::reals(const std::string& key, const std::vector<double>& fallback) const {
  const auto v = text(key);
  if (!v) return fallback;
  return parse_real_list(*v, source_ + ": field '" + key + "'");
}

void Config::require_known(const std::string& section, const std::set<std::string>& allowed) const {
  const auto child = tree_.get_child_optional(section);
  if (!child) return;
  for (const auto& [key, value] : *child) {
    if (!allowed.contains(key)) throw ConfigError(source_ + ": unknown field '" + section + "." + key + "'");
  }
}

namespace {

std::vector<std::string> tokens(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ' ';
  }
  std::vector<std::string> out;
  for (auto tok : split_whitespace(text)) out.emplace_back(tok);
  return out;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (auto tok : tokens(text)) {
    double v = 0.0;
    if (!parse_double(tok, v)) throw ConfigError(what + ": '" + tok + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

LatticeVector parse_int_tuple(const std::string& text, const std::string& what) {
  const auto toks = tokens(text);
  if (toks.empty() || toks.size() > static_cast<std::size_t>(kMaxDim)) {
    throw ConfigError(what + ": expected 1 to 3 integers, got '" + text + "'");
  }
  LatticeVector v(static_cast<int>(toks.size()));
  for (std::size_t j = 0; j < toks.size(); ++j) {
    long long x = 0;
    if (!parse_int64(toks[j], x)) throw ConfigError(what + ": '" + toks[j] + "' is not an integer");
    v[static_cast<int>(j)] = x;
  }
  return v;
}

std::vector<LatticeVector> parse_int_tuples(const std::string& text, const std::string& what) {
  std::vector<LatticeVector> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const auto piece = trim(std::string_view(text).substr(start, end - start));
    if (!piece.empty()) out.push_back(parse_int_tuple(std::string(piece), what));
    start = end + 1;
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

}  // namespace difflat::cli
