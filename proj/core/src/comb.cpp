#include "difflat/comb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "difflat/error.hpp"
#include "difflat/format.hpp"

namespace difflat {

std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::constant: return "constant";
    case RuleKind::indicator_checkerboard: return "indicator_checkerboard";
    case RuleKind::visible_points: return "visible_points";
    case RuleKind::k_free_integers: return "k_free_integers";
    case RuleKind::bernoulli: return "bernoulli";
    case RuleKind::custom_table: return "custom_table";
  }
  return "unknown";
}

RuleKind parse_rule_kind(std::string_view name) {
  if (name == "constant" || name == "ones") return RuleKind::constant;
  if (name == "indicator_checkerboard" || name == "checkerboard") return RuleKind::indicator_checkerboard;
  if (name == "visible_points" || name == "visible") return RuleKind::visible_points;
  if (name == "k_free_integers" || name == "kfree" || name == "k_free") return RuleKind::k_free_integers;
  if (name == "bernoulli") return RuleKind::bernoulli;
  if (name == "custom_table" || name == "table") return RuleKind::custom_table;
  throw InvalidArgument("unknown weight rule '" + std::string(name) + "'");
}

WeightRule WeightRule::constant(Complex v) {
  WeightRule r;
  r.kind = RuleKind::constant;
  r.value = v;
  return r;
}

WeightRule WeightRule::checkerboard() {
  WeightRule r;
  r.kind = RuleKind::indicator_checkerboard;
  return r;
}

WeightRule WeightRule::visible_points() {
  WeightRule r;
  r.kind = RuleKind::visible_points;
  return r;
}

WeightRule WeightRule::k_free(int k) {
  if (k < 2) throw InvalidArgument("k_free_integers needs k >= 2");
  WeightRule r;
  r.kind = RuleKind::k_free_integers;
  r.k = k;
  return r;
}

WeightRule WeightRule::bernoulli(double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bernoulli probability must lie in [0,1]");
  WeightRule r;
  r.kind = RuleKind::bernoulli;
  r.p = p;
  r.seed = seed;
  return r;
}

WeightRule WeightRule::custom(std::map<LatticeVector, Complex> table) {
  WeightRule r;
  r.kind = RuleKind::custom_table;
  r.table = std::move(table);
  return r;
}

std::string WeightRule::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case RuleKind::constant: os << " re=" << format_double(value.real()) << " im=" << format_double(value.imag()); break;
    case RuleKind::k_free_integers: os << " k=" << k; break;
    case RuleKind::bernoulli: os << " p=" << format_double(p) << " seed=" << seed; break;
    case RuleKind::custom_table: os << " entries=" << table.size(); break;
    default: break;
  }
  return os.str();
}

WeightRule make_rule(std::string_view name, const std::map<std::string, std::string>& params) {
  const RuleKind kind = parse_rule_kind(name);
  auto get_double = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    double v = 0.0;
    if (!parse_double(it->second, v)) throw InvalidArgument("parameter " + key + "='" + it->second + "' is not a number");
    return v;
  };
  auto get_int = [&](const std::string& key, long long fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    long long v = 0;
    if (!parse_int64(it->second, v)) throw InvalidArgument("parameter " + key + "='" + it->second + "' is not an integer");
    return v;
  };
  std::vector<std::string> allowed;
  WeightRule rule;
  switch (kind) {
    case RuleKind::constant:
      allowed = {"re", "im", "value"};
      rule = WeightRule::constant({get_double("re", get_double("value", 1.0)), get_double("im", 0.0)});
      break;
    case RuleKind::indicator_checkerboard: rule = WeightRule::checkerboard(); break;
    case RuleKind::visible_points: rule = WeightRule::visible_points(); break;
    case RuleKind::k_free_integers:
      allowed = {"k"};
      rule = WeightRule::k_free(static_cast<int>(get_int("k", 2)));
      break;
    case RuleKind::bernoulli: {
      allowed = {"p", "seed"};
      const long long seed = get_int("seed", 0);
      if (seed < 0) throw InvalidArgument("bernoulli seed must be non-negative");
      rule = WeightRule::bernoulli(get_double("p", 0.5), static_cast<std::uint64_t>(seed));
      break;
    }
    case RuleKind::custom_table:
      throw InvalidArgument("custom_table rules are built from a weight table, not from parameters");
  }
  for (const auto& [key, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument("rule " + to_string(kind) + " does not take parameter '" + key + "'");
    }
  }
  return rule;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t gcd_of(const LatticeVector& t) {
  std::uint64_t g = 0;
  for (int i = 0; i < t.dim; ++i) g = std::gcd(g, static_cast<std::uint64_t>(t[i] < 0 ? -t[i] : t[i]));
  return g;
}

bool is_k_free(std::int64_t m, int k) {
  const std::uint64_t a = static_cast<std::uint64_t>(m < 0 ? -m : m);
  if (a == 0) return true;  // declared convention for the origin
  for (std::uint64_t d = 2;; ++d) {
    std::uint64_t power = 1;
    bool overflow = false;
    for (int i = 0; i < k; ++i) {
      if (power > a / d) {
        overflow = true;
        break;
      }
      power *= d;
    }
    if (overflow || power > a) return true;
    if (a % power == 0) return false;
  }
}

}  // namespace

double point_uniform(std::uint64_t seed, const LatticeVector& t) {
  std::uint64_t state = splitmix64(seed);
  for (int i = 0; i < t.dim; ++i) {
    state = splitmix64(state ^ (static_cast<std::uint64_t>(t[i]) + 0x632BE59BD9B4E019ULL * static_cast<std::uint64_t>(i + 1)));
  }
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

std::shared_ptr<const WeightedComb::Support> WeightedComb::make_support(Lattice lattice, double radius) {
  auto points = enumerate_ball(lattice, radius);
  const int n = lattice.dim();
  std::array<std::int64_t, kMaxDim> lo{}, extent{};
  for (int j = 0; j < kMaxDim; ++j) extent[j] = 1;
  if (!points.empty()) {
    for (int j = 0; j < n; ++j) {
      auto [mn, mx] = std::minmax_element(points.begin(), points.end(),
                                          [j](const LatticeVector& a, const LatticeVector& b) { return a[j] < b[j]; });
      lo[j] = (*mn)[j];
      extent[j] = (*mx)[j] - (*mn)[j] + 1;
    }
  }
  std::size_t cells = 1;
  for (int j = 0; j < n; ++j) cells *= static_cast<std::size_t>(extent[j]);
  if (points.size() > static_cast<std::size_t>(INT32_MAX)) throw BallTooLarge("comb support exceeds 2^31 points");

  std::vector<std::int32_t> slot(points.empty() ? 0 : cells, -1);
  std::vector<double> norms2(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::size_t lin = 0;
    for (int j = 0; j < n; ++j) lin = lin * static_cast<std::size_t>(extent[j]) + static_cast<std::size_t>(points[i][j] - lo[j]);
    slot[lin] = static_cast<std::int32_t>(i);
    norms2[i] = lattice.cartesian(points[i]).squaredNorm();
  }
  return std::make_shared<const Support>(
      Support{std::move(lattice), radius, std::move(points), std::move(norms2), lo, extent, std::move(slot)});
}

WeightedComb::WeightedComb(std::shared_ptr<const Support> support, std::vector<Complex> weights,
                           std::optional<RngProvenance> provenance)
    : support_(std::move(support)), weights_(std::move(weights)), provenance_(std::move(provenance)) {
  if (weights_.size() != support_->points.size()) throw InvalidArgument("weight count does not match comb support");
  refresh_bound();
}

WeightedComb::WeightedComb(Lattice lattice, double cutoff_radius)
    : support_(make_support(std::move(lattice), cutoff_radius)) {
  weights_.assign(support_->points.size(), Complex{});
}

WeightedComb::WeightedComb(Lattice lattice, double cutoff_radius, const WeightFn& weight,
                           std::optional<RngProvenance> provenance)
    : support_(make_support(std::move(lattice), cutoff_radius)), provenance_(std::move(provenance)) {
  weights_.reserve(support_->points.size());
  for (const auto& t : support_->points) {
    const Complex w = weight(t);
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw InvalidArgument("weight at " + t.to_string() + " is not finite");
    weights_.push_back(w);
  }
  refresh_bound();
}

WeightedComb WeightedComb::from_entries(Lattice lattice, double cutoff_radius,
                                        const std::map<LatticeVector, Complex>& entries,
                                        std::optional<RngProvenance> provenance) {
  WeightedComb comb(std::move(lattice), cutoff_radius);
  for (const auto& [t, w] : entries) {
    const auto idx = comb.index_of(t);
    if (idx < 0) throw InvalidArgument("lattice vector " + t.to_string() + " lies outside the cutoff ball");
    comb.weights_[static_cast<std::size_t>(idx)] = w;
  }
  comb.provenance_ = std::move(provenance);
  comb.refresh_bound();
  return comb;
}

WeightedComb WeightedComb::with_weights(std::vector<Complex> weights) const {
  return WeightedComb(support_, std::move(weights), provenance_);
}

void WeightedComb::refresh_bound() {
  weight_bound_ = 0.0;
  for (const auto& w : weights_) weight_bound_ = std::max(weight_bound_, std::abs(w));
}

std::ptrdiff_t WeightedComb::index_of(const LatticeVector& t) const {
  const Support& s = *support_;
  if (s.slot.empty()) return -1;
  const int n = s.lattice.dim();
  std::size_t lin = 0;
  for (int j = 0; j < n; ++j) {
    const std::int64_t off = t[j] - s.lo[static_cast<std::size_t>(j)];
    if (off < 0 || off >= s.extent[static_cast<std::size_t>(j)]) return -1;
    lin = lin * static_cast<std::size_t>(s.extent[static_cast<std::size_t>(j)]) + static_cast<std::size_t>(off);
  }
  return s.slot[lin];
}

Complex WeightedComb::weight(const LatticeVector& t) const {
  const auto idx = index_of(t);
  return idx < 0 ? Complex{} : weights_[static_cast<std::size_t>(idx)];
}

std::size_t WeightedComb::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](Complex w) { return w != Complex{}; }));
}

bool WeightedComb::is_indicator(double tol) const {
  return std::all_of(weights_.begin(), weights_.end(), [tol](Complex w) {
    return std::abs(w) <= tol || std::abs(w - Complex{1.0, 0.0}) <= tol;
  });
}

bool operator==(const WeightedComb& a, const WeightedComb& b) {
  return a.lattice().basis() == b.lattice().basis() && a.cutoff_radius() == b.cutoff_radius() &&
         a.weights_ == b.weights_ && a.provenance_ == b.provenance_;
}

WeightedComb generate(const WeightRule& rule, const Lattice& lat, double r) {
  const int n = lat.dim();
  switch (rule.kind) {
    case RuleKind::constant:
      return WeightedComb(lat, r, [v = rule.value](const LatticeVector&) { return v; });
    case RuleKind::indicator_checkerboard:
      return WeightedComb(lat, r, [](const LatticeVector& t) {
        std::int64_t sum = 0;
        for (int i = 0; i < t.dim; ++i) sum += t[i];
        return Complex{sum % 2 == 0 ? 1.0 : 0.0, 0.0};
      });
    case RuleKind::visible_points:
      if (n < 2) throw RuleDimensionMismatch("visible_points needs a lattice of dimension >= 2");
      return WeightedComb(lat, r, [](const LatticeVector& t) { return Complex{gcd_of(t) == 1 ? 1.0 : 0.0, 0.0}; });
    case RuleKind::k_free_integers:
      if (n != 1) throw RuleDimensionMismatch("k_free_integers needs a one-dimensional lattice");
      return WeightedComb(lat, r, [k = rule.k](const LatticeVector& t) { return Complex{is_k_free(t[0], k) ? 1.0 : 0.0, 0.0}; });
    case RuleKind::bernoulli:
      return WeightedComb(
          lat, r,
          [p = rule.p, seed = rule.seed](const LatticeVector& t) {
            return Complex{point_uniform(seed, t) < p ? 1.0 : 0.0, 0.0};
          },
          RngProvenance{std::string(kRngName), rule.seed});
    case RuleKind::custom_table:
      for (const auto& [t, w] : rule.table) {
        if (t.dim != n) throw RuleDimensionMismatch("custom table key " + t.to_string() + " has the wrong dimension");
      }
      return WeightedComb(lat, r, [&table = rule.table](const LatticeVector& t) {
        auto it = table.find(t);
        return it == table.end() ? Complex{} : it->second;
      });
  }
  throw InvalidArgument("unhandled weight rule");
}

WeightedComb complement(const WeightedComb& comb) {
  std::vector<Complex> flipped;
  flipped.reserve(comb.size());
  for (const auto& w : comb.weights()) {
    if (std::abs(w) <= 1e-12) {
      flipped.emplace_back(1.0, 0.0);
    } else if (std::abs(w - Complex{1.0, 0.0}) <= 1e-12) {
      flipped.emplace_back(0.0, 0.0);
    } else {
      throw NotAnIndicatorComb("complement needs weights in {0,1}; found " + format_double(w.real()) + "+" +
                               format_double(w.imag()) + "i");
    }
  }
  return comb.with_weights(std::move(flipped));
}

WeightedComb restrict_to_ball(const WeightedComb& comb, double r) {
  if (!(r > 0.0) || r > comb.cutoff_radius()) throw InvalidArgument("restriction radius must lie in (0, cutoff]");
  if (r == comb.cutoff_radius()) return comb;
  WeightedComb out(comb.lattice(), r, [&comb](const LatticeVector& t) { return comb.weight(t); }, comb.provenance());
  return out;
}

Complex empirical_density(const WeightedComb& comb) {
  Complex sum{};
  for (const auto& w : comb.weights()) sum += w;
  return sum / ball_volume(comb.dim(), comb.cutoff_radius());
}

}  // namespace difflat
