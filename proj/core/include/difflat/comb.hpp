#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "difflat/lattice.hpp"
#include "difflat/types.hpp"

namespace difflat {

enum class RuleKind { constant, indicator_checkerboard, visible_points, k_free_integers, bernoulli, custom_table };

std::string to_string(RuleKind kind);
RuleKind parse_rule_kind(std::string_view name);

/// Recipe for the weight function w : Gamma -> C. Only the fields relevant to
/// `kind` are read.
struct WeightRule {
  RuleKind kind = RuleKind::constant;
  Complex value{1.0, 0.0};
  int k = 2;
  double p = 0.5;
  std::uint64_t seed = 0;
  std::map<LatticeVector, Complex> table;

  static WeightRule constant(Complex v = {1.0, 0.0});
  static WeightRule checkerboard();
  static WeightRule visible_points();
  static WeightRule k_free(int k);
  static WeightRule bernoulli(double p, std::uint64_t seed);
  static WeightRule custom(std::map<LatticeVector, Complex> table);

  bool stochastic() const { return kind == RuleKind::bernoulli; }
  std::string describe() const;
};

/// Builds a rule from a name and `key=value` parameters (constant: re, im;
/// k_free_integers: k; bernoulli: p, seed). custom_table rules need a table
/// and cannot be built this way.
WeightRule make_rule(std::string_view name, const std::map<std::string, std::string>& params);

inline constexpr std::string_view kRngName = "splitmix64";

/// Uniform [0,1) variate attached to the lattice point t for a given seed.
/// Counter-based: the value depends only on (seed, t), never on draw order.
double point_uniform(std::uint64_t seed, const LatticeVector& t);

struct RngProvenance {
  std::string name;
  std::uint64_t seed = 0;
  bool operator==(const RngProvenance&) const = default;
};

/// Weighted Dirac comb on a lattice, tabulated on every lattice point of the
/// open cutoff ball. Points outside the ball carry weight 0. Immutable; the
/// support (point list and lookup box) is shared between combs derived from
/// one another.
class WeightedComb {
 public:
  using WeightFn = std::function<Complex(const LatticeVector&)>;

  WeightedComb(Lattice lattice, double cutoff_radius);
  WeightedComb(Lattice lattice, double cutoff_radius, const WeightFn& weight,
               std::optional<RngProvenance> provenance = std::nullopt);

  /// Sparse construction; throws InvalidArgument for keys outside the ball.
  static WeightedComb from_entries(Lattice lattice, double cutoff_radius,
                                   const std::map<LatticeVector, Complex>& entries,
                                   std::optional<RngProvenance> provenance = std::nullopt);

  /// Same support, new weights (one per point, in point order).
  WeightedComb with_weights(std::vector<Complex> weights) const;

  const Lattice& lattice() const { return support_->lattice; }
  int dim() const { return support_->lattice.dim(); }
  double cutoff_radius() const { return support_->radius; }
  std::size_t size() const { return support_->points.size(); }

  std::span<const LatticeVector> points() const { return support_->points; }
  std::span<const double> squared_norms() const { return support_->norms2; }
  std::span<const Complex> weights() const { return weights_; }

  /// Position of t in points(), or -1 when t lies outside the cutoff ball.
  std::ptrdiff_t index_of(const LatticeVector& t) const;
  Complex weight(const LatticeVector& t) const;

  double weight_bound() const { return weight_bound_; }
  std::size_t nonzero_count() const;
  bool is_indicator(double tol = 1e-12) const;

  const std::optional<RngProvenance>& provenance() const { return provenance_; }

  /// Smallest and largest coordinate along `axis` over the support.
  std::int64_t coord_min(int axis) const { return support_->lo[static_cast<std::size_t>(axis)]; }
  std::int64_t coord_max(int axis) const {
    return support_->lo[static_cast<std::size_t>(axis)] + support_->extent[static_cast<std::size_t>(axis)] - 1;
  }

  friend bool operator==(const WeightedComb& a, const WeightedComb& b);

 private:
  struct Support {
    Lattice lattice;
    double radius;
    std::vector<LatticeVector> points;
    std::vector<double> norms2;
    std::array<std::int64_t, kMaxDim> lo{};
    std::array<std::int64_t, kMaxDim> extent{};
    std::vector<std::int32_t> slot;  // dense box -> point index, -1 if outside ball
  };

  WeightedComb(std::shared_ptr<const Support> support, std::vector<Complex> weights,
               std::optional<RngProvenance> provenance);
  static std::shared_ptr<const Support> make_support(Lattice lattice, double radius);
  void refresh_bound();

  std::shared_ptr<const Support> support_;
  std::vector<Complex> weights_;
  double weight_bound_ = 0.0;
  std::optional<RngProvenance> provenance_;
};

/// Tabulates rule on Gamma_r. Throws RuleDimensionMismatch for k_free on
/// n != 1 and visible_points on n < 2.
WeightedComb generate(const WeightRule& rule, const Lattice& lat, double r);

/// w' = 1 - w on every tabulated point; throws NotAnIndicatorComb unless all
/// weights are 0 or 1 within 1e-12.
WeightedComb complement(const WeightedComb& comb);

/// The same comb restricted to the smaller open ball B_r, r <= cutoff.
WeightedComb restrict_to_ball(const WeightedComb& comb, double r);

/// Sum of weights over the ball volume.
Complex empirical_density(const WeightedComb& comb);

void write_comb(std::ostream& os, const WeightedComb& comb);
WeightedComb read_comb(std::istream& is, const std::string& source_name);
void save_comb(const std::filesystem::path& path, const WeightedComb& comb);
WeightedComb load_comb(const std::filesystem::path& path);

}  // namespace difflat
