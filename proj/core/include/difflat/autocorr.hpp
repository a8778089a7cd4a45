#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "difflat/comb.hpp"
#include "difflat/lattice.hpp"
#include "difflat/types.hpp"

namespace difflat {

/// The two finite-radius summation variants for the coefficient nu_r(z).
///
/// pair_in_window sums w(t) conj(w(t')) over t, t' both in the window with
/// t - t' = z; this is exactly (omega_r * omega_r~)/vol and therefore
/// positive definite at every radius. single_window sums w(t) conj(w(t - z))
/// over t in the window only, reading w(t - z) from the comb table (0 outside
/// the cutoff ball).
enum class Variant { pair_in_window, single_window };

std::string to_string(Variant v);
Variant parse_variant(std::string_view name);

struct AutocorrEntry {
  LatticeVector z;
  Complex value;
};

struct AutocorrTable {
  double radius = 0.0;
  Variant variant = Variant::pair_in_window;
  std::vector<AutocorrEntry> entries;  // lexicographic in z

  std::optional<Complex> at(const LatticeVector& z) const;
  /// nu_r(0); throws InvalidArgument if the table lacks z = 0.
  double at_origin() const;
};

/// nu_r(z) with the summation window B_window (window <= cutoff radius).
Complex autocorr_coefficient(const WeightedComb& comb, const LatticeVector& z, Variant variant, double window);
Complex autocorr_coefficient(const WeightedComb& comb, const LatticeVector& z, Variant variant = Variant::pair_in_window);

/// Table of nu_r(z) for every lattice vector with |z| <= z_max. The window
/// defaults to the comb's cutoff radius. pair_in_window tables satisfy
/// nu(-z) = conj(nu(z)) bit-exactly.
AutocorrTable autocorrelation(const WeightedComb& comb, double z_max, Variant variant = Variant::pair_in_window,
                              std::optional<double> window = std::nullopt);

struct GapSample {
  double radius;
  double gap;  // |nu_pair - nu_single|
};

/// Variant gap over a ladder of window radii, each no larger than the comb cutoff.
std::vector<GapSample> variant_gap(const WeightedComb& comb, const LatticeVector& z, std::span<const double> radii);

struct ScanSample {
  double radius;
  Complex value;
};

/// Regenerates the comb at every radius and reports the pair_in_window nu_r(z).
std::vector<ScanSample> convergence_scan(const WeightRule& rule, const Lattice& lat, const LatticeVector& z,
                                         std::span<const double> radii);

/// Smallest eigenvalue of the Hermitian Gram matrix [nu(z_i - z_j)] built from
/// a table. Throws InvalidArgument if a difference is missing from the table.
double min_gram_eigenvalue(const AutocorrTable& table, std::span<const LatticeVector> selection);

/// Radial bump c(x) = c0 * phi(x / eps), phi(y) = exp(|y|^2 / (|y|^2 - 1)) on
/// the open unit ball and 0 outside. c0 is fixed so that the midpoint-rule
/// value of ||c||_2^2 on the support box is exactly 1.
class BumpFunction {
 public:
  BumpFunction(int dim, double epsilon, int quadrature_points = 64);

  int dim() const { return dim_; }
  double epsilon() const { return epsilon_; }
  double c0() const { return c0_; }
  int quadrature_points() const { return quadrature_points_; }

  double operator()(const Vector& x) const;

  /// (c * c~)(y) = integral of c(x) c(x - y) dx, tensor-product midpoint rule.
  double self_convolution(const Vector& y) const;

  /// Quadrature values of ||c||_2^2 and ||c||_1.
  double l2_norm_squared() const;
  double l1_norm() const;

  /// sup |grad c| from dense radial sampling of the closed-form derivative.
  double lipschitz_constant() const;

 private:
  double profile(double rho) const;  // phi at radius rho (in units of eps)

  int dim_;
  double epsilon_;
  int quadrature_points_;
  double c0_ = 1.0;
  double cell_volume_ = 0.0;
  std::vector<Vector> nodes_;   // midpoints inside the open support ball
  std::vector<double> values_;  // c at those nodes
};

/// Default support radius: a quarter of the packing radius.
BumpFunction make_bump(const Lattice& lat, std::optional<double> epsilon = std::nullopt, int quadrature_points = 64);

/// g_r(x) = ((c * c~) * (omega_r * omega_r~))(x) / vol(B_r). Only the lattice
/// vector nearest to x can contribute because eps <= packing radius / 2.
/// Throws EpsilonTooLarge otherwise.
Complex regularized_autocorr(const WeightedComb& comb, const BumpFunction& bump, const Vector& x);

}  // namespace difflat
