#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "difflat/types.hpp"

namespace difflat {

inline constexpr std::uint64_t kDefaultBallCap = 100'000'000;

/// A lattice in R^n (n <= 3), stored by its basis matrix whose columns are the
/// generating vectors in Cartesian units. Immutable after construction; the
/// determinant, inverse and packing radius are cached.
class Lattice {
 public:
  /// Throws SingularBasis when |det| < 1e-12 * (max column norm)^n and
  /// InvalidArgument for non-square, empty, oversized or non-finite input.
  explicit Lattice(const Matrix& basis);

  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& inverse() const { return inverse_; }
  double det_abs() const { return det_abs_; }
  double density() const { return 1.0 / det_abs_; }

  /// Half the length of the shortest nonzero lattice vector.
  double packing_radius() const { return packing_radius_; }
  const LatticeVector& shortest_vector() const { return shortest_; }

  Vector cartesian(const LatticeVector& v) const;
  /// Real coordinates of a Cartesian point in the lattice basis.
  Vector coordinates(const Vector& x) const;

  /// Lattice with basis (B^T)^{-1}: pairs integrally with this one.
  Lattice dual() const;

  /// Euclidean norm of each row of B^{-1}; |m_j| <= |x| * row_norm_j for x = B m.
  const Vector& inverse_row_norms() const { return inverse_row_norms_; }

 private:
  Matrix basis_;
  Matrix inverse_;
  Vector inverse_row_norms_;
  double det_abs_ = 0.0;
  double packing_radius_ = 0.0;
  LatticeVector shortest_;
};

Lattice make_lattice(const Matrix& basis);

/// Volume of the n-ball of radius r.
double ball_volume(int dim, double r);

/// Lattice vectors strictly inside the open ball B_r(center), in
/// lexicographic order of their coordinates. Throws BallTooLarge when the
/// predicted count density * vol(B_r) exceeds `max_points`.
std::vector<LatticeVector> enumerate_ball(const Lattice& lat, double r, const Vector& center,
                                          std::uint64_t max_points = kDefaultBallCap);
std::vector<LatticeVector> enumerate_ball(const Lattice& lat, double r);

struct ShellResidual {
  double radius;
  std::uint64_t count;
  double residual;  // | |Gamma_r| / vol(B_r) - dens |
};

std::vector<ShellResidual> shell_count_check(const Lattice& lat, std::span<const double> radii);

enum class DomainMode { parallelepiped, voronoi };

std::string to_string(DomainMode mode);
DomainMode parse_domain_mode(std::string_view name);

/// A fundamental domain for the translation action of `lattice`. Reduction
/// picks exactly one representative per orbit x + lattice.
struct FundamentalDomain {
  DomainMode mode = DomainMode::parallelepiped;
  Lattice lattice;

  Vector reduce(const Vector& x) const;
};

/// Nearest lattice vector to x. The search covers basis-coordinate offsets in
/// {-2..2}^n around the rounded coordinates; among equidistant candidates the
/// lexicographically smallest coordinates win.
LatticeVector closest_vector(const Lattice& lat, const Vector& x);

Vector reduce_to_fundamental_domain(const FundamentalDomain& domain, const Vector& x);

/// Deep-hole search on a grid_density^n grid over one basis cell. Converges to
/// the covering radius from below as the grid is refined.
double covering_radius_estimate(const Lattice& lat, int grid_density);

// Text record: `dim <n>` and `basis <n*n row-major values>`, '#' comments.
void write_lattice(std::ostream& os, const Lattice& lat);
Lattice read_lattice(std::istream& is, const std::string& source_name);
void save_lattice(const std::filesystem::path& path, const Lattice& lat);
Lattice load_lattice(const std::filesystem::path& path);

/// Row-major flat values -> square basis matrix (n inferred from 1, 4 or 9 entries).
Matrix basis_from_row_major(std::span<const double> values);

}  // namespace difflat
