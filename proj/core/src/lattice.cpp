#include "difflat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "difflat/error.hpp"

namespace difflat {

namespace {

// Exhaustive shortest-vector search over the integer box that must contain
// every vector no longer than the shortest basis column.
LatticeVector find_shortest(const Matrix& basis, const Vector& row_norms) {
  const int n = static_cast<int>(basis.cols());
  double bound = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) bound = std::min(bound, basis.col(j).norm());

  std::array<std::int64_t, kMaxDim> extent{};
  for (int j = 0; j < n; ++j) {
    extent[j] = static_cast<std::int64_t>(std::ceil(bound * row_norms(j) + 1e-9));
  }

  LatticeVector best(n);
  double best_norm2 = std::numeric_limits<double>::infinity();
  LatticeVector m(n);
  for (int j = 0; j < n; ++j) m[j] = -extent[j];
  Vector x(n);
  while (true) {
    if (!m.is_zero()) {
      x.setZero();
      for (int j = 0; j < n; ++j) x += static_cast<double>(m[j]) * basis.col(j);
      const double norm2 = x.squaredNorm();
      if (norm2 < best_norm2) {
        best_norm2 = norm2;
        best = m;
      }
    }
    int axis = n - 1;
    while (axis >= 0 && m[axis] == extent[axis]) {
      m[axis] = -extent[axis];
      --axis;
    }
    if (axis < 0) break;
    ++m[axis];
  }
  return best;
}

}  // namespace

Lattice::Lattice(const Matrix& basis) {
  if (basis.rows() != basis.cols()) throw InvalidArgument("lattice basis must be square");
  const int n = static_cast<int>(basis.cols());
  if (n < 1 || n > kMaxDim) throw InvalidArgument("lattice dimension must be 1, 2 or 3");
  if (!basis.allFinite()) throw InvalidArgument("lattice basis has non-finite entries");

  double max_col = 0.0;
  for (int j = 0; j < n; ++j) max_col = std::max(max_col, basis.col(j).norm());
  const double det = basis.determinant();
  if (!(std::abs(det) >= 1e-12 * std::pow(max_col, n)) || max_col == 0.0) {
    throw SingularBasis("lattice basis is singular (|det| = " + std::to_string(std::abs(det)) + ")");
  }

  basis_ = basis;
  det_abs_ = std::abs(det);
  inverse_ = basis.inverse();
  inverse_row_norms_.resize(n);
  for (int i = 0; i < n; ++i) inverse_row_norms_(i) = inverse_.row(i).norm();
  shortest_ = find_shortest(basis_, inverse_row_norms_);
  packing_radius_ = 0.5 * cartesian(shortest_).norm();
}

Vector Lattice::cartesian(const LatticeVector& v) const {
  const int n = dim();
  Vector x = Vector::Zero(n);
  for (int j = 0; j < n; ++j) x += static_cast<double>(v[j]) * basis_.col(j);
  return x;
}

Vector Lattice::coordinates(const Vector& x) const { return inverse_ * x; }

Lattice Lattice::dual() const { return Lattice(Matrix(inverse_.transpose())); }

Lattice make_lattice(const Matrix& basis) { return Lattice(basis); }

double ball_volume(int dim, double r) {
  const double half = 0.5 * dim;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0) * std::pow(r, dim);
}

std::vector<LatticeVector> enumerate_ball(const Lattice& lat, double r, const Vector& center,
                                          std::uint64_t max_points) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("ball radius must be positive and finite");
  const int n = lat.dim();
  if (center.size() != n) throw InvalidArgument("ball center has wrong dimension");

  const double predicted = lat.density() * ball_volume(n, r);
  if (predicted > static_cast<double>(max_points)) {
    throw BallTooLarge("ball of radius " + std::to_string(r) + " holds about " +
                       std::to_string(static_cast<std::uint64_t>(predicted)) +
                       " lattice points, above the cap of " + std::to_string(max_points));
  }

  const Matrix& basis = lat.basis();
  const Vector c = lat.coordinates(center);
  const Vector& rn = lat.inverse_row_norms();
  std::array<std::int64_t, kMaxDim> lo{}, hi{};
  for (int j = 0; j < n; ++j) {
    lo[j] = static_cast<std::int64_t>(std::floor(c(j) - r * rn(j))) - 1;
    hi[j] = static_cast<std::int64_t>(std::ceil(c(j) + r * rn(j))) + 1;
  }

  std::vector<LatticeVector> out;
  out.reserve(static_cast<std::size_t>(predicted * 1.1) + 16);
  const double r2 = r * r;
  const Vector last = basis.col(n - 1);
  const double a = last.squaredNorm();

  // Odometer over the leading n-1 coordinates; the innermost coordinate range
  // follows from a quadratic inequality and each candidate is re-checked.
  LatticeVector m(n);
  for (int j = 0; j < n - 1; ++j) m[j] = lo[j];
  Vector offset(n);
  Vector x(n);
  while (true) {
    offset = -center;
    for (int j = 0; j < n - 1; ++j) offset += static_cast<double>(m[j]) * basis.col(j);
    const double b = last.dot(offset);
    const double cc = offset.squaredNorm() - r2;
    const double disc = b * b - a * cc;
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      const auto first = std::max(lo[n - 1], static_cast<std::int64_t>(std::floor((-b - root) / a)) - 1);
      const auto final = std::min(hi[n - 1], static_cast<std::int64_t>(std::ceil((-b + root) / a)) + 1);
      for (std::int64_t k = first; k <= final; ++k) {
        x = offset + static_cast<double>(k) * last;
        if (x.squaredNorm() < r2) {
          m[n - 1] = k;
          out.push_back(m);
        }
      }
      m[n - 1] = 0;
    }
    int axis = n - 2;
    while (axis >= 0 && m[axis] == hi[axis]) {
      m[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) break;
    ++m[axis];
  }
  return out;
}

std::vector<LatticeVector> enumerate_ball(const Lattice& lat, double r) {
  return enumerate_ball(lat, r, Vector::Zero(lat.dim()));
}

std::vector<ShellResidual> shell_count_check(const Lattice& lat, std::span<const double> radii) {
  std::vector<ShellResidual> out;
  out.reserve(radii.size());
  double previous = 0.0;
  for (double r : radii) {
    if (!(r > previous)) throw InvalidArgument("radii must be positive and strictly increasing");
    previous = r;
    const auto count = enumerate_ball(lat, r).size();
    const double ratio = static_cast<double>(count) / ball_volume(lat.dim(), r);
    out.push_back({r, count, std::abs(ratio - lat.density())});
  }
  return out;
}

std::string to_string(DomainMode mode) {
  return mode == DomainMode::parallelepiped ? "parallelepiped" : "voronoi";
}

DomainMode parse_domain_mode(std::string_view name) {
  if (name == "parallelepiped") return DomainMode::parallelepiped;
  if (name == "voronoi") return DomainMode::voronoi;
  throw InvalidArgument("unknown fundamental domain mode '" + std::string(name) + "'");
}

LatticeVector closest_vector(const Lattice& lat, const Vector& x) {
  const int n = lat.dim();
  const Vector c = lat.coordinates(x);
  LatticeVector base(n);
  for (int j = 0; j < n; ++j) base[j] = static_cast<std::int64_t>(std::llround(c(j)));

  LatticeVector best = base;
  double best_d2 = std::numeric_limits<double>::infinity();
  LatticeVector off(n);
  for (int j = 0; j < n; ++j) off[j] = -2;
  while (true) {
    const LatticeVector candidate = base + off;
    const double d2 = (x - lat.cartesian(candidate)).squaredNorm();
    // Candidates arrive in lexicographic order, so strict comparison keeps the
    // lexicographically smallest among exact ties.
    if (d2 < best_d2) {
      best_d2 = d2;
      best = candidate;
    }
    int axis = n - 1;
    while (axis >= 0 && off[axis] == 2) {
      off[axis] = -2;
      --axis;
    }
    if (axis < 0) break;
    ++off[axis];
  }
  return best;
}

namespace {

bool in_unit_cell(const Vector& c) {
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    if (!(c(j) >= 0.0 && c(j) < 1.0)) return false;
  }
  return true;
}

Vector reduce_parallelepiped(const Lattice& lat, const Vector& x) {
  Vector c = lat.coordinates(x);
  if (in_unit_cell(c)) return x;
  Vector y = x;
  // Map back and re-check: the round trip B * frac(B^{-1} x) can land a hair
  // outside [0,1) and must then be folded once more.
  for (int attempt = 0; attempt < 4; ++attempt) {
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      c(j) -= std::floor(c(j));
      if (c(j) >= 1.0) c(j) = 0.0;
    }
    y = lat.basis() * c;
    c = lat.coordinates(y);
    if (in_unit_cell(c)) break;
  }
  return y;
}

}  // namespace

Vector reduce_to_fundamental_domain(const FundamentalDomain& domain, const Vector& x) {
  const Lattice& lat = domain.lattice;
  if (x.size() != lat.dim()) throw InvalidArgument("point has wrong dimension for fundamental domain");
  if (domain.mode == DomainMode::parallelepiped) return reduce_parallelepiped(lat, x);
  return x - lat.cartesian(closest_vector(lat, x));
}

Vector FundamentalDomain::reduce(const Vector& x) const { return reduce_to_fundamental_domain(*this, x); }

double covering_radius_estimate(const Lattice& lat, int grid_density) {
  if (grid_density < 8) throw InvalidArgument("covering radius grid density must be at least 8");
  const int n = lat.dim();
  std::array<int, kMaxDim> idx{};
  Vector c(n);
  double worst = 0.0;
  while (true) {
    for (int j = 0; j < n; ++j) c(j) = static_cast<double>(idx[j]) / grid_density;
    const Vector x = lat.basis() * c;
    worst = std::max(worst, (x - lat.cartesian(closest_vector(lat, x))).norm());
    int axis = n - 1;
    while (axis >= 0 && idx[axis] == grid_density - 1) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
    ++idx[axis];
  }
  return worst;
}

}  // namespace difflat
