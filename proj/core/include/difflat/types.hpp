#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

#include <Eigen/Core>

namespace difflat {

inline constexpr int kMaxDim = 3;

using Complex = std::complex<double>;

// Fixed-capacity dynamic-size Eigen types: no heap traffic for n <= 3.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

/// Integer coordinates of a lattice point with respect to a lattice basis.
///
/// Unused trailing slots are kept at zero, so the defaulted ordering is the
/// lexicographic order on the first `dim` coordinates.
struct LatticeVector {
  std::array<std::int64_t, kMaxDim> coords{};
  int dim = 0;

  LatticeVector() = default;
  explicit LatticeVector(int n) : dim(n) {}
  LatticeVector(std::initializer_list<std::int64_t> values);
  static LatticeVector from_span(std::span<const std::int64_t> values);

  std::int64_t operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

  bool is_zero() const;

  auto operator<=>(const LatticeVector&) const = default;
  bool operator==(const LatticeVector&) const = default;

  LatticeVector operator-() const;
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b);
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b);

  std::string to_string() const;
};

Vector make_vector(std::initializer_list<double> values);

}  // namespace difflat
