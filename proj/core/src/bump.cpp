#include <cmath>

#include "difflat/autocorr.hpp"
#include "difflat/error.hpp"

namespace difflat {

BumpFunction::BumpFunction(int dim, double epsilon, int quadrature_points)
    : dim_(dim), epsilon_(epsilon), quadrature_points_(quadrature_points) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("bump dimension must be 1, 2 or 3");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("bump support radius must be positive");
  if (quadrature_points < 4) throw InvalidArgument("bump quadrature needs at least 4 points per axis");

  const double h = 2.0 * epsilon / quadrature_points;
  cell_volume_ = std::pow(h, dim);
  std::array<int, kMaxDim> idx{};
  Vector x(dim);
  double phi2_sum = 0.0;
  std::vector<double> phis;
  while (true) {
    for (int j = 0; j < dim; ++j) x(j) = -epsilon + (idx[j] + 0.5) * h;
    const double phi = profile(x.norm() / epsilon);
    if (phi > 0.0) {
      nodes_.push_back(x);
      phis.push_back(phi);
      phi2_sum += phi * phi;
    }
    int axis = dim - 1;
    while (axis >= 0 && idx[axis] == quadrature_points - 1) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
    ++idx[axis];
  }
  c0_ = 1.0 / std::sqrt(phi2_sum * cell_volume_);
  values_.reserve(phis.size());
  for (double phi : phis) values_.push_back(c0_ * phi);
}

double BumpFunction::profile(double rho) const {
  if (!(rho < 1.0)) return 0.0;
  const double r2 = rho * rho;
  return std::exp(r2 / (r2 - 1.0));
}

double BumpFunction::operator()(const Vector& x) const {
  if (x.size() != dim_) throw InvalidArgument("bump argument has the wrong dimension");
  return c0_ * profile(x.norm() / epsilon_);
}

double BumpFunction::self_convolution(const Vector& y) const {
  if (y.size() != dim_) throw InvalidArgument("bump argument has the wrong dimension");
  if (!(y.norm() < 2.0 * epsilon_)) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    acc += values_[i] * c0_ * profile((nodes_[i] - y).norm() / epsilon_);
  }
  return acc * cell_volume_;
}

double BumpFunction::l2_norm_squared() const {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return acc * cell_volume_;
}

double BumpFunction::l1_norm() const {
  double acc = 0.0;
  for (double v : values_) acc += v;
  return acc * cell_volume_;
}

double BumpFunction::lipschitz_constant() const {
  // |d/drho phi| = phi(rho) * 2 rho / (1 - rho^2)^2
  constexpr int kSamples = 200000;
  double best = 0.0;
  for (int i = 1; i < kSamples; ++i) {
    const double rho = static_cast<double>(i) / kSamples;
    const double s = 1.0 - rho * rho;
    best = std::max(best, profile(rho) * 2.0 * rho / (s * s));
  }
  return c0_ * best / epsilon_;
}

BumpFunction make_bump(const Lattice& lat, std::optional<double> epsilon, int quadrature_points) {
  const double eps = epsilon.value_or(0.25 * lat.packing_radius());
  if (eps > 0.5 * lat.packing_radius() * (1.0 + 1e-12)) {
    throw EpsilonTooLarge("bump support radius exceeds half the packing radius");
  }
  return BumpFunction(lat.dim(), eps, quadrature_points);
}

Complex regularized_autocorr(const WeightedComb& comb, const BumpFunction& bump, const Vector& x) {
  const Lattice& lat = comb.lattice();
  if (bump.dim() != lat.dim()) throw InvalidArgument("bump and comb dimensions differ");
  if (bump.epsilon() > 0.5 * lat.packing_radius() * (1.0 + 1e-12)) {
    throw EpsilonTooLarge("bump support radius exceeds half the packing radius");
  }
  if (x.size() != lat.dim()) throw InvalidArgument("evaluation point has the wrong dimension");
  // Bumps of radius 2 eps around distinct lattice points are disjoint, so at
  // most the nearest difference vector contributes.
  const LatticeVector z = closest_vector(lat, x);
  const Vector offset = x - lat.cartesian(z);
  if (!(offset.norm() < 2.0 * bump.epsilon())) return {};
  return autocorr_coefficient(comb, z, Variant::pair_in_window) * bump.self_convolution(offset);
}

}  // namespace difflat
