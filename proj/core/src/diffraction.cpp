#include "difflat/diffraction.hpp"

#include <cmath>
#include <numbers>

#include "difflat/error.hpp"

namespace difflat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Plain product; avoids the NaN/inf recovery path of operator*.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Per-axis phase tables e_j[m] = exp(-2 pi i q_j m) over the comb's coordinate
// range, with q = B^T k reduced mod 1 before use.
struct PhaseTables {
  int dim = 0;
  std::array<std::int64_t, kMaxDim> lo{};
  std::array<std::vector<Complex>, kMaxDim> table;

  PhaseTables(const WeightedComb& comb, const Vector& k) : dim(comb.dim()) {
    const Vector q = comb.lattice().basis().transpose() * k;
    for (int j = 0; j < dim; ++j) {
      const double qj = q(j) - std::nearbyint(q(j));
      lo[j] = comb.coord_min(j);
      const std::int64_t hi = comb.coord_max(j);
      auto& t = table[j];
      t.resize(static_cast<std::size_t>(hi - lo[j] + 1));
      for (std::int64_t m = lo[j]; m <= hi; ++m) {
        double frac = qj * static_cast<double>(m);
        frac -= std::nearbyint(frac);
        t[static_cast<std::size_t>(m - lo[j])] = std::polar(1.0, -kTwoPi * frac);
      }
    }
  }

};

template <int Dim>
Complex accumulate(const WeightedComb& comb, const PhaseTables& tables) {
  const auto points = comb.points();
  const auto weights = comb.weights();
  std::array<const Complex*, Dim> base{};
  for (int j = 0; j < Dim; ++j) base[j] = tables.table[j].data() - tables.lo[j];
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Complex ph = base[0][points[i][0]];
    for (int j = 1; j < Dim; ++j) ph = mul(ph, base[j][points[i][j]]);
    const Complex term = mul(weights[i], ph);
    re += term.real();
    im += term.imag();
  }
  return {re, im};
}

void check_k(const WeightedComb& comb, const Vector& k) {
  if (k.size() != comb.dim()) throw InvalidArgument("wave vector has the wrong dimension");
  if (!k.allFinite()) throw InvalidArgument("wave vector is not finite");
}

}  // namespace

Complex exp_sum(const WeightedComb& comb, const Vector& k) {
  check_k(comb, k);
  if (comb.size() == 0) return {};
  const PhaseTables tables(comb, k);
  switch (comb.dim()) {
    case 1: return accumulate<1>(comb, tables);
    case 2: return accumulate<2>(comb, tables);
    default: return accumulate<3>(comb, tables);
  }
}

double intensity(const WeightedComb& comb, const Vector& k) {
  return std::norm(exp_sum(comb, k)) / ball_volume(comb.dim(), comb.cutoff_radius());
}

std::vector<double> intensities(const WeightedComb& comb, std::span<const Vector> ks) {
  std::vector<double> out(ks.size());
  const auto count = static_cast<std::ptrdiff_t>(ks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = intensity(comb, ks[static_cast<std::size_t>(i)]);
  }
  return out;
}

double profiled_intensity(const WeightedComb& comb, const Vector& k, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("profile width must be positive");
  const double s2 = sigma * sigma;
  const double factor = std::exp(-4.0 * std::numbers::pi * std::numbers::pi * s2 * k.squaredNorm());
  return factor * intensity(comb, k);
}

LatticeVector dual_coordinates(const Lattice& lat, const Vector& k) {
  if (k.size() != lat.dim()) throw InvalidArgument("wave vector has the wrong dimension");
  const Vector c = lat.basis().transpose() * k;
  LatticeVector out(lat.dim());
  for (int j = 0; j < lat.dim(); ++j) {
    const double nearest = std::nearbyint(c(j));
    if (!(std::abs(c(j) - nearest) <= 1e-9)) {
      throw NotADualLatticePoint("wave vector is not a dual-lattice point (coordinate " + std::to_string(j) +
                                 " deviates by " + std::to_string(std::abs(c(j) - nearest)) + ")");
    }
    out[j] = static_cast<std::int64_t>(nearest);
  }
  return out;
}

double bragg_amplitude(const WeightedComb& comb, const Vector& k_star) {
  dual_coordinates(comb.lattice(), k_star);
  const Complex avg = exp_sum(comb, k_star) / ball_volume(comb.dim(), comb.cutoff_radius());
  return std::norm(avg);
}

BraggEntry bragg_amplitude(const WeightRule& rule, const Lattice& lat, const Vector& k_star,
                           std::span<const double> radii) {
  BraggEntry entry{dual_coordinates(lat, k_star), k_star, {}, 0.0, 0.0};
  double previous = 0.0;
  for (double r : radii) {
    if (!(r > previous)) throw InvalidArgument("radii must be positive and strictly increasing");
    previous = r;
    entry.ladder.push_back({r, bragg_amplitude(generate(rule, lat, r), k_star)});
  }
  if (!entry.ladder.empty()) {
    entry.extrapolated = entry.ladder.back().amplitude;
    if (entry.ladder.size() > 1) entry.trend = entry.ladder.back().amplitude - entry.ladder[entry.ladder.size() - 2].amplitude;
  }
  return entry;
}

BraggEntry bragg_amplitude(const WeightRule& rule, const Lattice& lat, const LatticeVector& dual_coords,
                           std::span<const double> radii) {
  if (dual_coords.dim != lat.dim()) throw InvalidArgument("dual coordinates have the wrong dimension");
  return bragg_amplitude(rule, lat, lat.dual().cartesian(dual_coords), radii);
}

double DiffractionGrid::mean_intensity() const {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& s : samples) acc += s.intensity;
  return acc / static_cast<double>(samples.size());
}

double DiffractionGrid::mean_off_bragg() const {
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& s : samples) {
    if (s.bragg_adjacent) continue;
    acc += s.intensity;
    ++n;
  }
  return n == 0 ? 0.0 : acc / static_cast<double>(n);
}

std::vector<Vector> fundamental_domain_grid(const Lattice& dual, int n_per_axis, DomainMode mode) {
  if (n_per_axis < 1) throw InvalidArgument("grid needs at least one point per axis");
  const int n = dual.dim();
  const FundamentalDomain domain{mode, dual};
  std::vector<Vector> out;
  std::array<int, kMaxDim> idx{};
  Vector c(n);
  while (true) {
    for (int j = 0; j < n; ++j) c(j) = static_cast<double>(idx[j]) / n_per_axis;
    out.push_back(domain.reduce(dual.basis() * c));
    int axis = n - 1;
    while (axis >= 0 && idx[axis] == n_per_axis - 1) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
    ++idx[axis];
  }
  return out;
}

DiffractionGrid diffraction_grid(const WeightedComb& comb, std::span<const Vector> grid, DomainMode mode) {
  const Lattice dual = comb.lattice().dual();
  DiffractionGrid out{comb.cutoff_radius(), FundamentalDomain{mode, dual}, {}};
  std::vector<Vector> reduced;
  reduced.reserve(grid.size());
  for (const auto& k : grid) {
    check_k(comb, k);
    reduced.push_back(out.domain.reduce(k));
  }
  const auto values = intensities(comb, reduced);
  const double flag_radius = 1.0 / comb.cutoff_radius();
  out.samples.reserve(reduced.size());
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const Vector nearest = dual.cartesian(closest_vector(dual, reduced[i]));
    const bool adjacent = (reduced[i] - nearest).norm() < flag_radius;
    out.samples.push_back({reduced[i], values[i], adjacent});
  }
  return out;
}

}  // namespace difflat
