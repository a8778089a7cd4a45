#include "difflat/autocorr.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "difflat/error.hpp"

namespace difflat {

std::string to_string(Variant v) { return v == Variant::pair_in_window ? "pair" : "single"; }

Variant parse_variant(std::string_view name) {
  if (name == "pair" || name == "pair_in_window") return Variant::pair_in_window;
  if (name == "single" || name == "single_window") return Variant::single_window;
  throw InvalidArgument("unknown autocorrelation variant '" + std::string(name) + "'");
}

std::optional<Complex> AutocorrTable::at(const LatticeVector& z) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), z,
                             [](const AutocorrEntry& e, const LatticeVector& key) { return e.z < key; });
  if (it == entries.end() || it->z != z) return std::nullopt;
  return it->value;
}

double AutocorrTable::at_origin() const {
  if (entries.empty()) throw InvalidArgument("autocorrelation table is empty");
  const auto v = at(LatticeVector(entries.front().z.dim));
  if (!v) throw InvalidArgument("autocorrelation table has no entry at z = 0");
  return v->real();
}

namespace {

// a * conj(b) written out so that swapping the arguments yields the exact
// complex conjugate (no fused operations, same rounding on both paths).
inline Complex mul_conj(Complex a, Complex b) {
  const double re = a.real() * b.real() + a.imag() * b.imag();
  const double im = a.imag() * b.real() - a.real() * b.imag();
  return {re, im};
}

void check_window(const WeightedComb& comb, double window) {
  if (!(window > 0.0) || window > comb.cutoff_radius()) {
    throw InvalidArgument("summation window must lie in (0, cutoff radius]");
  }
}

// Sum over t' of w(t' + z) conj(w(t')), both points inside the window.
Complex pair_sum(const WeightedComb& comb, const LatticeVector& z, double window) {
  const auto points = comb.points();
  const auto weights = comb.weights();
  const auto norms2 = comb.squared_norms();
  const bool full = window == comb.cutoff_radius();
  const double w2 = window * window;
  Complex acc{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!full && !(norms2[i] < w2)) continue;
    if (weights[i] == Complex{}) continue;
    const auto j = comb.index_of(points[i] + z);
    if (j < 0) continue;
    const auto ju = static_cast<std::size_t>(j);
    if (!full && !(norms2[ju] < w2)) continue;
    acc += mul_conj(weights[ju], weights[i]);
  }
  return acc;
}

Complex single_sum(const WeightedComb& comb, const LatticeVector& z, double window) {
  const auto points = comb.points();
  const auto weights = comb.weights();
  const auto norms2 = comb.squared_norms();
  const bool full = window == comb.cutoff_radius();
  const double w2 = window * window;
  Complex acc{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!full && !(norms2[i] < w2)) continue;
    if (weights[i] == Complex{}) continue;
    const auto j = comb.index_of(points[i] - z);
    if (j < 0) continue;
    acc += mul_conj(weights[i], weights[static_cast<std::size_t>(j)]);
  }
  return acc;
}

bool is_negative(const LatticeVector& z) { return z < LatticeVector(z.dim); }

}  // namespace

Complex autocorr_coefficient(const WeightedComb& comb, const LatticeVector& z, Variant variant, double window) {
  check_window(comb, window);
  if (z.dim != comb.dim()) throw InvalidArgument("difference vector has the wrong dimension");
  const double vol = ball_volume(comb.dim(), window);
  if (variant == Variant::single_window) return single_sum(comb, z, window) / vol;
  if (is_negative(z)) return std::conj(pair_sum(comb, -z, window)) / vol;
  Complex v = pair_sum(comb, z, window) / vol;
  if (z.is_zero()) v.imag(0.0);
  return v;
}

Complex autocorr_coefficient(const WeightedComb& comb, const LatticeVector& z, Variant variant) {
  return autocorr_coefficient(comb, z, variant, comb.cutoff_radius());
}

AutocorrTable autocorrelation(const WeightedComb& comb, double z_max, Variant variant, std::optional<double> window) {
  if (comb.size() == 0) throw InvalidArgument("autocorrelation of an empty comb");
  if (!(z_max >= 0.0)) throw InvalidArgument("z_max must be non-negative");
  if (z_max > 2.0 * comb.cutoff_radius()) {
    throw ZRangeExceedsData("z_max exceeds twice the comb cutoff radius; larger differences carry no data");
  }
  const double win = window.value_or(comb.cutoff_radius());
  check_window(comb, win);

  const auto zs = enumerate_ball(comb.lattice(), z_max + 1e-9 * std::max(1.0, z_max));
  AutocorrTable table;
  table.radius = win;
  table.variant = variant;
  table.entries.resize(zs.size());

  const auto count = static_cast<std::ptrdiff_t>(zs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& z = zs[static_cast<std::size_t>(i)];
    if (variant == Variant::pair_in_window && is_negative(z)) continue;  // filled by conjugation below
    table.entries[static_cast<std::size_t>(i)] = {z, autocorr_coefficient(comb, z, variant, win)};
  }
  if (variant == Variant::pair_in_window) {
    // The ball is symmetric, so -z sits at the mirrored position of z.
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (!is_negative(zs[i])) continue;
      const auto& mirror = table.entries[zs.size() - 1 - i];
      if (mirror.z != -zs[i]) throw Error("internal: enumeration is not symmetric");
      table.entries[i] = {zs[i], std::conj(mirror.value)};
    }
  }
  return table;
}

std::vector<GapSample> variant_gap(const WeightedComb& comb, const LatticeVector& z, std::span<const double> radii) {
  std::vector<GapSample> out;
  double previous = 0.0;
  for (double r : radii) {
    if (!(r > previous)) throw InvalidArgument("radii must be positive and strictly increasing");
    previous = r;
    const Complex pair = autocorr_coefficient(comb, z, Variant::pair_in_window, r);
    const Complex single = autocorr_coefficient(comb, z, Variant::single_window, r);
    out.push_back({r, std::abs(pair - single)});
  }
  return out;
}

std::vector<ScanSample> convergence_scan(const WeightRule& rule, const Lattice& lat, const LatticeVector& z,
                                         std::span<const double> radii) {
  std::vector<ScanSample> out;
  double previous = 0.0;
  for (double r : radii) {
    if (!(r > previous)) throw InvalidArgument("radii must be positive and strictly increasing");
    previous = r;
    const WeightedComb comb = generate(rule, lat, r);
    out.push_back({r, autocorr_coefficient(comb, z, Variant::pair_in_window)});
  }
  return out;
}

double min_gram_eigenvalue(const AutocorrTable& table, std::span<const LatticeVector> selection) {
  const auto m = static_cast<Eigen::Index>(selection.size());
  if (m == 0) throw InvalidArgument("empty Gram selection");
  Eigen::MatrixXcd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto diff = selection[static_cast<std::size_t>(i)] - selection[static_cast<std::size_t>(j)];
      const auto v = table.at(diff);
      if (!v) throw InvalidArgument("difference " + diff.to_string() + " is not in the autocorrelation table");
      gram(i, j) = *v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace difflat
