#pragma once

#include <optional>
#include <span>
#include <vector>

#include "difflat/comb.hpp"
#include "difflat/lattice.hpp"
#include "difflat/types.hpp"

namespace difflat {

/// S_r(k) = sum over t in Gamma_r of w(t) exp(-2 pi i k.t). Exactly periodic
/// under k -> k + u for u in the dual lattice: phases are built per basis axis
/// from the fractional part of (B^T k)_j m_j.
Complex exp_sum(const WeightedComb& comb, const Vector& k);

/// D_r(k) = |S_r(k)|^2 / vol(B_r), the Fourier density of the approximant
/// (omega_r * omega_r~) / vol(B_r).
double intensity(const WeightedComb& comb, const Vector& k);

/// D_r at many points, evaluated in parallel; output order matches input.
std::vector<double> intensities(const WeightedComb& comb, std::span<const Vector> ks);

/// Gaussian scatterer profile of width sigma: |h^(k)|^2 D_r(k) with
/// h^(k) = exp(-2 pi^2 sigma^2 |k|^2).
double profiled_intensity(const WeightedComb& comb, const Vector& k, double sigma);

/// Integer coordinates of k in the dual basis (B^T k). Throws
/// NotADualLatticePoint when any coordinate is more than 1e-9 from an integer.
LatticeVector dual_coordinates(const Lattice& lat, const Vector& k);

/// A_r(k*) = |S_r(k*) / vol(B_r)|^2, the averaged Bragg-amplitude estimator.
double bragg_amplitude(const WeightedComb& comb, const Vector& k_star);

struct BraggSample {
  double radius;
  double amplitude;
};

struct BraggEntry {
  LatticeVector dual_coords;
  Vector k;
  std::vector<BraggSample> ladder;
  double extrapolated = 0.0;  // value at the largest radius
  double trend = 0.0;         // last minus second-to-last value (0 for a single radius)
};

/// Bragg ladder at a dual-lattice point, regenerating the comb at each radius.
BraggEntry bragg_amplitude(const WeightRule& rule, const Lattice& lat, const Vector& k_star,
                           std::span<const double> radii);
BraggEntry bragg_amplitude(const WeightRule& rule, const Lattice& lat, const LatticeVector& dual_coords,
                           std::span<const double> radii);

struct DiffractionSample {
  Vector k;  // reduced into the fundamental domain of the dual lattice
  double intensity = 0.0;
  bool bragg_adjacent = false;  // within 1/r of a dual-lattice point
};

struct DiffractionGrid {
  double radius = 0.0;
  FundamentalDomain domain;
  std::vector<DiffractionSample> samples;

  double mean_intensity() const;
  /// Mean over samples that are not flagged Bragg-adjacent.
  double mean_off_bragg() const;
};

/// Uniform n_per_axis^n grid of one fundamental domain of `dual`: the points
/// B* (i/n) of the basis cell, reduced into the chosen domain.
std::vector<Vector> fundamental_domain_grid(const Lattice& dual, int n_per_axis, DomainMode mode);

DiffractionGrid diffraction_grid(const WeightedComb& comb, std::span<const Vector> grid, DomainMode mode);

}  // namespace difflat
