#pragma once

#include <span>
#include <vector>

#include "difflat/comb.hpp"
#include "difflat/types.hpp"

namespace difflat {

// Finite-radius checks of the relations between an indicator comb S and its
// complement S' = Gamma \ S. Every quantity is taken at the cutoff radius of
// the comb passed in, with pair_in_window coefficients.

struct ZResidual {
  LatticeVector z;
  double residual;
};

/// |(nu_S'(z) - dens(S')) - (nu_S(z) - dens(S))| per z.
std::vector<ZResidual> complement_autocorr_check(const WeightedComb& s, std::span<const LatticeVector> zs);

/// max over z of |nu_S(z) - nu_S'(z)|. Throws DensityNotHalf unless
/// |dens_r(S) - dens(Gamma)/2| <= 0.05 dens(Gamma).
double homometry_check(const WeightedComb& s, std::span<const LatticeVector> zs);

struct RadiusResidual {
  double radius;
  double residual;
};

/// |A^S'(k*) - A^S(k*) - (dens(S')^2 - dens(S)^2)| on the restriction of S to
/// each radius (all radii <= cutoff). Throws NotADualLatticePoint.
std::vector<RadiusResidual> complement_bragg_check(const WeightedComb& s, const Vector& k_star,
                                                   std::span<const double> radii);

/// Off-Bragg and on-Bragg behaviour of D^S' - D^S, the difference whose
/// support should be the dual lattice.
struct DifferenceSupport {
  double max_off_lattice;  // max |D^S'(k) - D^S(k)| over the off-lattice probes
  double on_lattice;       // D^S'(k*) - D^S(k*) at the dual-lattice probe
};

DifferenceSupport difference_support(const WeightedComb& s, std::span<const Vector> off_lattice_probes,
                                      const Vector& k_star);

}  // namespace difflat
