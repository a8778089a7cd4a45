#include "difflat/complement.hpp"

#include <cmath>

#include "difflat/autocorr.hpp"
#include "difflat/diffraction.hpp"
#include "difflat/error.hpp"

namespace difflat {

std::vector<ZResidual> complement_autocorr_check(const WeightedComb& s, std::span<const LatticeVector> zs) {
  const WeightedComb s_prime = complement(s);
  const double dens_s = empirical_density(s).real();
  const double dens_sp = empirical_density(s_prime).real();
  std::vector<ZResidual> out;
  out.reserve(zs.size());
  for (const auto& z : zs) {
    const Complex nu_s = autocorr_coefficient(s, z);
    const Complex nu_sp = autocorr_coefficient(s_prime, z);
    out.push_back({z, std::abs((nu_sp - dens_sp) - (nu_s - dens_s))});
  }
  return out;
}

double homometry_check(const WeightedComb& s, std::span<const LatticeVector> zs) {
  const double dens_gamma = s.lattice().density();
  const double dens_s = empirical_density(s).real();
  if (std::abs(dens_s - 0.5 * dens_gamma) > 0.05 * dens_gamma) {
    throw DensityNotHalf("homometry needs dens(S) within 5% of dens(Gamma)/2; got " + std::to_string(dens_s));
  }
  const WeightedComb s_prime = complement(s);
  double worst = 0.0;
  for (const auto& z : zs) {
    worst = std::max(worst, std::abs(autocorr_coefficient(s, z) - autocorr_coefficient(s_prime, z)));
  }
  return worst;
}

std::vector<RadiusResidual> complement_bragg_check(const WeightedComb& s, const Vector& k_star,
                                                   std::span<const double> radii) {
  dual_coordinates(s.lattice(), k_star);
  if (!s.is_indicator()) throw NotAnIndicatorComb("complement_bragg_check needs an indicator comb");
  std::vector<RadiusResidual> out;
  double previous = 0.0;
  for (double r : radii) {
    if (!(r > previous)) throw InvalidArgument("radii must be positive and strictly increasing");
    previous = r;
    const WeightedComb sr = restrict_to_ball(s, r);
    const WeightedComb spr = complement(sr);
    const double a_s = bragg_amplitude(sr, k_star);
    const double a_sp = bragg_amplitude(spr, k_star);
    const double d_s = empirical_density(sr).real();
    const double d_sp = empirical_density(spr).real();
    out.push_back({r, std::abs(a_sp - a_s - (d_sp * d_sp - d_s * d_s))});
  }
  return out;
}

DifferenceSupport difference_support(const WeightedComb& s, std::span<const Vector> off_lattice_probes,
                                      const Vector& k_star) {
  const WeightedComb s_prime = complement(s);
  const auto d_s = intensities(s, off_lattice_probes);
  const auto d_sp = intensities(s_prime, off_lattice_probes);
  double worst = 0.0;
  for (std::size_t i = 0; i < d_s.size(); ++i) worst = std::max(worst, std::abs(d_sp[i] - d_s[i]));
  dual_coordinates(s.lattice(), k_star);
  return {worst, intensity(s_prime, k_star) - intensity(s, k_star)};
}

}  // namespace difflat
