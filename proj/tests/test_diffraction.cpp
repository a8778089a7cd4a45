#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "difflat/autocorr.hpp"
#include "difflat/diffraction.hpp"
#include "difflat/error.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace difflat;
using testing::hexagonal;
using testing::integers;
using testing::rectangular;
using testing::square;

namespace {

std::map<oracle::Point, std::complex<double>> to_map(const WeightedComb& c) {
  std::map<oracle::Point, std::complex<double>> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.weights()[i] != Complex{}) out[testing::to_oracle(c.points()[i])] = c.weights()[i];
  }
  return out;
}

std::vector<double> as_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

WeightedComb random_complex_comb(const Lattice& lat, double r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return WeightedComb(lat, r, [&](const LatticeVector&) { return Complex{u(rng), u(rng)}; });
}

}  // namespace

TEST_CASE("exponential sums on Z") {
  const auto five = generate(WeightRule::constant(), integers(), 2.5);
  REQUIRE(five.size() == 5);
  CHECK(exp_sum(five, make_vector({0.0})) == Complex{5.0, 0.0});
  CHECK(std::abs(exp_sum(five, make_vector({0.5})) - Complex{1.0, 0.0}) <= 1e-14);

  const auto ones = generate(WeightRule::constant(), integers(), 100.5);
  CHECK(intensity(ones, make_vector({0.0})) == doctest::Approx(201.0).epsilon(1e-14));
  // geometric sum: |sin(201 pi/3) / sin(pi/3)| = 0 since 201 = 3 * 67
  CHECK(intensity(ones, make_vector({1.0 / 3.0})) <= 1.0 / 201.0);
  for (double k : {0.1, 0.27, 0.49}) {
    const double bound = 1.0 / (std::sin(std::numbers::pi * k) * std::sin(std::numbers::pi * k));
    CHECK(intensity(ones, make_vector({k})) <= bound / 201.0 * (1.0 + 1e-12));
  }
}

TEST_CASE("exponential sums agree with direct evaluation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const Lattice& lat : {square(), hexagonal(), rectangular()}) {
    const auto comb = random_complex_comb(lat, 9.0, 2);
    const auto weights = to_map(comb);
    const auto basis = testing::to_oracle(lat);
    for (int i = 0; i < 10; ++i) {
      const Vector k = make_vector({u(rng), u(rng)});
      const auto want = oracle::exp_sum(basis, weights, as_std(k));
      CHECK(std::abs(exp_sum(comb, k) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("property: exact dual-lattice periodicity") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (const Lattice& lat : {square(), hexagonal(), rectangular()}) {
    const auto comb = random_complex_comb(lat, 20.0, 9);
    const Lattice dual = lat.dual();
    std::vector<Vector> ks;
    for (int i = 0; i < 50; ++i) ks.push_back(make_vector({u(rng), u(rng)}));
    const auto base = intensities(comb, ks);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      CHECK(base[i] == intensity(comb, ks[i]));
      for (int j = 0; j < 5; ++j) {
        const Vector shift = dual.cartesian(LatticeVector{coord(rng), coord(rng)});
        const Vector k = ks[i] + shift;
        CHECK(std::abs(intensity(comb, k) - base[i]) <= 1e-9 * (1.0 + base[i]));
        CHECK(std::abs(exp_sum(comb, k) - exp_sum(comb, ks[i])) <= 1e-10 * (1.0 + std::abs(exp_sum(comb, ks[i]))));
      }
    }
  }
}

TEST_CASE("bragg amplitudes") {
  const std::vector<double> radii{50.0, 100.0, 200.0};
  for (const auto& d : {LatticeVector{0, 0}, LatticeVector{1, 0}, LatticeVector{-2, 3}}) {
    const auto e = bragg_amplitude(WeightRule::constant(), square(), d, radii);
    CHECK(e.dual_coords == d);
    CHECK(std::abs(e.extrapolated - 1.0) <= 0.02);
    CHECK(e.trend == e.ladder[2].amplitude - e.ladder[1].amplitude);
    // exact lattice-point count at r = 50 against a box scan
    const double n50 = static_cast<double>(oracle::ball(testing::to_oracle(square()), 50.0, 51).size());
    CHECK(e.ladder[0].amplitude == doctest::Approx(std::pow(n50 / oracle::ball_volume(2, 50.0), 2)).epsilon(1e-12));
  }

  const auto rect = bragg_amplitude(WeightRule::constant(), rectangular(), LatticeVector{1, -1}, radii);
  CHECK(std::abs(rect.extrapolated - 0.25) <= 0.02 * 0.25);

  // the estimator is the same number at every dual point for constant weights
  const auto ones = generate(WeightRule::constant(), hexagonal(), 60.0);
  const Lattice dual = hexagonal().dual();
  const double a0 = bragg_amplitude(ones, Vector::Zero(2));
  for (const auto& d : {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{3, -2}}) {
    CHECK(bragg_amplitude(ones, dual.cartesian(d)) == doctest::Approx(a0).epsilon(1e-10));
  }

  const auto bern = generate(WeightRule::bernoulli(0.3, 42), square(), 200.0);
  CHECK(std::abs(bragg_amplitude(bern, Vector::Zero(2)) / 0.09 - 1.0) <= 0.05);

  CHECK_THROWS_AS(bragg_amplitude(ones, make_vector({0.5, 0.0})), NotADualLatticePoint);
  CHECK_THROWS_AS(dual_coordinates(square(), make_vector({1.0, 1e-6})), NotADualLatticePoint);
  CHECK(dual_coordinates(square(), make_vector({1.0, -2.0 + 1e-12})) == LatticeVector{1, -2});
}

TEST_CASE("diffraction grids") {
  const Lattice dual = square().dual();
  const auto grid = fundamental_domain_grid(dual, 16, DomainMode::voronoi);
  REQUIRE(grid.size() == 256);

  const auto ones = generate(WeightRule::constant(), square(), 30.0);
  const auto spike = diffraction_grid(ones, grid, DomainMode::voronoi);
  CHECK(spike.radius == 30.0);
  std::size_t flagged = 0;
  double off_max = 0.0;
  for (const auto& s : spike.samples) {
    if (s.bragg_adjacent) {
      ++flagged;
      CHECK(s.k.norm() < 1.0 / 30.0 + 1e-12);
    } else {
      off_max = std::max(off_max, s.intensity);
    }
  }
  CHECK(flagged == 1);
  const auto& origin = spike.samples.front();  // grid index 0 is the origin
  CHECK(origin.k.norm() == 0.0);
  CHECK(origin.bragg_adjacent);
  CHECK(origin.intensity == doctest::Approx(intensity(ones, Vector::Zero(2))));
  CHECK(off_max < 0.01 * origin.intensity);

  const WeightedComb zero(square(), 10.0);
  for (const auto& s : diffraction_grid(zero, grid, DomainMode::parallelepiped).samples) CHECK(s.intensity == 0.0);

  for (DomainMode mode : {DomainMode::parallelepiped, DomainMode::voronoi}) {
    for (const auto& k : fundamental_domain_grid(hexagonal().dual(), 12, mode)) {
      const Vector reduced = reduce_to_fundamental_domain(FundamentalDomain{mode, hexagonal().dual()}, k);
      CHECK((reduced - k).norm() <= 1e-12);
    }
  }
}

TEST_CASE("diffuse floor of bernoulli combs") {
  const double p = 0.3;
  const auto grid = fundamental_domain_grid(square().dual(), 32, DomainMode::voronoi);
  double sum = 0.0;
  const int seeds = 50;
  for (int seed = 0; seed < seeds; ++seed) {
    sum += diffraction_grid(generate(WeightRule::bernoulli(p, seed), square(), 100.0), grid, DomainMode::voronoi)
               .mean_off_bragg();
  }
  CHECK(std::abs(sum / seeds / (p * (1.0 - p)) - 1.0) <= 0.05);
}

TEST_CASE("profiled intensity") {
  const auto ones = generate(WeightRule::constant(), integers(), 100.5);
  const Vector one = make_vector({1.0});
  CHECK(profiled_intensity(ones, one, 0.1) ==
        doctest::Approx(intensity(ones, one) * std::exp(-4.0 * std::numbers::pi * std::numbers::pi * 0.01)));
  CHECK(std::exp(-4.0 * std::numbers::pi * std::numbers::pi * 0.01) == doctest::Approx(0.673825).epsilon(1e-6));
  CHECK(profiled_intensity(ones, make_vector({0.0}), 0.3) == intensity(ones, make_vector({0.0})));
  CHECK(profiled_intensity(ones, make_vector({0.2}), 1e-8) / intensity(ones, make_vector({0.2})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(profiled_intensity(ones, one, 0.0), InvalidArgument);
}

TEST_CASE("property: grid mean of the intensity equals the origin coefficient") {
  // aliasing-free when the grid is finer than the support diameter in dual coordinates
  struct Case {
    Lattice lat;
    double r;
    int n;
  };
  for (const auto& c : {Case{square(), 50.0, 128}, Case{hexagonal(), 20.0, 64}, Case{rectangular(), 15.0, 64}}) {
    const auto comb = random_complex_comb(c.lat, c.r, 4);
    const auto grid = fundamental_domain_grid(c.lat.dual(), c.n, DomainMode::parallelepiped);
    const double mean = diffraction_grid(comb, grid, DomainMode::parallelepiped).mean_intensity();
    const double nu0 = autocorr_coefficient(comb, LatticeVector{0, 0}).real();
    CHECK(mean == doctest::Approx(nu0).epsilon(1e-10));
  }
  const auto ones = generate(WeightRule::constant(), square(), 50.0);
  const auto grid = fundamental_domain_grid(square().dual(), 128, DomainMode::voronoi);
  const double mean = diffraction_grid(ones, grid, DomainMode::voronoi).mean_intensity();
  CHECK(std::abs(mean * square().dual().det_abs() / autocorr_coefficient(ones, LatticeVector{0, 0}).real() - 1.0) <= 0.02);
}
