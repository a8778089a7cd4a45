#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "difflat/autocorr.hpp"
#include "difflat/error.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace difflat;
using testing::hexagonal;
using testing::integers;
using testing::square;

namespace {

std::map<oracle::Point, std::complex<double>> to_map(const WeightedComb& c) {
  std::map<oracle::Point, std::complex<double>> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.weights()[i] != Complex{}) out[testing::to_oracle(c.points()[i])] = c.weights()[i];
  }
  return out;
}

WeightedComb random_complex_comb(const Lattice& lat, double r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return WeightedComb(lat, r, [&](const LatticeVector&) { return Complex{u(rng), u(rng)}; });
}

}  // namespace

TEST_CASE("pair_in_window coefficients on Z") {
  const auto ones = generate(WeightRule::constant(), integers(), 100.5);
  CHECK(autocorr_coefficient(ones, LatticeVector{0}).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(autocorr_coefficient(ones, LatticeVector{0}).imag() == 0.0);
  // oracle: 191 ordered pairs in [-100, 100] at distance 10
  const auto pairs = oracle::pair_sum(to_map(ones), {10});
  CHECK(pairs.real() == 191.0);
  CHECK(autocorr_coefficient(ones, LatticeVector{10}).real() == doctest::Approx(191.0 / 201.0).epsilon(1e-15));
}

TEST_CASE("checkerboard has no odd differences") {
  const auto even = generate(WeightRule::checkerboard(), square(), 30.0);
  CHECK(autocorr_coefficient(even, LatticeVector{1, 0}) == Complex{});
  CHECK(autocorr_coefficient(even, LatticeVector{2, 1}) == Complex{});
  CHECK(autocorr_coefficient(even, LatticeVector{1, 1}).real() > 0.4);
}

TEST_CASE("bernoulli(1/2) pair coefficient follows the product law") {
  const double p = 0.5, r = 200.0;
  const auto comb = generate(WeightRule::bernoulli(p, 3), square(), r);
  const LatticeVector z{3, 1};
  const auto ones = generate(WeightRule::constant(), square(), r);
  const double pairs = autocorr_coefficient(ones, z).real() * ball_volume(2, r);
  const double vol = ball_volume(2, r);
  // products along a chain t, t-z, t-2z are 1-dependent
  const double var = pairs * (p * p - std::pow(p, 4) + 2.0 * (std::pow(p, 3) - std::pow(p, 4)));
  const double nu = autocorr_coefficient(comb, z).real();
  CHECK(std::abs(nu - p * p * pairs / vol) <= 3.0 * std::sqrt(var) / vol);
  CHECK(std::abs(nu - 0.25) <= 3.0 * std::sqrt(var) / vol + 0.25 * (1.0 - pairs / vol));
}

TEST_CASE("tables agree with brute-force pair sums") {
  for (const Lattice& lat : {square(), hexagonal(), testing::rectangular()}) {
    const auto comb = random_complex_comb(lat, 7.5, 17);
    const auto weights = to_map(comb);
    for (Variant v : {Variant::pair_in_window, Variant::single_window}) {
      const auto table = autocorrelation(comb, 6.0, v);
      CHECK(table.entries.size() == enumerate_ball(lat, 6.0 + 1e-9).size());
      for (const auto& e : table.entries) {
        const auto want = oracle::pair_sum(weights, testing::to_oracle(e.z)) / ball_volume(2, 7.5);
        CHECK(std::abs(e.value - want) <= 1e-12 * (1.0 + std::abs(want)));
      }
    }
  }
}

TEST_CASE("z range is bounded by the data") {
  const auto comb = generate(WeightRule::constant(), square(), 5.0);
  CHECK_THROWS_AS(autocorrelation(comb, 10.5), ZRangeExceedsData);
  CHECK_NOTHROW(autocorrelation(comb, 10.0));
  CHECK_THROWS_AS(autocorrelation(WeightedComb(square(), 0.5).with_weights({}), 0.0), Error);
}

TEST_CASE("variant gap") {
  const auto ones = generate(WeightRule::constant(), integers(), 300.5);
  const std::vector<double> radii{100.5, 200.5};
  const auto gap = variant_gap(ones, LatticeVector{10}, radii);
  CHECK(gap[0].gap == doctest::Approx(10.0 / 201.0).epsilon(1e-12));
  CHECK(gap[1].gap == doctest::Approx(10.0 / 401.0).epsilon(1e-12));
  for (const auto& g : variant_gap(ones, LatticeVector{0}, radii)) CHECK(g.gap == 0.0);

  const auto board = generate(WeightRule::checkerboard(), square(), 110.0);
  const std::vector<double> ladder{25.0, 50.0, 100.0};
  for (const auto& g : variant_gap(board, LatticeVector{1, 1}, ladder)) {
    CHECK(g.gap > 0.0);
    CHECK(g.gap * g.radius <= 2.0);
  }
}

TEST_CASE("convergence scans") {
  const std::vector<double> radii{25.0, 50.0, 100.0, 200.0};
  const auto scan = convergence_scan(WeightRule::constant(), square(), LatticeVector{1, 0}, radii);
  for (const auto& s : scan) CHECK(std::abs(s.value.real() - 1.0) * s.radius <= 2.0);
  CHECK(std::abs(scan.back().value.real() - 1.0) < std::abs(scan.front().value.real() - 1.0));

  const std::vector<double> vis_r{100.0, 250.0, 500.0};
  const auto vis = convergence_scan(WeightRule::visible_points(), square(), LatticeVector{0, 0}, vis_r);
  CHECK(std::abs(vis.back().value.real() / oracle::inverse_zeta2() - 1.0) <= 0.01);

  const std::vector<double> bern_r{50.0, 100.0, 200.0};
  const auto bern = convergence_scan(WeightRule::bernoulli(0.3, 5), square(), LatticeVector{2, 1}, bern_r);
  const double vol = ball_volume(2, 200.0);
  const double p = 0.3;
  const double sigma = std::sqrt(vol * (p * p - std::pow(p, 4) + 2.0 * (std::pow(p, 3) - std::pow(p, 4)))) / vol;
  CHECK(std::abs(bern.back().value.real() - 0.09) <= 3.0 * sigma + 0.09 * 2.0 / 200.0);
}

TEST_CASE("property: hermitian symmetry, real origin, uniform bound") {
  for (const Lattice& lat : {square(), hexagonal()}) {
    const auto comb = random_complex_comb(lat, 15.0, 23);
    const auto table = autocorrelation(comb, 8.0);
    const double n_over_vol = static_cast<double>(comb.size()) / ball_volume(2, 15.0);
    const double w2 = comb.weight_bound() * comb.weight_bound();
    for (const auto& e : table.entries) {
      const auto mirror = table.at(-e.z);
      REQUIRE(mirror.has_value());
      CHECK(*mirror == std::conj(e.value));  // bit-exact
      CHECK(std::abs(e.value) <= n_over_vol * w2 * (1.0 + 1e-12));
    }
    const auto origin = table.at(LatticeVector{0, 0});
    CHECK(origin->imag() == 0.0);
    CHECK(origin->real() >= 0.0);
  }
}

TEST_CASE("property: Gram matrices of pair_in_window tables are positive semidefinite") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> size(2, 8);
  for (const Lattice& lat : {square(), hexagonal()}) {
    for (const auto& comb : {random_complex_comb(lat, 12.0, 3), generate(WeightRule::bernoulli(0.4, 8), lat, 12.0)}) {
      const auto table = autocorrelation(comb, 24.0 / 2.0);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<LatticeVector> pick;
        const int m = size(rng);
        for (int i = 0; i < m; ++i) pick.push_back(LatticeVector{coord(rng), coord(rng)});
        CHECK(min_gram_eigenvalue(table, pick) >= -1e-8 * table.at_origin());
      }
    }
  }
  // single_window tables are not positive definite in general; only check the call
  const auto comb = random_complex_comb(square(), 6.0, 1);
  const auto single = autocorrelation(comb, 2.0, Variant::single_window);
  const std::vector<LatticeVector> pick{LatticeVector{0, 0}, LatticeVector{1, 0}};
  CHECK(std::isfinite(min_gram_eigenvalue(single, pick)));
  const std::vector<LatticeVector> far{LatticeVector{0, 0}, LatticeVector{5, 0}};
  CHECK_THROWS_AS(min_gram_eigenvalue(single, far), InvalidArgument);
}

TEST_CASE("bump function") {
  const auto bump = make_bump(square());
  const double eps = bump.epsilon();
  CHECK(eps == doctest::Approx(0.125));
  CHECK(bump(Vector::Zero(2)) == bump.c0());
  CHECK(bump(make_vector({eps / 2.0, 0.0})) == doctest::Approx(bump.c0() * std::exp(-1.0 / 3.0)).epsilon(1e-14));
  CHECK(bump(make_vector({0.0, eps})) == 0.0);
  CHECK(bump(make_vector({eps, eps})) == 0.0);
  CHECK(std::abs(bump.l2_norm_squared() - 1.0) <= 1e-12);

  // independent radial quadrature of ||phi(./eps)||_2^2 in 2D: 2 pi eps^2 int_0^1 phi^2 rho d rho
  const int steps = 200000;
  double integral = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double rho = (i + 0.5) / steps;
    const double phi = std::exp(rho * rho / (rho * rho - 1.0));
    integral += phi * phi * rho / steps;
  }
  const double c0_radial = 1.0 / std::sqrt(2.0 * std::numbers::pi * eps * eps * integral);
  CHECK(bump.c0() == doctest::Approx(c0_radial).epsilon(1e-6));
  CHECK(bump.self_convolution(Vector::Zero(2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bump.self_convolution(make_vector({2.0 * eps, 0.0})) == 0.0);

  CHECK_THROWS_AS(make_bump(square(), 0.26), EpsilonTooLarge);
  CHECK_NOTHROW(make_bump(square(), 0.25));
}

TEST_CASE("regularized autocorrelation interpolates nu on the lattice") {
  const auto comb = generate(WeightRule::bernoulli(0.5, 12), square(), 40.0);
  const auto bump = make_bump(square());
  for (const auto& t : enumerate_ball(square(), 5.0)) {
    const Complex g = regularized_autocorr(comb, bump, square().cartesian(t));
    const Complex nu = autocorr_coefficient(comb, t);
    CHECK(std::abs(g - nu) <= 1e-4 * std::max(1.0, std::abs(nu)));
  }
  // midpoint between neighbours and points far from every lattice vector
  CHECK(regularized_autocorr(comb, bump, make_vector({0.5, 0.0})) == Complex{});
  CHECK(regularized_autocorr(comb, bump, make_vector({2.5, 1.5})) == Complex{});
  CHECK(regularized_autocorr(comb, bump, make_vector({1.0 + 2.1 * bump.epsilon(), 0.0})) == Complex{});

  const BumpFunction wide(2, 0.3);
  CHECK_THROWS_AS(regularized_autocorr(comb, wide, make_vector({0.0, 0.0})), EpsilonTooLarge);
}

TEST_CASE("property: regularized autocorrelation obeys the Lipschitz bound") {
  const auto comb = generate(WeightRule::bernoulli(0.5, 4), hexagonal(), 20.0);
  const auto bump = make_bump(hexagonal(), std::nullopt, 48);
  const double n_over_vol = static_cast<double>(comb.size()) / ball_volume(2, 20.0);
  const double w2 = comb.weight_bound() * comb.weight_bound();
  const double lipschitz = n_over_vol * w2 * bump.l1_norm() * bump.lipschitz_constant();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double delta = bump.epsilon() / 10.0;
  const std::vector<LatticeVector> centres{LatticeVector{0, 0}, LatticeVector{1, 0}, LatticeVector{-1, 2}};
  for (const auto& c : centres) {
    for (int i = 0; i < 30; ++i) {
      const Vector x = hexagonal().cartesian(c) + make_vector({u(rng), u(rng)}) * bump.epsilon();
      Vector step = make_vector({u(rng), u(rng)});
      step *= delta / std::max(step.norm(), 1e-12);
      const double diff = std::abs(regularized_autocorr(comb, bump, x) - regularized_autocorr(comb, bump, x + step));
      CHECK(diff <= lipschitz * step.norm() * (1.0 + 1e-9));
    }
  }
}
