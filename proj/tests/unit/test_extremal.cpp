#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hdiff/extremal.hpp"
#include "hdiff/grid.hpp"
#include "oracles.hpp"

using hdiff::Complex;
using hdiff::DiskSelfMap;
using hdiff::ExtremalSpec;

namespace {

constexpr double kPi = std::numbers::pi;

ExtremalSpec spec_of(DiskSelfMap mu, double R = 1.0, Complex a = {}, double theta = 0.0,
                     hdiff::ShiftConvention conv = hdiff::ShiftConvention::minus) {
  return {std::move(mu), R, a, theta, conv};
}

std::vector<DiskSelfMap> suite_maps() {
  return {DiskSelfMap::zero(),          DiskSelfMap::monomial(1),
          DiskSelfMap::monomial(2),     DiskSelfMap::monomial(3),
          DiskSelfMap::monomial(4),     DiskSelfMap::scaled_monomial(0.5, 1),
          DiskSelfMap::blaschke(0.3, 0.7), DiskSelfMap::constant({0.4, 0.2})};
}

}  // namespace

TEST_CASE("eval_normalized examples") {
  CHECK(std::abs(hdiff::eval_normalized(spec_of(DiskSelfMap::zero()), {0.3, 0.4}) -
                 Complex{0.3, 0.4}) < 1e-15);
  CHECK(hdiff::eval_normalized(spec_of(DiskSelfMap::monomial(2)), 0.0) == Complex{});

  // Oracle: composite Simpson at 10^6 intervals of both real integrals.
  const double g = hdiff::testing::composite_simpson<double>(
      [](double t) { return 1.0 / (1.0 + t * t * t * t); }, 0.0, 0.9, 1'000'000);
  const double h = hdiff::testing::composite_simpson<double>(
      [](double t) { return t * t / (1.0 + t * t * t * t); }, 0.0, 0.9, 1'000'000);
  CHECK(std::abs(g - 0.81183477437716587) < 1e-14);
  CHECK(std::abs(h - 0.19410415032002828) < 1e-14);
  const Complex f = hdiff::eval_normalized(spec_of(DiskSelfMap::monomial(2)), 0.9);
  CHECK(std::abs(f - (g + h)) < 1e-13);
  CHECK(std::abs(f.imag()) < 1e-15);

  const Complex f2 = hdiff::eval_normalized(spec_of(DiskSelfMap::zero(), 2.5), {0.1, -0.2});
  CHECK(std::abs(f2 - 2.5 * Complex{0.1, -0.2}) < 1e-15);
}

TEST_CASE("eval_normalized domain and convergence errors") {
  CHECK_THROWS_AS(hdiff::eval_normalized(spec_of(DiskSelfMap::zero()), 0.9999999999),
                  hdiff::DomainError);
  CHECK_THROWS_AS(hdiff::eval_normalized(spec_of(DiskSelfMap::zero(), 1.0, 0.1), 0.5),
                  hdiff::DomainError);
  CHECK_THROWS_AS(hdiff::eval_normalized(spec_of(DiskSelfMap::zero(), -1.0), 0.5),
                  hdiff::ValidationFailed);
  // Straight at a corner preimage of the square at the evaluation cap.
  const Complex corner = std::polar(1.0 - 2e-9, kPi / 4);
  CHECK_THROWS_AS(hdiff::eval_normalized(spec_of(DiskSelfMap::monomial(2)), corner),
                  hdiff::NonConvergence);
  CHECK_THROWS_AS(hdiff::eval_normalized(spec_of(DiskSelfMap::monomial(2)), std::polar(1.0, kPi / 4)),
                  hdiff::DomainError);
  // Between corners the integrand stays bounded and the cap is reachable.
  CHECK_NOTHROW(hdiff::eval_normalized(spec_of(DiskSelfMap::monomial(2)), hdiff::kInteriorCap));
}

TEST_CASE("eval_shifted examples") {
  const auto pts = hdiff::random_disk_points(30, 0.9, 11);
  const auto mono = spec_of(DiskSelfMap::monomial(2));
  for (const Complex z : pts) CHECK(hdiff::eval_shifted(mono, z) == hdiff::eval_normalized(mono, z));

  const auto shifted = spec_of(DiskSelfMap::zero(), 1.0, 0.5);
  CHECK(std::abs(hdiff::eval_shifted(shifted, 0.5)) < 1e-16);
  CHECK(std::abs(hdiff::eval_shifted(shifted, 0.0) - (-0.5)) < 1e-15);
}

TEST_CASE("jet examples") {
  auto j = hdiff::jet(spec_of(DiskSelfMap::zero()), {0.2, 0.7});
  CHECK(j.f_z == Complex{1.0});
  CHECK(j.f_zbar == Complex{});
  CHECK(j.jacobian == 1.0);

  j = hdiff::jet(spec_of(DiskSelfMap::monomial(2)), 0.0);
  CHECK(j.f_z == Complex{1.0});
  CHECK(j.f_zbar == Complex{});

  // mu = z^2: F_z = R / (1 + z^4), F_zbar = R z^2 / (1 + z^4) at z = 0.5.
  j = hdiff::jet(spec_of(DiskSelfMap::monomial(2)), 0.5);
  CHECK(std::abs(j.f_z - 1.0 / 1.0625) < 1e-15);
  CHECK(std::abs(j.f_zbar - 0.25 / 1.0625) < 1e-15);
  CHECK(j.f_z.real() == doctest::Approx(0.941176).epsilon(1e-6));
  CHECK(j.f_zbar.real() == doctest::Approx(0.235294).epsilon(1e-6));
  CHECK(j.jacobian == doctest::Approx(std::norm(j.f_z) - std::norm(j.f_zbar)));
  CHECK(j.dilatation < 1.0);
  CHECK_FALSE(j.value.has_value());

  j = hdiff::jet(spec_of(DiskSelfMap::monomial(2)), 0.9, true);
  REQUIRE(j.value.has_value());
  CHECK(std::abs(*j.value - hdiff::eval_normalized(spec_of(DiskSelfMap::monomial(2)), 0.9)) == 0.0);
}

TEST_CASE("jet follows the closed forms for general n") {
  for (int n = 1; n <= 4; ++n) {
    const auto s = spec_of(DiskSelfMap::monomial(n), 1.7);
    for (const Complex z : hdiff::random_disk_points(100, 0.95, 100 + n)) {
      const Complex zn = std::pow(z, n), zn2 = std::pow(z, n + 2);
      const auto j = hdiff::jet(s, z);
      CHECK(std::abs(j.f_z - 1.7 / (1.0 + zn2)) < 1e-12);
      CHECK(std::abs(std::conj(j.f_zbar) - 1.7 * zn / (1.0 + zn2)) < 1e-12);
    }
  }
}

TEST_CASE("beltrami_residual examples") {
  for (const auto& mu : suite_maps())
    CHECK(hdiff::beltrami_residual(spec_of(mu), {0.3, -0.6}) < 1e-14);
  CHECK(hdiff::beltrami_residual(spec_of(DiskSelfMap::blaschke(0.3, 0.0)), {0.0, 0.7}) < 1e-14);

  // Finite-difference jet of the quadrature-evaluated map.
  const auto s = spec_of(DiskSelfMap::monomial(3));
  const auto fd = hdiff::wirtinger_fd([&](Complex w) { return hdiff::eval_normalized(s, w); }, 0.4, 1e-5);
  const auto fd_jet = hdiff::MapJet::from_derivatives(fd.f_z, fd.f_zbar);
  CHECK(hdiff::beltrami_residual(fd_jet, DiskSelfMap::monomial(3)(0.4)) < 1e-8);
}

TEST_CASE("Beltrami identity holds across the suite") {
  const auto grid = hdiff::polar_grid();
  for (const auto& mu : suite_maps()) {
    for (const auto& s : {spec_of(mu), spec_of(mu, 2.0, {0.3, -0.6}, 0.4),
                          spec_of(mu, 0.5, 0.5, 1.0, hdiff::ShiftConvention::plus)}) {
      double worst = 0.0;
      for (const Complex z : grid) worst = std::max(worst, hdiff::beltrami_residual(s, z));
      INFO(mu.to_string());
      CHECK(worst < 1e-13);
    }
  }
}

TEST_CASE("closed-form jets agree with finite differences of the values") {
  for (const auto& mu : suite_maps()) {
    for (const auto& s : {spec_of(mu), spec_of(mu, 1.3, {0.2, 0.1}, 0.3)}) {
      double worst = 0.0;
      for (const Complex z : hdiff::random_disk_points(40, 0.9, 5)) {
        const auto fd = hdiff::wirtinger_fd([&](Complex w) { return hdiff::eval_shifted(s, w); }, z, 1e-5);
        const auto j = hdiff::jet(s, z);
        worst = std::max({worst, std::abs(fd.f_z - j.f_z), std::abs(fd.f_zbar - j.f_zbar)});
      }
      INFO(mu.to_string());
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("schwarz_pick_margin examples") {
  CHECK(hdiff::schwarz_pick_margin(spec_of(DiskSelfMap::zero()), 0.0) == 1.0);
  CHECK(hdiff::schwarz_pick_margin(spec_of(DiskSelfMap::zero()), 0.5) == doctest::Approx(0.75));
  const double m = hdiff::schwarz_pick_margin(spec_of(DiskSelfMap::monomial(2)), 0.5);
  CHECK(std::abs(m - 0.75 / 1.0625) < 1e-15);
  CHECK(m == doctest::Approx(0.705882).epsilon(1e-6));
  // |1 + z^2 mu| >= 1 - |z|^2 keeps the margin at most 1.
  CHECK(std::abs(1.0 + 0.25 * 0.25) >= 1.0 - 0.25);
}

TEST_CASE("margin is sharp: at most 1, and 1 at the equality point") {
  const auto grid = hdiff::polar_grid();
  for (const auto& mu : suite_maps()) {
    for (const Complex a : {Complex{}, Complex{0.5, 0.0}, Complex{0.3, -0.6}}) {
      for (auto conv : {hdiff::ShiftConvention::minus, hdiff::ShiftConvention::plus}) {
        const auto s = spec_of(mu, 1.4, a, 0.9, conv);
        const auto scan = hdiff::margin_scan(s, grid);
        INFO(mu.to_string(), " a=", a.real(), ",", a.imag());
        CHECK(scan.holds);
        CHECK(scan.max_margin <= 1.0 + 1e-12);
        const Complex p = hdiff::equality_point(s);
        CHECK(std::abs(hdiff::schwarz_pick_margin(s, p) - 1.0) < 1e-10);
        CHECK(std::abs(hdiff::eval_shifted(s, p)) < 1e-15);
      }
    }
  }
}

TEST_CASE("shifted normalization: g(a) = 0 and g_z(a) = e^{i theta} R / (1 - |a|^2)") {
  const Complex a{0.3, -0.6};
  const double theta = 0.8, R = 1.7;
  const auto s = spec_of(DiskSelfMap::blaschke(0.3, 0.7), R, a, theta);
  const auto j = hdiff::jet(s, a, true);
  CHECK(std::abs(*j.value) < 1e-15);
  CHECK(std::abs(j.f_z - std::polar(1.0, theta) * R / (1.0 - std::norm(a))) < 1e-13);

  const auto t = spec_of(DiskSelfMap::blaschke(0.3, 0.7), R, a, theta, hdiff::ShiftConvention::plus);
  CHECK(hdiff::equality_point(t) == -a);
  const auto jt = hdiff::jet(t, -a, true);
  CHECK(std::abs(*jt.value) < 1e-15);
  CHECK(std::abs(jt.f_z - std::polar(1.0, -theta) * R / (1.0 - std::norm(a))) < 1e-13);
}

TEST_CASE("normalization of the initial value problem") {
  for (const auto& mu : suite_maps()) {
    const auto s = spec_of(mu, 2.0);
    CHECK(hdiff::eval_normalized(s, 0.0) == Complex{});
    const auto j = hdiff::jet(s, 0.0);
    CHECK(j.f_z == Complex{2.0});
    CHECK(std::abs(j.f_zbar - std::conj(2.0 * mu(0.0))) < 1e-15);
  }
}

TEST_CASE("rotational equivariance of the polygon maps") {
  for (int n = 1; n <= 4; ++n) {
    const auto s = spec_of(DiskSelfMap::monomial(n));
    const Complex omega = std::polar(1.0, 2.0 * kPi / (n + 2));
    for (const Complex z : hdiff::random_disk_points(50, 0.99, 7 + n))
      CHECK(std::abs(hdiff::eval_normalized(s, omega * z) - omega * hdiff::eval_normalized(s, z)) < 1e-12);
  }
}

TEST_CASE("path independence of the defining integrals") {
  for (const auto& mu : suite_maps()) {
    const auto s = spec_of(mu);
    for (const Complex z : hdiff::random_disk_points(20, 0.9, 21)) {
      const Complex w = 0.5 * z + Complex{0.0, 0.1} * z;  // off the straight segment
      auto integrand = [&](Complex t) -> hdiff::ComplexPair {
        const Complex m = mu(t);
        const Complex inv = 1.0 / (1.0 + t * t * m);
        return {inv, m * inv};
      };
      const auto leg1 = hdiff::integrate_segment_pair(integrand, 0.0, w);
      const auto leg2 = hdiff::integrate_segment_pair(integrand, w, z);
      const Complex two_leg = leg1.value[0] + leg2.value[0] + std::conj(leg1.value[1] + leg2.value[1]);
      CHECK(std::abs(two_leg - hdiff::eval_normalized(s, z)) < 1e-12);
    }
  }
}

TEST_CASE("bilipschitz_report") {
  const auto grid = hdiff::random_disk_points(1000, 0.999, 1);
  SUBCASE("zero") {
    const auto r = hdiff::bilipschitz_report(spec_of(DiskSelfMap::zero()), grid);
    CHECK(r.min_lower == 1.0);
    CHECK(r.max_upper == 1.0);
    CHECK(r.K == 1.0);
    CHECK(r.holds);
  }
  SUBCASE("scaled monomial k = 0.5") {
    const auto r = hdiff::bilipschitz_report(spec_of(DiskSelfMap::scaled_monomial(0.5, 1)), grid);
    CHECK(r.k == 0.5);
    CHECK(r.K == doctest::Approx(3.0));
    CHECK(r.min_lower >= 1.0 / 3.0 - 1e-12);
    CHECK(r.max_upper <= 3.0 + 1e-12);
    CHECK(r.holds);
  }
  SUBCASE("constant 0.5: |f_z| - |f_zbar| = 0.5 / |1 + 0.5 z^2|") {
    const auto r = hdiff::bilipschitz_report(spec_of(DiskSelfMap::constant(0.5)), grid);
    double brute = INFINITY;
    for (const Complex z : grid) brute = std::min(brute, 0.5 / std::abs(1.0 + 0.5 * z * z));
    CHECK(r.min_lower == doctest::Approx(brute).epsilon(1e-14));
    CHECK(r.min_lower >= 1.0 / 3.0);
    CHECK(r.min_lower <= 1.0);
  }
  SUBCASE("hypothesis violations") {
    CHECK_THROWS_AS(hdiff::bilipschitz_report(spec_of(DiskSelfMap::monomial(2)), grid),
                    hdiff::HypothesisViolated);
    CHECK_THROWS_AS(hdiff::bilipschitz_report(spec_of(DiskSelfMap::zero(), 1.0, 0.2), grid),
                    hdiff::HypothesisViolated);
  }
}

TEST_CASE("dnorm_report") {
  const auto grid = hdiff::polar_grid();
  const auto r0 = hdiff::dnorm_report(spec_of(DiskSelfMap::zero()), grid);
  CHECK(r0.min_dnorm_sq == 1.0);
  CHECK(r0.lower_bound == 0.5);
  CHECK(r0.holds);

  // Dense grid for mu = z: the brute-force minimum of (1 + |z|^2) / |1 + z^3|^2.
  const auto dense = hdiff::polar_grid(200, 720, 0.999, true);
  const auto r1 = hdiff::dnorm_report(spec_of(DiskSelfMap::monomial(1)), dense);
  double brute = INFINITY;
  for (const Complex z : dense) brute = std::min(brute, (1.0 + std::norm(z)) / std::norm(1.0 + z * z * z));
  CHECK(r1.min_dnorm_sq == doctest::Approx(brute).epsilon(1e-13));
  CHECK(r1.min_dnorm_sq >= 0.5);
  CHECK(std::abs(r1.argmin) > 0.9);

  // |c| = 0.99 with z^2 c real positive near the boundary approaches 1/2.
  const Complex c = std::polar(0.99, 0.6);
  const Complex z = std::polar(hdiff::kInteriorCap, -0.3);
  const auto j = hdiff::jet(spec_of(DiskSelfMap::constant(c)), z);
  CHECK(j.dnorm_sq == doctest::Approx((1.0 + 0.99 * 0.99) / (1.99 * 1.99)).epsilon(1e-8));
  CHECK(std::abs(j.dnorm_sq - 0.5) < 0.01 * 0.5);

  for (int n = 1; n <= 4; ++n)
    CHECK(hdiff::dnorm_report(spec_of(DiskSelfMap::monomial(n), 2.0), grid).holds);
  CHECK_THROWS_AS(hdiff::dnorm_report(spec_of(DiskSelfMap::zero(), 1.0, 0.5), grid),
                  hdiff::HypothesisViolated);
}

TEST_CASE("margin_scan ties resolve to the lowest grid index") {
  const std::vector<Complex> grid{0.5, 0.0, Complex{0.0, 0.5}, 0.0};
  const auto scan = hdiff::margin_scan(spec_of(DiskSelfMap::zero()), grid);
  CHECK(scan.argmax_index == 1);
  CHECK(scan.max_margin == 1.0);
}
