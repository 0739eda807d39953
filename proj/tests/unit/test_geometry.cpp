#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hdiff/geometry.hpp"
#include "hdiff/grid.hpp"
#include "json.hpp"
#include "oracles.hpp"

using hdiff::Complex;
using hdiff::DiskSelfMap;
using hdiff::ExtremalSpec;
using hdiff::TracedCurve;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearBoundary = 1.0 - 1e-4;

TracedCurve circle_curve(double radius, std::size_t count) {
  return hdiff::trace([radius](Complex z) { return radius * z / std::abs(z); }, 0.5, count, "circle");
}

std::vector<ExtremalSpec> suite_specs() {
  std::vector<ExtremalSpec> out;
  for (const auto& mu : {DiskSelfMap::zero(), DiskSelfMap::monomial(1), DiskSelfMap::monomial(2),
                         DiskSelfMap::monomial(3), DiskSelfMap::monomial(4),
                         DiskSelfMap::scaled_monomial(0.5, 1), DiskSelfMap::blaschke(0.3, 0.7),
                         DiskSelfMap::constant({0.4, 0.2})})
    out.push_back({mu});
  return out;
}

// Area of F(U) as the integral of |g'|^2 - |h'|^2 over the disk, with
// g' = 1 - z^2 h', by composite Simpson in polar coordinates.
double jacobian_area_oracle(const std::vector<Complex>& a) {
  auto hp = [&](Complex z) {
    Complex d{};
    for (std::size_t k = a.size(); k-- > 1;) d = d * z + static_cast<double>(k) * a[k];
    return d;
  };
  auto ring = [&](double r) {
    return r * hdiff::testing::composite_simpson<double>(
                   [&](double t) {
                     const Complex z = std::polar(r, t);
                     const Complex h = hp(z);
                     return std::norm(1.0 - z * z * h) - std::norm(h);
                   },
                   0.0, 2.0 * kPi, 256);
  };
  return hdiff::testing::composite_simpson<double>(ring, 0.0, 1.0, 256);
}

}  // namespace

TEST_CASE("trace examples") {
  const auto c = hdiff::trace(ExtremalSpec{DiskSelfMap::zero()}, 0.5, 64);
  REQUIRE(c.count() == 64);
  CHECK(c.r == 0.5);
  for (std::size_t j = 0; j < c.count(); ++j)
    CHECK(std::abs(c.points[j] - std::polar(0.5, c.parameter(j))) < 1e-15);

  CHECK_THROWS_AS(hdiff::trace(ExtremalSpec{DiskSelfMap::zero()}, 0.5, 100), hdiff::BadLength);
  CHECK_THROWS_AS(hdiff::trace(ExtremalSpec{DiskSelfMap::zero()}, 0.5, 32), hdiff::BadLength);
  CHECK_THROWS_AS(hdiff::trace(ExtremalSpec{DiskSelfMap::zero()}, 1.0, 64), hdiff::ValidationFailed);
  CHECK_THROWS_AS(hdiff::trace(ExtremalSpec{DiskSelfMap::zero()}, 0.0, 64), hdiff::ValidationFailed);

  // Ellipse series near the boundary.
  const auto s = hdiff::poisson_extend(hdiff::BoundaryFunction::ellipse(0.5, 64));
  const auto e = hdiff::trace(s, 1.0 - 1e-6, 1024);
  for (std::size_t j = 0; j < e.count(); j += 97) {
    const double t = e.parameter(j);
    CHECK(std::abs(e.points[j] - Complex{std::cos(t), 0.5 * std::sin(t)}) < 2e-6);
  }
  CHECK(hdiff::dist_origin(e) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(hdiff::convexity(e).convex);
}

TEST_CASE("perimeter examples") {
  CHECK(hdiff::perimeter(circle_curve(0.5, 4096)) == doctest::Approx(kPi).epsilon(1e-6));
  const auto c = hdiff::trace(ExtremalSpec{DiskSelfMap::zero(), 2.0}, 0.999, 4096);
  CHECK(std::abs(hdiff::perimeter(c) - 2.0 * kPi * 2.0 * 0.999) < 1e-5);
}

TEST_CASE("convexity examples") {
  CHECK(hdiff::convexity(circle_curve(1.0, 256)).convex);
  CHECK(hdiff::convexity(circle_curve(1.0, 256)).turning_number == 1);

  const auto sq = hdiff::trace(ExtremalSpec{DiskSelfMap::monomial(2)}, 0.999, 4096);
  CHECK(hdiff::convexity(sq).convex);

  const auto twice = hdiff::trace([](Complex z) { return z * z / std::norm(z); }, 0.5, 256, "double");
  const auto rep = hdiff::convexity(twice);
  CHECK(rep.turning_number == 2);
  CHECK_FALSE(rep.convex);

  // Clockwise circle: turning number -1 and still convex.
  const auto cw = hdiff::trace([](Complex z) { return std::conj(z); }, 0.5, 128, "clockwise");
  CHECK(hdiff::convexity(cw).turning_number == -1);
  CHECK(hdiff::convexity(cw).convex);
  CHECK(hdiff::area(cw) < 0.0);

  // A dented circle has a reflex vertex.
  auto dented = circle_curve(1.0, 128);
  dented.points[40] *= 0.9;
  const auto d = hdiff::convexity(dented);
  CHECK_FALSE(d.convex);
  REQUIRE(d.first_violation.has_value());
  CHECK(*d.first_violation == 40);

  auto degenerate = circle_curve(1.0, 64);
  degenerate.points[10] = degenerate.points[9];
  CHECK_THROWS_AS(hdiff::convexity(degenerate), hdiff::DegenerateEdge);
}

TEST_CASE("area examples") {
  CHECK(hdiff::area(circle_curve(1.0, 1 << 14)) == doctest::Approx(kPi).epsilon(1e-6));
  TracedCurve square;
  square.points = {{0.0, 0.0}, {1.5, 0.0}, {1.5, 1.5}, {0.0, 1.5}};
  CHECK(hdiff::area(square) == 2.25);
  CHECK(hdiff::perimeter(square) == 6.0);
  CHECK(hdiff::dist_origin(square) == 0.0);
}

TEST_CASE("polygon traces of the square map") {
  const auto sq = hdiff::trace(ExtremalSpec{DiskSelfMap::monomial(2)}, kNearBoundary, 1 << 14);
  const auto rep = hdiff::analyze(sq);
  // Regular 4-gon with perimeter 2 pi: side pi/2, area pi^2/4, apothem pi/4.
  CHECK(rep.convex);
  CHECK(rep.turning_number == 1);
  CHECK(rep.perimeter == doctest::Approx(2.0 * kPi).epsilon(0.01));
  CHECK(rep.area == doctest::Approx(kPi * kPi / 4.0).epsilon(0.01));
  CHECK(rep.dist_origin == doctest::Approx(kPi / 4.0).epsilon(0.01));
  CHECK(rep.count == 1u << 14);

  const ExtremalSpec spec{DiskSelfMap::monomial(2)};
  const double defect = hdiff::rotational_symmetry_defect(
      [&](Complex z) { return hdiff::eval_normalized(spec, z); }, sq, 4);
  CHECK(defect < 1e-6);
}

TEST_CASE("perimeter of the triangle map at r = 1 - 1e-4") {
  const auto tri = hdiff::trace(ExtremalSpec{DiskSelfMap::monomial(1)}, kNearBoundary, 1 << 14);
  CHECK(hdiff::perimeter(tri) == doctest::Approx(2.0 * kPi).epsilon(0.01));
  CHECK(hdiff::convexity(tri).convex);
}

TEST_CASE("rotational symmetry defect is zero only for the right fold") {
  for (int n = 1; n <= 4; ++n) {
    const ExtremalSpec spec{DiskSelfMap::monomial(n)};
    auto f = [&](Complex z) { return hdiff::eval_normalized(spec, z); };
    const auto c = hdiff::trace(spec, 0.99, 256);
    CHECK(hdiff::rotational_symmetry_defect(f, c, n + 2) < 1e-12);
    CHECK(hdiff::rotational_symmetry_defect(f, c, n + 3) > 1e-3);
  }
  CHECK_THROWS_AS(hdiff::rotational_symmetry_defect([](Complex z) { return z; }, circle_curve(1.0, 64), 0),
                  hdiff::ValidationFailed);
}

TEST_CASE("dist_origin examples") {
  CHECK(hdiff::dist_origin(circle_curve(2.0, 1 << 14)) == doctest::Approx(2.0).epsilon(1e-6));
  // Segment projection, not just vertices.
  TracedCurve tri;
  tri.points = {{1.0, -1.0}, {1.0, 1.0}, {-2.0, 0.0}};
  CHECK(hdiff::dist_origin(tri) == doctest::Approx(2.0 / std::sqrt(10.0)).epsilon(1e-15));
}

TEST_CASE("isoperimetric inequality on traced curves") {
  for (const auto& spec : suite_specs()) {
    for (double r : {0.3, 0.9, 0.999}) {
      const auto c = hdiff::trace(spec, r, 2048);
      const double L = hdiff::perimeter(c), A = hdiff::area(c);
      INFO(spec.mu.to_string(), " r=", r);
      CHECK(4.0 * kPi * A <= L * L * (1.0 + 1e-9));
      if (std::holds_alternative<DiskSelfMap::Zero>(spec.mu.variant()))
        CHECK(4.0 * kPi * A == doctest::Approx(L * L).epsilon(1e-5));
      else if (r > 0.5)
        CHECK(4.0 * kPi * A < L * L * (1.0 - 1e-6));
    }
  }
}

TEST_CASE("perimeter grows with r and stays below 2 pi R") {
  for (const auto& base : suite_specs()) {
    ExtremalSpec spec = base;
    spec.R = 1.5;
    double prev = 0.0;
    for (double r : {0.2, 0.5, 0.8, 0.95, 0.99, 0.999}) {
      const double L = hdiff::perimeter(hdiff::trace(spec, r, 4096));
      INFO(spec.mu.to_string(), " r=", r);
      CHECK(L >= prev);
      CHECK(L <= 2.0 * kPi * spec.R * (1.0 + 1e-6));
      prev = L;
    }
  }
}

TEST_CASE("dist_origin fits inside the perimeter bound and the |DF|^2 chain") {
  const auto grid = hdiff::polar_grid();
  for (const auto& spec : suite_specs()) {
    const auto c = hdiff::trace(spec, 0.999, 4096);
    const double rho = hdiff::dist_origin(c);
    INFO(spec.mu.to_string());
    CHECK(rho <= hdiff::perimeter(c) / (2.0 * kPi));
    const auto d = hdiff::dnorm_report(spec, grid);
    CHECK(d.min_dnorm_sq >= spec.R * spec.R / 2.0 - 1e-12);
    CHECK(spec.R * spec.R / 2.0 >= rho * rho / 2.0);
  }
}

TEST_CASE("convexity of extremal traces near the boundary") {
  for (const auto& spec : suite_specs()) {
    if (std::holds_alternative<DiskSelfMap::BlaschkeFactor>(spec.mu.variant())) continue;
    INFO(spec.mu.to_string());
    CHECK(hdiff::convexity(hdiff::trace(spec, kNearBoundary, 4096)).convex);
  }
}

TEST_CASE("level curves of a Blaschke extremal have an inflection near a vertex") {
  // |mu| = 1 on the circle, so F(T) is a triangle; the level curves F(r T)
  // bend backwards slightly, for instance near t = 5.103, for every r close to 1.
  const ExtremalSpec spec{DiskSelfMap::blaschke(0.3, 0.7)};
  auto tangent_arg = [&](double r, double t) {
    const Complex z = std::polar(r, t);
    const auto j = hdiff::jet(spec, z);
    return std::arg(Complex{0.0, 1.0} * (z * j.f_z - std::conj(z) * j.f_zbar));
  };
  for (double r : {0.999, kNearBoundary, 1.0 - 1e-6}) {
    const double dt = 1e-4;
    const double rate = std::remainder(tangent_arg(r, 5.1034 + dt) - tangent_arg(r, 5.1034 - dt), 2.0 * kPi) / (2.0 * dt);
    CHECK(rate < -0.01);
    const auto c = hdiff::trace(spec, r, 4096);
    const auto rep = hdiff::convexity(c);
    CHECK(rep.turning_number == 1);
    CHECK_FALSE(rep.convex);
    CHECK(rep.first_violation.has_value());
  }
}

TEST_CASE("area_series_check") {
  SUBCASE("h = 0 gives the unit disk") {
    const auto r = hdiff::area_series_check(std::vector<Complex>{}, 1.0);
    CHECK(r.derived == kPi);
    CHECK(r.alternative_formula == kPi);
    CHECK(r.oracle == doctest::Approx(kPi).epsilon(1e-8));
    const auto z = hdiff::area_series_check(std::vector<Complex>{0.0}, 1.0);
    CHECK(z.derived == kPi);
    CHECK(z.alternative_formula == kPi);
  }
  SUBCASE("linear and quadratic h") {
    for (const auto& h : {std::vector<Complex>{0.0, 0.1}, std::vector<Complex>{0.0, 0.0, 0.1},
                          std::vector<Complex>{0.05, Complex{0.0, 0.08}, 0.0, 0.02}}) {
      const auto r = hdiff::area_series_check(h, 1.0);
      const double independent = jacobian_area_oracle(h);
      CHECK(std::abs(r.derived - r.oracle) < 1e-6 * r.oracle);
      CHECK(std::abs(r.derived - independent) < 1e-8 * independent);
    }
    const auto lin = hdiff::area_series_check(std::vector<Complex>{0.0, 0.1}, 1.0);
    CHECK(lin.derived == doctest::Approx(kPi * (1.0 - 0.02 / 3.0)).epsilon(1e-15));
    const auto quad = hdiff::area_series_check(std::vector<Complex>{0.0, 0.0, 0.1}, 1.0);
    CHECK(quad.derived == doctest::Approx(kPi * (1.0 - 0.01)).epsilon(1e-15));
  }
  SUBCASE("R scales area quadratically") {
    const auto r1 = hdiff::area_series_check(std::vector<Complex>{0.0, 0.1}, 1.0);
    const auto r3 = hdiff::area_series_check(std::vector<Complex>{0.0, 0.1}, 3.0);
    CHECK(r3.derived == doctest::Approx(9.0 * r1.derived));
    CHECK(r3.oracle == doctest::Approx(9.0 * r1.oracle));
  }
  SUBCASE("dilatation condition") {
    CHECK_THROWS_AS(hdiff::area_series_check(std::vector<Complex>{0.0, 0.6}, 1.0),
                    hdiff::HypothesisViolated);
    CHECK_THROWS_AS(hdiff::area_series_check(std::vector<Complex>{0.0, 0.1}, -1.0),
                    hdiff::ValidationFailed);
  }
}

TEST_CASE("CSV and JSON serialization") {
  const auto c = hdiff::trace(ExtremalSpec{DiskSelfMap::monomial(3)}, 0.7, 64);
  std::ostringstream out;
  hdiff::write_csv(c, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,re,im");
  std::size_t j = 0;
  while (std::getline(in, line)) {
    char* end = nullptr;
    const double t = std::strtod(line.c_str(), &end);
    const double re = std::strtod(end + 1, &end);
    const double im = std::strtod(end + 1, &end);
    REQUIRE(j < c.count());
    CHECK(t == c.parameter(j));
    CHECK(re == c.points[j].real());
    CHECK(im == c.points[j].imag());
    ++j;
  }
  CHECK(j == c.count());

  const auto rep = hdiff::analyze(c);
  const auto parsed = nlohmann::ordered_json::parse(hdiff::to_json(rep));
  std::vector<std::string> keys;
  for (const auto& [k, v] : parsed.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"perimeter", "area", "convex", "dist_origin",
                                         "turning_number", "r", "count"});
  CHECK(parsed["perimeter"].get<double>() == rep.perimeter);
  CHECK(parsed["convex"].get<bool>() == rep.convex);
  CHECK(parsed["count"].get<std::size_t>() == 64);
}
