#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cli.hpp"
#include "hdiff/diskmaps.hpp"
#include "hdiff/geometry.hpp"
#include "hdiff/grid.hpp"
#include "hdiff/poisson.hpp"
#include "json.hpp"

namespace hdiff::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

struct Suite {
  std::vector<Check> checks;

  void abs(std::string module, std::string name, double value, double target, double tol) {
    checks.push_back({std::move(module), std::move(name), value, target, tol, "abs",
                      std::abs(value - target) <= tol});
  }
  void rel(std::string module, std::string name, double value, double target, double tol) {
    checks.push_back({std::move(module), std::move(name), value, target, tol, "rel",
                      std::abs(value - target) <= tol * std::abs(target)});
  }
  void le(std::string module, std::string name, double value, double bound, double tol) {
    checks.push_back({std::move(module), std::move(name), value, bound, tol, "le", value <= bound + tol});
  }
  void ge(std::string module, std::string name, double value, double bound, double tol) {
    checks.push_back({std::move(module), std::move(name), value, bound, tol, "ge", value >= bound - tol});
  }
  void truth(std::string module, std::string name, bool ok) {
    checks.push_back({std::move(module), std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, "true", ok});
  }
};

std::vector<DiskSelfMap> suite_maps() {
  return {DiskSelfMap::zero(),          DiskSelfMap::monomial(1),
          DiskSelfMap::monomial(2),     DiskSelfMap::monomial(3),
          DiskSelfMap::monomial(4),     DiskSelfMap::scaled_monomial(0.5, 1),
          DiskSelfMap::blaschke(0.3, 0.7), DiskSelfMap::constant({0.4, 0.2})};
}

std::string label(const DiskSelfMap& mu) { return mu.to_string(); }

void numerics_checks(Suite& s) {
  const auto quartic = integrate_segment([](Complex t) { return 1.0 / (1.0 + t * t * t * t); }, 0.0, 0.9);
  s.abs("numerics", "integral of 1/(1+t^4) on [0,0.9]", quartic.value.real(), 0.81183477437716587, 1e-13);

  const auto pts = random_disk_points(64, 1.0, 5);
  const auto back = fourier_synthesize(fourier_analyze(pts));
  double worst = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) worst = std::max(worst, std::abs(back[j] - pts[j]));
  s.le("numerics", "fourier round trip", worst, 0.0, 1e-14);

  const auto fd = wirtinger_fd([](Complex z) { return z * z * std::conj(z); }, Complex{0.3, 0.2}, 1e-5);
  const Complex z{0.3, 0.2};
  s.le("numerics", "wirtinger fd of z^2 conj(z)",
       std::max(std::abs(fd.f_z - 2.0 * z * std::conj(z)), std::abs(fd.f_zbar - z * z)), 0.0, 1e-8);
}

void diskmaps_checks(Suite& s) {
  const auto pts = random_disk_points(10'000, 0.999, 42);
  for (const auto& mu : suite_maps()) {
    double worst = 0.0;
    for (const Complex z : pts) worst = std::max(worst, std::abs(mu(z)));
    s.le("diskmaps", "sup |mu| " + label(mu), worst, 1.0, 1e-12);
  }
}

void extremal_checks(Suite& s) {
  const auto grid = polar_grid();

  const ExtremalSpec identity{DiskSelfMap::zero()};
  const MarginScan id_scan = margin_scan(identity, grid);
  double id_dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    id_dev = std::max(id_dev, std::abs(id_scan.field[i] - (1.0 - std::norm(grid[i]))));
  s.le("extremal", "identity margin field = 1-|z|^2", id_dev, 0.0, 1e-12);

  for (const auto& mu : suite_maps()) {
    const ExtremalSpec spec{mu};
    double residual = 0.0;
    for (const Complex z : grid) residual = std::max(residual, beltrami_residual(spec, z));
    s.le("extremal", "beltrami residual " + label(mu), residual, 0.0, 1e-13);
  }

  for (const auto& mu : suite_maps()) {
    for (const Complex a : {Complex{}, Complex{0.5, 0.0}, Complex{0.3, -0.6}}) {
      for (auto conv : {ShiftConvention::minus, ShiftConvention::plus}) {
        const ExtremalSpec spec{mu, 1.0, a, 0.0, conv};
        const std::string tag = fmt::format("{} a={:.17g}{:+.17g}i {}", label(mu), a.real(), a.imag(),
                                            conv == ShiftConvention::minus ? "minus" : "plus");
        s.le("extremal", "max margin " + tag, margin_scan(spec, grid).max_margin, 1.0, 1e-12);
        s.abs("extremal", "margin at equality point " + tag, schwarz_pick_margin(spec, equality_point(spec)),
              1.0, 1e-10);
      }
    }
  }

  const auto random = random_disk_points(200, 0.9, 2024);
  for (const auto& mu : suite_maps()) {
    const ExtremalSpec spec{mu};
    double worst = 0.0;
    for (const Complex z : random) {
      const auto fd = wirtinger_fd([&](Complex w) { return eval_normalized(spec, w); }, z, 1e-5);
      const MapJet j = jet(spec, z);
      worst = std::max({worst, std::abs(fd.f_z - j.f_z), std::abs(fd.f_zbar - j.f_zbar)});
    }
    s.le("extremal", "jet vs finite differences " + label(mu), worst, 0.0, 1e-6);
  }

  const BiLipschitzReport bl = bilipschitz_report(ExtremalSpec{DiskSelfMap::scaled_monomial(0.5, 1)}, grid);
  s.ge("extremal", "bi-lipschitz lower |f_z|-|f_zbar|", bl.min_lower, 1.0 / 3.0, 1e-12);
  s.le("extremal", "bi-lipschitz upper |f_z|+|f_zbar|", bl.max_upper, 3.0, 1e-12);

  for (const auto& mu : suite_maps()) {
    const DNormReport d = dnorm_report(ExtremalSpec{mu}, grid);
    s.ge("extremal", "min |DF|^2 " + label(mu), d.min_dnorm_sq, 0.5, 1e-12);
  }
}

void poisson_checks(Suite& s) {
  const auto grid = polar_grid();
  const std::vector<double> radii{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

  const HarmonicSeries id = poisson_extend(BoundaryFunction::circle(256));
  double stray = 0.0;
  for (int k = id.coefficients().min_index(); k <= id.coefficients().max_index(); ++k)
    if (k != 1) stray = std::max(stray, std::abs(id.coefficient(k)));
  s.abs("poisson", "identity c_1", std::abs(id.coefficient(1) - 1.0), 0.0, 1e-13);
  s.le("poisson", "identity stray coefficients", stray, 0.0, 1e-13);

  const BoundaryFunction ell_b = BoundaryFunction::ellipse(0.5, 8192);
  const HarmonicSeries ell = poisson_extend(ell_b);
  double ell_stray = 0.0;
  for (int k = ell.coefficients().min_index(); k <= ell.coefficients().max_index(); ++k)
    if (k != 1 && k != -1) ell_stray = std::max(ell_stray, std::abs(ell.coefficient(k)));
  s.abs("poisson", "ellipse c_1", std::abs(ell.coefficient(1) - 0.75), 0.0, 1e-13);
  s.abs("poisson", "ellipse c_-1", std::abs(ell.coefficient(-1) - 0.25), 0.0, 1e-13);
  s.le("poisson", "ellipse stray coefficients", ell_stray, 0.0, 1e-13);
  const double L = perimeter_of_boundary(ell_b);
  s.abs("poisson", "ellipse perimeter", L, 4.8442241102738381, 1e-4);
  const SpScan ell_scan = sp_scan(ell, L / kTwoPi, grid);
  s.abs("poisson", "ellipse max margin", ell_scan.max_margin, 0.97283, 1e-4);
  s.abs("poisson", "ellipse argmax |z|", std::abs(ell_scan.argmax), 0.0, 0.0);

  for (const char* text : {"twist:0.3", "twist:-0.6", "ellipse:0.2"}) {
    const BoundaryFunction b = parse_boundary(text, 4096);
    const HarmonicSeries series = poisson_extend(b);
    s.truth("poisson", fmt::format("orientation {}", text), orientation_check(series, grid).passed);
    s.le("poisson", fmt::format("max margin {}", text),
         sp_scan(series, perimeter_of_boundary(b) / kTwoPi, grid).max_margin, 1.0, 1e-9);
  }

  for (const char* text : {"circle", "ellipse:0.5", "twist:0.3", "polygonal:4"}) {
    const HarmonicSeries series = poisson_extend(parse_boundary(text, 4096));
    const auto profile = circle_average_profile(series, radii);
    s.truth("poisson", fmt::format("profile nondecreasing {}", text), is_nondecreasing(profile, 1e-10));
  }
  const std::vector<double> edge{0.999};
  for (const auto& mu : suite_maps()) {
    const ExtremalSpec spec{mu};
    s.truth("poisson", "profile nondecreasing " + label(mu),
            is_nondecreasing(circle_average_profile(spec, radii), 1e-10));
    s.rel("poisson", "profile at r=0.999 " + label(mu), circle_average_profile(spec, edge)[0], 1.0, 0.02);
  }
}

void geometry_checks(Suite& s) {
  const TracedCurve id = trace(ExtremalSpec{DiskSelfMap::zero()}, 0.999, 4096);
  s.abs("geometry", "identity perimeter at r=0.999", perimeter(id), kTwoPi * 0.999, 1e-5);
  s.truth("geometry", "identity convex", convexity(id).convex);

  for (int n = 1; n <= 4; ++n) {
    const ExtremalSpec spec{DiskSelfMap::monomial(n)};
    const TracedCurve c = trace(spec, 1.0 - 1e-4, 1u << 14);
    const CurveReport rep = analyze(c);
    const std::string tag = fmt::format("mono:{}", n);
    s.truth("geometry", "convex " + tag, rep.convex);
    s.rel("geometry", "perimeter " + tag, rep.perimeter, kTwoPi, 0.01);
    s.le("geometry", fmt::format("{}-fold symmetry {}", n + 2, tag),
         rotational_symmetry_defect([&](Complex z) { return eval_normalized(spec, z); }, c, n + 2), 0.0, 1e-6);
    if (n == 2) {
      s.rel("geometry", "area mono:2", rep.area, kPi * kPi / 4.0, 0.01);
      s.rel("geometry", "dist_origin mono:2", rep.dist_origin, kPi / 4.0, 0.01);
    }
  }

  for (const auto& mu : suite_maps()) {
    const TracedCurve c = trace(ExtremalSpec{mu}, 0.999, 4096);
    const double rho = dist_origin(c);
    s.ge("geometry", "R^2/2 >= rho^2/2 " + label(mu), 0.5, 0.5 * rho * rho, 0.0);
    s.le("geometry", "rho <= L/(2 pi) " + label(mu), rho, perimeter(c) / kTwoPi, 0.0);
  }

  for (const auto& h : {std::vector<Complex>{}, std::vector<Complex>{0.0, 0.1}, std::vector<Complex>{0.0, 0.0, 0.1}}) {
    const AreaSeriesCheck a = area_series_check(h, 1.0);
    const std::string tag = h.empty() ? "h=0" : fmt::format("h=0.1z^{}", h.size() - 1);
    s.rel("geometry", "area series vs oracle " + tag, a.derived, a.oracle, 1e-6);
    if (h.empty()) s.abs("geometry", "area series h=0", a.derived, kPi, 0.0);
  }
}

}  // namespace

std::vector<Check> verify_suite() {
  Suite s;
  numerics_checks(s);
  diskmaps_checks(s);
  extremal_checks(s);
  poisson_checks(s);
  geometry_checks(s);
  return std::move(s.checks);
}

std::string verify_report_json(const std::vector<Check>& checks) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const Check& c : checks) {
    if (c.passed) ++passed;
    rows.push_back({{"module", c.module},
                    {"name", c.name},
                    {"value", c.value},
                    {"target", c.target},
                    {"tolerance", c.tolerance},
                    {"relation", c.relation},
                    {"passed", c.passed}});
  }
  nlohmann::ordered_json doc{{"tool", "hdiff"},
                             {"checks", rows},
                             {"total", checks.size()},
                             {"passed", passed},
                             {"failed", checks.size() - passed},
                             {"all_passed", passed == checks.size()}};
  return doc.dump(2) + "\n";
}

}  // namespace hdiff::cli
