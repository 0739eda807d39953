#include "hdiff/geometry.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hdiff/parallel.hpp"
#include "json.hpp"

namespace hdiff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

void require_curve(const TracedCurve& c) {
  if (c.points.size() < 3) throw BadLength("curve needs at least 3 points");
}

double extent(const TracedCurve& c) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const Complex p : c.points) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

}  // namespace

double TracedCurve::parameter(std::size_t j) const noexcept {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(points.size());
}

TracedCurve trace(const std::function<Complex(Complex)>& map, double r, std::size_t count,
                  std::string source_id) {
  if (!(r > 0.0 && r <= kInteriorCap))
    throw ValidationFailed(fmt::format("trace radius must lie in (0, 1 - 1e-9], got {:.17g}", r));
  if (count < 64 || !is_power_of_two(count))
    throw BadLength(fmt::format("trace count must be a power of two >= 64, got {}", count));
  TracedCurve curve;
  curve.r = r;
  curve.source_id = std::move(source_id);
  curve.points = parallel_map<Complex>(
      count, [&](std::size_t j) { return map(std::polar(r, kTwoPi * j / count)); }, 256);
  return curve;
}

TracedCurve trace(const ExtremalSpec& spec, double r, std::size_t count,
                  const QuadratureConfig& cfg) {
  spec.validate();
  return trace([&](Complex z) { return eval_shifted(spec, z, cfg); }, r, count,
               fmt::format("extremal:{};R={:.17g}", spec.mu.to_string(), spec.R));
}

TracedCurve trace(const HarmonicSeries& series, double r, std::size_t count,
                  std::string source_id) {
  return trace([&](Complex z) { return series.eval(z); }, r, count, std::move(source_id));
}

double perimeter(const TracedCurve& curve) {
  require_curve(curve);
  const auto& p = curve.points;
  double len = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) len += std::abs(p[(j + 1) % p.size()] - p[j]);
  return len;
}

double area(const TracedCurve& curve) {
  require_curve(curve);
  const auto& p = curve.points;
  double twice = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) twice += cross(p[j], p[(j + 1) % p.size()]);
  return 0.5 * twice;
}

int turning_number(const TracedCurve& curve) {
  require_curve(curve);
  const auto& p = curve.points;
  const std::size_t n = p.size();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex e0 = p[(j + 1) % n] - p[j];
    const Complex e1 = p[(j + 2) % n] - p[(j + 1) % n];
    total += std::atan2(cross(e0, e1), dot(e0, e1));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

ConvexityReport convexity(const TracedCurve& curve) {
  require_curve(curve);
  const auto& p = curve.points;
  const std::size_t n = p.size();
  const double floor = 1e-15 * extent(curve);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(p[(j + 1) % n] - p[j]) <= floor)
      throw DegenerateEdge(fmt::format("consecutive trace points {} and {} coincide", j, (j + 1) % n),
                           p[j]);
  }
  ConvexityReport rep;
  rep.turning_number = turning_number(curve);
  const double sign = rep.turning_number < 0 ? -1.0 : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex e0 = p[(j + 1) % n] - p[j];
    const Complex e1 = p[(j + 2) % n] - p[(j + 1) % n];
    if (sign * cross(e0, e1) < -1e-12 * std::abs(e0) * std::abs(e1)) {
      rep.first_violation = (j + 1) % n;
      break;
    }
  }
  rep.convex = !rep.first_violation && std::abs(rep.turning_number) == 1;
  return rep;
}

double dist_origin(const TracedCurve& curve) {
  require_curve(curve);
  const auto& p = curve.points;
  double best = INFINITY;
  for (std::size_t j = 0; j < p.size(); ++j)
    best = std::min(best, point_segment_distance(Complex{}, p[j], p[(j + 1) % p.size()]));
  return best;
}

CurveReport analyze(const TracedCurve& curve) {
  CurveReport rep;
  rep.perimeter = perimeter(curve);
  rep.area = area(curve);
  const ConvexityReport c = convexity(curve);
  rep.convex = c.convex;
  rep.turning_number = c.turning_number;
  rep.dist_origin = dist_origin(curve);
  rep.r = curve.r;
  rep.count = curve.count();
  return rep;
}

double rotational_symmetry_defect(const std::function<Complex(Complex)>& map,
                                  const TracedCurve& curve, int fold) {
  if (fold < 1) throw ValidationFailed(fmt::format("symmetry fold must be >= 1, got {}", fold));
  const Complex omega = std::polar(1.0, kTwoPi / fold);
  const auto defects = parallel_map<double>(curve.count(), [&](std::size_t j) {
    const Complex z = std::polar(curve.r, curve.parameter(j));
    return std::abs(map(omega * z) - omega * curve.points[j]);
  }, 256);
  double worst = 0.0;
  for (double d : defects) worst = std::max(worst, d);
  return worst;
}

AreaSeriesCheck area_series_check(std::span<const Complex> hcoeffs, double R,
                                  std::size_t oracle_count) {
  if (!(R > 0.0)) throw ValidationFailed(fmt::format("R must be > 0, got {}", R));
  if (oracle_count < 64 || !is_power_of_two(oracle_count))
    throw BadLength(fmt::format("oracle count must be a power of two >= 64, got {}", oracle_count));

  auto h_prime = [&](Complex z) {
    Complex d{};
    for (std::size_t k = hcoeffs.size(); k-- > 1;) d = d * z + static_cast<double>(k) * hcoeffs[k];
    return d;
  };
  constexpr int kConditionSamples = 4096;
  for (int j = 0; j < kConditionSamples; ++j) {
    const Complex z = std::polar(kBoundarySampleRadius, kTwoPi * j / kConditionSamples);
    const Complex hp = h_prime(z);
    const double q = std::abs(hp) / std::abs(1.0 - z * z * hp);
    if (!(q < 1.0))
      throw HypothesisViolated(
          fmt::format("dilatation condition |h'|/|1 - z^2 h'| < 1 fails: {:.17g}", q), z, q);
  }

  AreaSeriesCheck out;
  const double scale = R * R * std::numbers::pi;
  double printed = 0.0, derived = 0.0;
  for (std::size_t k = 0; k < hcoeffs.size(); ++k) {
    const double a2 = std::norm(hcoeffs[k]);
    printed += a2 / static_cast<double>((k + 1) * (k + 2));
    derived += 2.0 * static_cast<double>(k) * a2 / static_cast<double>(k + 2);
  }
  out.alternative_formula = scale * (1.0 - printed);
  out.derived = scale * (1.0 - derived);

  // g(z) = z - sum_k k a_k z^{k+2} / (k+2), evaluated exactly on |z| = 1.
  TracedCurve boundary;
  boundary.r = 1.0;
  boundary.source_id = "area-oracle";
  boundary.points.resize(oracle_count);
  for (std::size_t j = 0; j < oracle_count; ++j) {
    const Complex z = std::polar(1.0, kTwoPi * j / oracle_count);
    Complex g = z, h{}, zk{1.0, 0.0};
    for (std::size_t k = 0; k < hcoeffs.size(); ++k) {
      h += hcoeffs[k] * zk;
      if (k >= 1)
        g -= static_cast<double>(k) * hcoeffs[k] * zk * z * z / static_cast<double>(k + 2);
      zk *= z;
    }
    boundary.points[j] = R * (g + std::conj(h));
  }
  out.oracle = area(boundary);
  return out;
}

void write_csv(const TracedCurve& curve, std::ostream& out) {
  out << "t,re,im\n";
  for (std::size_t j = 0; j < curve.count(); ++j)
    out << fmt::format("{:.17g},{:.17g},{:.17g}\n", curve.parameter(j), curve.points[j].real(),
                       curve.points[j].imag());
}

std::string to_json(const CurveReport& report) {
  nlohmann::ordered_json j;
  j["perimeter"] = report.perimeter;
  j["area"] = report.area;
  j["convex"] = report.convex;
  j["dist_origin"] = report.dist_origin;
  j["turning_number"] = report.turning_number;
  j["r"] = report.r;
  j["count"] = report.count;
  return j.dump(2);
}

}  // namespace hdiff
