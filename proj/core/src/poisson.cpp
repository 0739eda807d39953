#include "hdiff/poisson.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "hdiff/parallel.hpp"

namespace hdiff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double node(std::size_t j, std::size_t n) {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

template <class Gamma>
std::vector<Complex> sample(std::size_t n, Gamma&& gamma) {
  std::vector<Complex> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = gamma(node(j, n));
  return s;
}

double parse_number(std::string_view s, const std::string& context) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(fmt::format("{}: not a number: '{}'", context, s));
  return v;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Closed segments [p1,p2] and [q1,q2] share a point, collinear overlap included.
bool segments_touch(Complex p1, Complex p2, Complex q1, Complex q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](Complex a, Complex b, Complex p) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
  };
  return (d1 == 0 && on_segment(q1, q2, p1)) || (d2 == 0 && on_segment(q1, q2, p2)) ||
         (d3 == 0 && on_segment(p1, p2, q1)) || (d4 == 0 && on_segment(p1, p2, q2));
}

void horner_with_derivative(const std::vector<Complex>& c, Complex z, Complex& value,
                            Complex& derivative) {
  value = {};
  derivative = {};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    derivative = derivative * z + value;
    value = value * z + *it;
  }
}

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex v{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

}  // namespace

BoundaryFunction::BoundaryFunction(std::vector<Complex> samples, std::string provenance)
    : samples_(std::move(samples)), provenance_(std::move(provenance)) {
  if (samples_.empty()) throw BadLength("boundary function needs at least one sample");
}

BoundaryFunction BoundaryFunction::circle(std::size_t n) {
  return {sample(n, [](double t) { return std::polar(1.0, t); }), "circle"};
}

BoundaryFunction BoundaryFunction::ellipse(double b, std::size_t n) {
  if (!(b > 0.0)) throw ValidationFailed(fmt::format("ellipse semi-axis must be > 0, got {}", b));
  return {sample(n, [b](double t) { return Complex{std::cos(t), b * std::sin(t)}; }),
          fmt::format("ellipse:{:.17g}", b)};
}

BoundaryFunction BoundaryFunction::polygonal(int k, std::size_t n) {
  if (k < 3) throw ValidationFailed(fmt::format("polygon needs at least 3 vertices, got {}", k));
  auto vertex = [k](int m) { return std::polar(1.0, kTwoPi * m / k); };
  return {sample(n,
                 [&](double t) {
                   const double s = t / kTwoPi * k;
                   const int m = std::min(static_cast<int>(std::floor(s)), k - 1);
                   const double frac = s - m;
                   return vertex(m) + frac * (vertex(m + 1) - vertex(m));
                 }),
          fmt::format("polygonal:{}", k)};
}

BoundaryFunction BoundaryFunction::twist(double eps, std::size_t n) {
  return {sample(n, [eps](double t) { return std::polar(1.0, t + eps * std::sin(t)); }),
          fmt::format("twist:{:.17g}", eps)};
}

BoundaryFunction BoundaryFunction::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationFailed(fmt::format("cannot open boundary samples '{}'", path.string()));
  std::vector<Complex> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError(fmt::format("{}:{}: expected two columns re,im", path.string(), line_no));
    const std::string_view sv(line);
    const std::string ctx = fmt::format("{}:{}", path.string(), line_no);
    try {
      samples.emplace_back(parse_number(sv.substr(0, comma), ctx),
                           parse_number(sv.substr(comma + 1), ctx));
    } catch (const ParseError&) {
      if (samples.empty() && line_no == 1) continue;  // header row
      throw;
    }
  }
  return {std::move(samples), "samples:" + path.string()};
}

BoundaryFunction parse_boundary(std::string_view text, std::size_t n) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw ParseError(fmt::format("boundary '{}' needs an argument", head));
  };
  if (head == "circle") return BoundaryFunction::circle(n);
  if (head == "ellipse") {
    need_arg();
    return BoundaryFunction::ellipse(parse_number(arg, "ellipse"), n);
  }
  if (head == "polygonal") {
    need_arg();
    const double k = parse_number(arg, "polygonal");
    if (k != std::floor(k)) throw ParseError("polygonal vertex count must be an integer");
    return BoundaryFunction::polygonal(static_cast<int>(k), n);
  }
  if (head == "twist") {
    need_arg();
    return BoundaryFunction::twist(parse_number(arg, "twist"), n);
  }
  if (head == "samples") {
    need_arg();
    return BoundaryFunction::from_csv(std::filesystem::path(std::string(arg)));
  }
  throw ParseError(fmt::format("unknown boundary family '{}'", head));
}

bool injectivity_sample(const BoundaryFunction& boundary) {
  const auto s = boundary.samples();
  const std::size_t n = s.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s[i] == s[j]) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p1 = s[i], p2 = s[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap-around
      if (segments_touch(p1, p2, s[j], s[(j + 1) % n])) return false;
    }
  }
  return true;
}

HarmonicSeries::HarmonicSeries(FourierCoefficients coeffs) : coeffs_(std::move(coeffs)) {
  const int half = static_cast<int>(coeffs_.size() / 2);
  g_.resize(static_cast<std::size_t>(half));
  h_.assign(static_cast<std::size_t>(half) + 1, Complex{});
  for (int k = 0; k < half; ++k) g_[k] = coeffs_[k];
  for (int k = 1; k <= half; ++k) h_[k] = std::conj(coeffs_[-k]);
}

Complex HarmonicSeries::g(Complex z) const { return horner(g_, z); }
Complex HarmonicSeries::h(Complex z) const { return horner(h_, z); }
Complex HarmonicSeries::eval(Complex z) const { return g(z) + std::conj(h(z)); }

Complex HarmonicSeries::g_prime(Complex z) const {
  Complex v, d;
  horner_with_derivative(g_, z, v, d);
  return d;
}

Complex HarmonicSeries::h_prime(Complex z) const {
  Complex v, d;
  horner_with_derivative(h_, z, v, d);
  return d;
}

HarmonicSeries poisson_extend(const BoundaryFunction& boundary) {
  if (boundary.size() < 16 || !is_power_of_two(boundary.size()))
    throw BadLength(fmt::format("Poisson extension needs a power-of-two sample count >= 16, got {}",
                                boundary.size()));
  return HarmonicSeries(fourier_analyze(boundary.samples()));
}

std::vector<Complex> synthesize_boundary(const HarmonicSeries& series) {
  return fourier_synthesize(series.coefficients());
}

MapJet series_jet(const HarmonicSeries& series, Complex z) {
  if (!(std::abs(z) <= kSeriesDerivativeCap))
    throw DomainError(fmt::format("series derivatives are evaluated for |z| <= {}, got {:.17g}",
                                  kSeriesDerivativeCap, std::abs(z)),
                      z);
  const Complex gp = series.g_prime(z);
  const Complex hp = series.h_prime(z);
  return MapJet::from_derivatives(gp, std::conj(hp), series.eval(z));
}

double perimeter_of_boundary(const BoundaryFunction& boundary) {
  const auto s = boundary.samples();
  double len = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) len += std::abs(s[(j + 1) % s.size()] - s[j]);
  return len;
}

SpScan sp_scan(const HarmonicSeries& series, double R, std::span<const Complex> grid,
               double tolerance) {
  if (!(R > 0.0)) throw ValidationFailed(fmt::format("R must be > 0, got {}", R));
  for (const Complex z : grid)
    if (std::abs(z) > kSeriesDerivativeCap)
      throw DomainError("sp_scan grid point beyond the derivative cap", z);
  SpScan scan;
  scan.tolerance = tolerance;
  scan.field = parallel_map<double>(grid.size(), [&](std::size_t i) {
    const Complex z = grid[i];
    return std::abs(series.g_prime(z)) * (1.0 - std::norm(z)) / R;
  });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == 0 || scan.field[i] > scan.max_margin) {
      scan.max_margin = scan.field[i];
      scan.argmax_index = i;
      scan.argmax = grid[i];
    }
  }
  scan.holds = scan.max_margin <= 1.0 + tolerance;
  return scan;
}

OrientationReport orientation_check(const HarmonicSeries& series, std::span<const Complex> grid) {
  const auto jac = parallel_map<double>(grid.size(), [&](std::size_t i) {
    return series_jet(series, grid[i]).jacobian;
  });
  OrientationReport rep;
  for (std::size_t i = 0; i < jac.size(); ++i) {
    if (!(jac[i] > 0.0)) {
      rep.passed = false;
      rep.witness_index = i;
      rep.witness = grid[i];
      rep.witness_jacobian = jac[i];
      break;
    }
  }
  return rep;
}

std::vector<double> circle_average_profile(const DerivativeFn& derivatives,
                                           std::span<const double> radii, std::size_t min_count) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0))
      throw ValidationFailed(fmt::format("profile radius must lie in (0, 1), got {}", radii[i]));
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw ValidationFailed("profile radii must be strictly increasing");
  }
  std::vector<double> profile;
  profile.reserve(radii.size());
  for (double r : radii) {
    const auto wanted = static_cast<std::size_t>(std::ceil(64.0 / (1.0 - r)));
    const CircleSampling sampling(r, next_power_of_two(std::max({min_count, wanted, std::size_t{8}})));
    const auto u = parallel_map<double>(sampling.count(), [&](std::size_t j) {
      const Complex z = sampling.point(j);
      const WirtingerPair d = derivatives(z);
      const Complex zb = std::conj(z);
      return std::abs(d.f_z - d.f_zbar * zb * zb);
    }, 1024);
    double sum = 0.0;
    for (double v : u) sum += v;
    profile.push_back(sum / static_cast<double>(u.size()));
  }
  return profile;
}

std::vector<double> circle_average_profile(const HarmonicSeries& series,
                                           std::span<const double> radii, std::size_t min_count) {
  return circle_average_profile(
      [&series](Complex z) {
        const MapJet j = series_jet(series, z);
        return WirtingerPair{j.f_z, j.f_zbar};
      },
      radii, min_count);
}

std::vector<double> circle_average_profile(const ExtremalSpec& spec,
                                           std::span<const double> radii, std::size_t min_count) {
  spec.validate();
  return circle_average_profile(
      [&spec](Complex z) {
        const MapJet j = jet(spec, z);
        return WirtingerPair{j.f_z, j.f_zbar};
      },
      radii, min_count);
}

bool is_nondecreasing(std::span<const double> profile, double slack) {
  for (std::size_t i = 1; i < profile.size(); ++i)
    if (profile[i] < profile[i - 1] - slack) return false;
  return true;
}

}  // namespace hdiff
