#include "hdiff/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace hdiff {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0))
    throw ValidationFailed(fmt::format("abs_tol must be > 0, got {}", abs_tol));
  if (!(rel_tol >= 0.0))
    throw ValidationFailed(fmt::format("rel_tol must be >= 0, got {}", rel_tol));
  if (max_depth < 1)
    throw ValidationFailed(fmt::format("max_depth must be >= 1, got {}", max_depth));
  if (base_order < 2 || base_order > 64)
    throw ValidationFailed(
        fmt::format("base_order must lie in [2, 64], got {}", base_order));
}

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // n == 1 leaves p1 = x, p0 = 1, which the derivative formula handles.
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Norm and accumulation helpers so the adaptive driver works for a scalar
// or a pair of integrals.
double value_norm(const Complex& v) { return std::abs(v); }
double value_norm(const ComplexPair& v) {
  return std::max(std::abs(v[0]), std::abs(v[1]));
}
void accumulate(Complex& acc, const Complex& v, double w) { acc += w * v; }
void accumulate(ComplexPair& acc, const ComplexPair& v, double w) {
  acc[0] += w * v[0];
  acc[1] += w * v[1];
}
void scale(Complex& v, Complex s) { v *= s; }
void scale(ComplexPair& v, Complex s) {
  v[0] *= s;
  v[1] *= s;
}
Complex diff(const Complex& a, const Complex& b) { return a - b; }
ComplexPair diff(const ComplexPair& a, const ComplexPair& b) {
  return {a[0] - b[0], a[1] - b[1]};
}

template <class V>
struct Panel {
  double s0;
  double s1;
  V value;
  double err;
  int depth;
};

template <class V, class F>
SegmentIntegral<V> adaptive_segment(const F& integrand, Complex z0, Complex z1,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  SegmentIntegral<V> result;
  const Complex dz = z1 - z0;
  if (dz == Complex{}) return result;

  const GaussLegendreRule& hi = gauss_legendre(cfg.base_order);
  const GaussLegendreRule& lo = gauss_legendre(std::max(1, cfg.base_order / 2));

  auto eval_panel = [&](double s0, double s1, int depth) {
    const double half = 0.5 * (s1 - s0);
    const double mid = 0.5 * (s0 + s1);
    V vh{}, vl{};
    for (std::size_t i = 0; i < hi.nodes.size(); ++i)
      accumulate(vh, integrand(z0 + (mid + half * hi.nodes[i]) * dz), hi.weights[i]);
    for (std::size_t i = 0; i < lo.nodes.size(); ++i)
      accumulate(vl, integrand(z0 + (mid + half * lo.nodes[i]) * dz), lo.weights[i]);
    scale(vh, half * dz);
    scale(vl, half * dz);
    return Panel<V>{s0, s1, vh, value_norm(diff(vh, vl)), depth};
  };

  auto by_error = [](const Panel<V>& a, const Panel<V>& b) { return a.err < b.err; };
  std::vector<Panel<V>> heap;
  heap.push_back(eval_panel(0.0, 1.0, 0));

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    V total{};
    double err = 0.0;
    for (const auto& p : heap) {
      accumulate(total, p.value, 1.0);
      err += p.err;
    }
    if (err <= std::max(cfg.abs_tol, cfg.rel_tol * value_norm(total))) break;

    std::pop_heap(heap.begin(), heap.end(), by_error);
    Panel<V> worst = heap.back();
    // Remaining error is at rounding level; further bisection cannot help.
    if (worst.err <= 8.0 * eps * value_norm(worst.value) + 1e-300) {
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    if (worst.depth >= cfg.max_depth) {
      const Complex where = z0 + 0.5 * (worst.s0 + worst.s1) * dz;
      throw NonConvergence(
          fmt::format("segment quadrature did not converge near ({}, {}): "
                      "max_depth {} reached with panel error {:.3e}",
                      where.real(), where.imag(), cfg.max_depth, worst.err),
          where, err);
    }
    heap.pop_back();
    const double mid = 0.5 * (worst.s0 + worst.s1);
    heap.push_back(eval_panel(worst.s0, mid, worst.depth + 1));
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(eval_panel(mid, worst.s1, worst.depth + 1));
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Sum in parameter order so the result does not depend on heap layout.
  std::sort(heap.begin(), heap.end(),
            [](const Panel<V>& a, const Panel<V>& b) { return a.s0 < b.s0; });
  for (const auto& p : heap) {
    accumulate(result.value, p.value, 1.0);
    result.err_estimate += p.err;
  }
  result.panels = static_cast<int>(heap.size());
  return result;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  static const std::vector<GaussLegendreRule> table = [] {
    std::vector<GaussLegendreRule> t(65);
    for (int k = 1; k <= 64; ++k) t[k] = build_rule(k);
    return t;
  }();
  if (n < 1 || n > 64)
    throw ValidationFailed(fmt::format("Gauss-Legendre order {} outside [1, 64]", n));
  return table[n];
}

SegmentIntegral<Complex> integrate_segment(
    const std::function<Complex(Complex)>& integrand, Complex z0, Complex z1,
    const QuadratureConfig& cfg) {
  return adaptive_segment<Complex>(integrand, z0, z1, cfg);
}

SegmentIntegral<ComplexPair> integrate_segment_pair(
    const std::function<ComplexPair(Complex)>& integrand, Complex z0,
    Complex z1, const QuadratureConfig& cfg) {
  return adaptive_segment<ComplexPair>(integrand, z0, z1, cfg);
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

CircleSampling::CircleSampling(double radius, std::size_t count)
    : radius_(radius), count_(count) {
  if (!(radius > 0.0 && radius <= 1.0))
    throw ValidationFailed(fmt::format("circle radius must lie in (0, 1], got {}", radius));
  if (count < 8 || !is_power_of_two(count))
    throw BadLength(fmt::format("circle sample count must be a power of two >= 8, got {}", count));
}

double CircleSampling::angle(std::size_t j) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count_);
}

Complex CircleSampling::point(std::size_t j) const noexcept {
  return std::polar(radius_, angle(j));
}

std::vector<Complex> CircleSampling::points() const {
  std::vector<Complex> pts(count_);
  for (std::size_t j = 0; j < count_; ++j) pts[j] = point(j);
  return pts;
}

double circle_mean(const std::function<double(Complex)>& fn,
                   const CircleSampling& sampling) {
  double sum = 0.0;
  for (std::size_t j = 0; j < sampling.count(); ++j) sum += fn(sampling.point(j));
  return sum / static_cast<double>(sampling.count());
}

WirtingerPair wirtinger_fd(const std::function<Complex(Complex)>& map, Complex z,
                           double h) {
  const Complex fx = (map(z + Complex{h, 0.0}) - map(z - Complex{h, 0.0})) / (2.0 * h);
  const Complex fy = (map(z + Complex{0.0, h}) - map(z - Complex{0.0, h})) / (2.0 * h);
  const Complex i{0.0, 1.0};
  return {0.5 * (fx - i * fy), 0.5 * (fx + i * fy)};
}

}  // namespace hdiff
