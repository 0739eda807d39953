#include "hdiff/extremal.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hdiff/parallel.hpp"

namespace hdiff {

namespace {

// Mobius pre-composition of the spec's convention: w = phi(z), its
// derivative, and the rotation applied to the normalized map's value.
struct Pullback {
  Complex w;
  Complex dw;
  Complex rotation;
};

Pullback pullback(const ExtremalSpec& spec, Complex z) {
  const Complex a = spec.a;
  const double s = 1.0 - std::norm(a);
  if (spec.convention == ShiftConvention::minus) {
    const Complex den = 1.0 - std::conj(a) * z;
    return {(z - a) / den, s / (den * den), std::polar(1.0, spec.theta)};
  }
  const Complex den = 1.0 + std::conj(a) * z;
  return {(z + a) / den, s / (den * den), std::polar(1.0, -spec.theta)};
}

void check_interior(Complex z, const char* what) {
  if (!(std::abs(z) <= kInteriorCap))
    throw DomainError(fmt::format("{}: |z| = {:.17g} exceeds the interior cap 1 - 1e-9", what,
                                  std::abs(z)),
                      z);
}

Complex eval_base(const DiskSelfMap& mu, double R, Complex w, const QuadratureConfig& cfg) {
  check_interior(w, "extremal map evaluation");
  const auto integrand = [&mu](Complex t) -> ComplexPair {
    const Complex m = eval(mu, t);
    const Complex inv = 1.0 / (1.0 + t * t * m);
    return {inv, m * inv};
  };
  const auto r = integrate_segment_pair(integrand, Complex{}, w, cfg);
  return R * (r.value[0] + std::conj(r.value[1]));
}

// Closed-form derivatives of the normalized map at w.
void base_derivatives(const DiskSelfMap& mu, double R, Complex w, Complex& f_w,
                      Complex& f_wbar) {
  const Complex m = eval(mu, w);
  const Complex inv = 1.0 / (1.0 + w * w * m);
  f_w = R * inv;
  f_wbar = std::conj(R * m * inv);
}

double slack(double scale) { return 1e-12 * std::max(1.0, scale); }

}  // namespace

void ExtremalSpec::validate() const {
  if (!(R > 0.0) || !std::isfinite(R))
    throw ValidationFailed(fmt::format("R must be a positive finite number, got {}", R));
  if (!(std::abs(a) < 1.0))
    throw ValidationFailed(fmt::format("shift point must satisfy |a| < 1, got {}", std::abs(a)), a);
  if (!std::isfinite(theta)) throw ValidationFailed("theta must be finite");
}

Complex eval_normalized(const ExtremalSpec& spec, Complex z, const QuadratureConfig& cfg) {
  spec.validate();
  if (!spec.normalized())
    throw DomainError("eval_normalized needs a spec with a = 0 and theta = 0");
  return eval_base(spec.mu, spec.R, z, cfg);
}

Complex eval_shifted(const ExtremalSpec& spec, Complex z, const QuadratureConfig& cfg) {
  spec.validate();
  if (!(std::abs(z) < 1.0)) throw DomainError("eval_shifted needs |z| < 1", z);
  const Pullback p = pullback(spec, z);
  return p.rotation * eval_base(spec.mu, spec.R, p.w, cfg);
}

Complex equality_point(const ExtremalSpec& spec) {
  return spec.convention == ShiftConvention::minus ? spec.a : -spec.a;
}

MapJet jet(const ExtremalSpec& spec, Complex z, bool with_value, const QuadratureConfig& cfg) {
  if (!(std::abs(z) < 1.0)) throw DomainError("jet needs |z| < 1", z);
  const Pullback p = pullback(spec, z);
  Complex f_w, f_wbar;
  base_derivatives(spec.mu, spec.R, p.w, f_w, f_wbar);
  const Complex g_z = p.rotation * f_w * p.dw;
  const Complex g_zbar = p.rotation * f_wbar * std::conj(p.dw);
  std::optional<Complex> value;
  if (with_value) value = p.rotation * eval_base(spec.mu, spec.R, p.w, cfg);
  return MapJet::from_derivatives(g_z, g_zbar, value);
}

Complex effective_beltrami(const ExtremalSpec& spec, Complex z) {
  const Pullback p = pullback(spec, z);
  const Complex inv_rot = std::conj(p.rotation);
  return inv_rot * inv_rot * eval(spec.mu, p.w);
}

double beltrami_residual(const MapJet& j, Complex nu) {
  const double scale = std::abs(j.f_z) + std::abs(j.f_zbar);
  if (scale == 0.0) return 0.0;
  return std::abs(std::conj(j.f_zbar) - nu * j.f_z) / scale;
}

double beltrami_residual(const ExtremalSpec& spec, Complex z) {
  return beltrami_residual(jet(spec, z), effective_beltrami(spec, z));
}

double schwarz_pick_margin(const ExtremalSpec& spec, Complex z) {
  spec.validate();
  return jet(spec, z).dpartial * (1.0 - std::norm(z)) / spec.R;
}

MarginScan margin_scan(const ExtremalSpec& spec, std::span<const Complex> grid,
                       double tolerance) {
  spec.validate();
  MarginScan scan;
  scan.tolerance = tolerance;
  scan.field = parallel_map<double>(
      grid.size(), [&](std::size_t i) { return schwarz_pick_margin(spec, grid[i]); });
  for (std::size_t i = 0; i < scan.field.size(); ++i) {
    if (i == 0 || scan.field[i] > scan.max_margin) {
      scan.max_margin = scan.field[i];
      scan.argmax_index = i;
      scan.argmax = grid[i];
    }
  }
  scan.holds = scan.max_margin <= 1.0 + tolerance;
  return scan;
}

BiLipschitzReport bilipschitz_report(const ExtremalSpec& spec, std::span<const Complex> grid,
                                     int sup_samples) {
  spec.validate();
  if (spec.a != Complex{})
    throw HypothesisViolated("bi-Lipschitz bounds are stated for the unshifted map (a = 0)", spec.a);
  BiLipschitzReport rep;
  rep.k = sup_norm_estimate(spec.mu, sup_samples);
  if (!(rep.k < 1.0))
    throw HypothesisViolated(
        fmt::format("bi-Lipschitz bound needs sup|mu| < 1, got {}", rep.k), std::nullopt, rep.k);
  rep.K = (1.0 + rep.k) / (1.0 - rep.k);

  const auto jets = parallel_map<MapJet>(grid.size(), [&](std::size_t i) { return jet(spec, grid[i]); });
  rep.min_lower = INFINITY;
  rep.max_upper = 0.0;
  for (const auto& j : jets) {
    const double lo = std::abs(j.f_z) - std::abs(j.f_zbar);
    const double hi = std::abs(j.f_z) + std::abs(j.f_zbar);
    rep.min_lower = std::min(rep.min_lower, lo);
    rep.max_upper = std::max(rep.max_upper, hi);
  }
  const double lower = spec.R / rep.K;
  const double upper = spec.R * rep.K;
  rep.holds = rep.min_lower >= lower - slack(spec.R) && rep.max_upper <= upper + slack(upper);
  return rep;
}

DNormReport dnorm_report(const ExtremalSpec& spec, std::span<const Complex> grid) {
  spec.validate();
  if (spec.a != Complex{})
    throw HypothesisViolated("the |DF|^2 bound is stated for the unshifted map (a = 0)", spec.a);
  DNormReport rep;
  rep.lower_bound = 0.5 * spec.R * spec.R;
  const auto values =
      parallel_map<double>(grid.size(), [&](std::size_t i) { return jet(spec, grid[i]).dnorm_sq; });
  rep.min_dnorm_sq = INFINITY;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < rep.min_dnorm_sq) {
      rep.min_dnorm_sq = values[i];
      rep.argmin = grid[i];
    }
  }
  rep.holds = rep.min_dnorm_sq >= rep.lower_bound - slack(rep.lower_bound);
  return rep;
}

}  // namespace hdiff
