#pragma once

// Extremal harmonic diffeomorphisms of the unit disk
//
//   f(z) = R ( \int_0^z dt / (1 + t^2 mu(t)) + conj \int_0^z mu(t) dt / (1 + t^2 mu(t)) )
//
// for a holomorphic self-map mu, and their Mobius-shifted, rotated variants.
// Values come from segment quadrature; derivatives always come from the
// closed forms f_z = R / (1 + z^2 mu), conj(f_zbar) = R mu / (1 + z^2 mu).

#include <span>
#include <vector>

#include "hdiff/diskmaps.hpp"
#include "hdiff/jet.hpp"
#include "hdiff/numerics.hpp"

namespace hdiff {

/// Largest |z| at which an extremal map is evaluated.
inline constexpr double kInteriorCap = 1.0 - 1e-9;

/// How (a, theta) enter the shifted map built from the normalized map f.
enum class ShiftConvention {
  /// g(z) = e^{i theta} f((z - a) / (1 - conj(a) z)); equality point z = a.
  minus,
  /// F(z) = e^{-i theta} f((z + a) / (1 + conj(a) z)); equality point z = -a.
  plus,
};

struct ExtremalSpec {
  DiskSelfMap mu = DiskSelfMap::zero();
  double R = 1.0;
  Complex a{};
  double theta = 0.0;
  ShiftConvention convention = ShiftConvention::minus;

  /// Throws ValidationFailed unless R > 0 and |a| < 1.
  void validate() const;
  bool normalized() const noexcept { return a == Complex{} && theta == 0.0; }
};

/// The normalized map (a = 0, theta = 0). Throws DomainError for
/// |z| > kInteriorCap or a spec that is not normalized, NonConvergence from
/// the quadrature.
Complex eval_normalized(const ExtremalSpec& spec, Complex z, const QuadratureConfig& cfg = {});

/// The shifted map of the spec's convention. Reduces to eval_normalized when
/// a = 0 and theta = 0.
Complex eval_shifted(const ExtremalSpec& spec, Complex z, const QuadratureConfig& cfg = {});

/// Point where the Schwarz-Pick-type bound is attained.
Complex equality_point(const ExtremalSpec& spec);

/// Closed-form derivatives at z; the value is filled in only when
/// `with_value` is set (it needs quadrature).
MapJet jet(const ExtremalSpec& spec, Complex z, bool with_value = false,
           const QuadratureConfig& cfg = {});

/// Second Beltrami coefficient nu of the spec's map: conj(F_zbar) = nu F_z.
/// Equals mu for normalized specs.
Complex effective_beltrami(const ExtremalSpec& spec, Complex z);

/// |conj(f_zbar) - nu f_z| / (|f_z| + |f_zbar|) for the closed-form jet.
double beltrami_residual(const ExtremalSpec& spec, Complex z);
/// The same residual for an arbitrary jet, e.g. a finite-difference one.
double beltrami_residual(const MapJet& jet, Complex nu);

/// |F_z(z)| (1 - |z|^2) / R, which never exceeds 1.
double schwarz_pick_margin(const ExtremalSpec& spec, Complex z);

struct MarginScan {
  std::vector<double> field;
  double max_margin = 0.0;
  std::size_t argmax_index = 0;
  Complex argmax{};
  bool holds = true;  // max_margin <= 1 + tolerance
  double tolerance = 0.0;
};

MarginScan margin_scan(const ExtremalSpec& spec, std::span<const Complex> grid,
                       double tolerance = 1e-12);

struct BiLipschitzReport {
  double min_lower = 0.0;  // min over the grid of |F_z| - |F_zbar|
  double max_upper = 0.0;  // max over the grid of |F_z| + |F_zbar|
  double k = 0.0;          // sup |mu|
  double K = 1.0;          // (1 + k) / (1 - k)
  bool holds = true;
};

/// Requires a = 0 and sup|mu| < 1 (HypothesisViolated otherwise). Bounds
/// R (1-k)/(1+k) <= min_lower and max_upper <= R (1+k)/(1-k) are checked
/// with 1e-12 slack.
BiLipschitzReport bilipschitz_report(const ExtremalSpec& spec, std::span<const Complex> grid,
                                     int sup_samples = 4096);

struct DNormReport {
  double min_dnorm_sq = 0.0;
  Complex argmin{};
  double lower_bound = 0.0;  // R^2 / 2
  bool holds = true;
};

/// min over the grid of |F_z|^2 + |F_zbar|^2 against R^2/2. Requires a = 0.
DNormReport dnorm_report(const ExtremalSpec& spec, std::span<const Complex> grid);

}  // namespace hdiff
