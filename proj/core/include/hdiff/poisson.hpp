#pragma once

// General harmonic maps of the disk built as Poisson extensions of sampled
// boundary curves, together with the scans that test the Schwarz-Pick-type
// bound and the subharmonic circle-average growth on them.

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdiff/extremal.hpp"
#include "hdiff/jet.hpp"
#include "hdiff/numerics.hpp"

namespace hdiff {

/// Largest |z| at which derivatives of a truncated series are evaluated.
inline constexpr double kSeriesDerivativeCap = 0.99;

/// Uniform samples gamma(2 pi j / N), j = 0..N-1, of a closed curve.
class BoundaryFunction {
 public:
  BoundaryFunction(std::vector<Complex> samples, std::string provenance);

  static BoundaryFunction circle(std::size_t n);
  /// gamma(t) = cos t + i b sin t.
  static BoundaryFunction ellipse(double b, std::size_t n);
  /// Regular k-gon inscribed in the unit circle, vertices at e^{2 pi i m / k},
  /// traversed at constant speed.
  static BoundaryFunction polygonal(int k, std::size_t n);
  /// gamma(t) = e^{i (t + eps sin t)}; a circle homeomorphism for |eps| < 1.
  static BoundaryFunction twist(double eps, std::size_t n);
  /// Two numeric columns re,im per line; a non-numeric first line is a header.
  static BoundaryFunction from_csv(const std::filesystem::path& path);

  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const Complex> samples() const noexcept { return samples_; }
  const std::string& provenance() const noexcept { return provenance_; }

 private:
  std::vector<Complex> samples_;
  std::string provenance_;
};

/// Parses "circle", "ellipse:b", "polygonal:k", "twist:eps", "samples:path.csv".
/// `n` is the sample count for the closed-form families.
BoundaryFunction parse_boundary(std::string_view text, std::size_t n);

/// True when the closed polyline through the samples has no self-intersection.
bool injectivity_sample(const BoundaryFunction& boundary);

/// f(z) = c_0 + sum_{k>=1} c_k z^k + sum_{k>=1} c_{-k} conj(z)^k, split as
/// f = g + conj(h) with g(z) = sum_{k>=0} c_k z^k and
/// h(z) = sum_{k>=1} conj(c_{-k}) z^k.
class HarmonicSeries {
 public:
  explicit HarmonicSeries(FourierCoefficients coeffs);

  const FourierCoefficients& coefficients() const noexcept { return coeffs_; }
  Complex coefficient(int k) const noexcept { return coeffs_[k]; }

  Complex eval(Complex z) const;
  Complex g(Complex z) const;
  Complex h(Complex z) const;
  Complex g_prime(Complex z) const;
  Complex h_prime(Complex z) const;

 private:
  FourierCoefficients coeffs_;
  std::vector<Complex> g_;  // Taylor coefficients of g
  std::vector<Complex> h_;  // Taylor coefficients of h, h_[0] = 0
};

/// Throws BadLength unless N >= 16 is a power of two.
HarmonicSeries poisson_extend(const BoundaryFunction& boundary);

/// Series values at the N sample nodes on the unit circle.
std::vector<Complex> synthesize_boundary(const HarmonicSeries& series);

/// Value and derivatives by Horner evaluation. Throws DomainError for
/// |z| > kSeriesDerivativeCap.
MapJet series_jet(const HarmonicSeries& series, Complex z);

/// Closed polygonal length of the samples.
double perimeter_of_boundary(const BoundaryFunction& boundary);

struct SpScan {
  std::vector<double> field;  // |f_z| (1 - |z|^2) / R per grid point
  double max_margin = 0.0;
  std::size_t argmax_index = 0;
  Complex argmax{};
  bool holds = true;  // max_margin <= 1 + tolerance
  double tolerance = 0.0;
};

SpScan sp_scan(const HarmonicSeries& series, double R, std::span<const Complex> grid,
               double tolerance = 1e-9);

struct OrientationReport {
  bool passed = true;
  std::optional<std::size_t> witness_index;
  Complex witness{};
  double witness_jacobian = 0.0;
};

/// Passes iff the Jacobian is positive at every grid point; the witness is
/// the first failing point.
OrientationReport orientation_check(const HarmonicSeries& series, std::span<const Complex> grid);

/// Derivative pair (f_z, f_zbar) of some harmonic map.
using DerivativeFn = std::function<WirtingerPair(Complex)>;

/// For each radius r, the circle mean of u(z) = |f_z - f_zbar conj(z)^2|
/// (that is |g' - conj(h' z^2)|). The sample count at r is the next power
/// of two >= max(min_count, 64 / (1 - r)). Radii must increase strictly
/// inside (0, 1).
std::vector<double> circle_average_profile(const DerivativeFn& derivatives,
                                           std::span<const double> radii,
                                           std::size_t min_count = 1024);
std::vector<double> circle_average_profile(const HarmonicSeries& series,
                                           std::span<const double> radii,
                                           std::size_t min_count = 1024);
std::vector<double> circle_average_profile(const ExtremalSpec& spec,
                                           std::span<const double> radii,
                                           std::size_t min_count = 1024);

/// True when profile[i+1] >= profile[i] - slack for all i.
bool is_nondecreasing(std::span<const double> profile, double slack);

}  // namespace hdiff
