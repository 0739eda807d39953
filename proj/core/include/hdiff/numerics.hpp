#pragma once

// Foundation kernels: segment quadrature for contour integrals, circle
// averages, discrete Fourier analysis on circles, and a finite-difference
// Wirtinger derivative used as an independent oracle.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hdiff/error.hpp"

namespace hdiff {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_depth = 24;   // bisection levels below the initial panel
  int base_order = 16;  // Gauss-Legendre nodes per panel; error estimate uses base_order/2

  /// Throws ValidationFailed when a field is out of range.
  void validate() const;
};

template <class V>
struct SegmentIntegral {
  V value{};
  double err_estimate = 0.0;
  int panels = 0;
};

using ComplexPair = std::array<Complex, 2>;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule for 1 <= n <= 64. The returned reference stays valid for the
/// program lifetime.
const GaussLegendreRule& gauss_legendre(int n);

/// Integral of `integrand` along the straight segment z0 -> z1 by adaptive
/// Gauss-Legendre panels. Throws NonConvergence (witness: midpoint of the
/// offending panel) when a panel would exceed cfg.max_depth.
SegmentIntegral<Complex> integrate_segment(
    const std::function<Complex(Complex)>& integrand, Complex z0, Complex z1,
    const QuadratureConfig& cfg = {});

/// Two integrals over the same segment sharing nodes and panel refinement.
SegmentIntegral<ComplexPair> integrate_segment_pair(
    const std::function<ComplexPair(Complex)>& integrand, Complex z0,
    Complex z1, const QuadratureConfig& cfg = {});

class CircleSampling {
 public:
  /// Throws ValidationFailed unless 0 < radius <= 1, and BadLength unless
  /// count >= 8 is a power of two.
  CircleSampling(double radius, std::size_t count);

  double radius() const noexcept { return radius_; }
  std::size_t count() const noexcept { return count_; }
  double angle(std::size_t j) const noexcept;
  Complex point(std::size_t j) const noexcept;
  std::vector<Complex> points() const;

 private:
  double radius_;
  std::size_t count_;
};

/// Trapezoidal mean of fn over the sampled circle.
double circle_mean(const std::function<double(Complex)>& fn,
                   const CircleSampling& sampling);

bool is_power_of_two(std::size_t n) noexcept;

/// Smallest power of two >= n.
std::size_t next_power_of_two(std::size_t n) noexcept;

/// Discrete Fourier coefficients c_k = (1/N) sum_j s_j e^{-i k t_j} of N
/// uniform samples, addressed by k in [-N/2, N/2 - 1].
class FourierCoefficients {
 public:
  FourierCoefficients() = default;
  /// `fft_order` holds c_0..c_{N/2-1}, c_{-N/2}..c_{-1}.
  explicit FourierCoefficients(std::vector<Complex> fft_order);

  std::size_t size() const noexcept { return data_.size(); }
  int min_index() const noexcept { return -static_cast<int>(data_.size() / 2); }
  int max_index() const noexcept { return static_cast<int>(data_.size() / 2) - 1; }

  /// Coefficient of index k; zero outside [min_index, max_index].
  Complex operator[](int k) const noexcept;
  const std::vector<Complex>& fft_order() const noexcept { return data_; }

 private:
  std::vector<Complex> data_;
};

/// Throws BadLength if samples.size() is not a power of two >= 2.
FourierCoefficients fourier_analyze(std::span<const Complex> samples);

/// Inverse of fourier_analyze: values at the N uniform nodes.
std::vector<Complex> fourier_synthesize(const FourierCoefficients& coeffs);

struct WirtingerPair {
  Complex f_z;
  Complex f_zbar;
};

/// Central differences in x and y combined as f_z = (f_x - i f_y)/2 and
/// f_zbar = (f_x + i f_y)/2. Second-order accurate in h.
WirtingerPair wirtinger_fd(const std::function<Complex(Complex)>& map,
                           Complex z, double h);

}  // namespace hdiff
