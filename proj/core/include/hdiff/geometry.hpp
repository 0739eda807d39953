#pragma once

// Image-curve analysis: traces of maps on circles |z| = r and their
// perimeter, enclosed area, convexity, turning number and distance to the
// origin.

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hdiff/extremal.hpp"
#include "hdiff/poisson.hpp"

namespace hdiff {

struct TracedCurve {
  std::vector<Complex> points;  // images of r e^{i t_j}, t_j = 2 pi j / count
  double r = 0.0;
  std::string source_id;

  std::size_t count() const noexcept { return points.size(); }
  double parameter(std::size_t j) const noexcept;
};

/// Requires 0 < r <= 1 - 1e-9 and count a power of two >= 64.
TracedCurve trace(const std::function<Complex(Complex)>& map, double r, std::size_t count,
                  std::string source_id);
TracedCurve trace(const ExtremalSpec& spec, double r, std::size_t count,
                  const QuadratureConfig& cfg = {});
TracedCurve trace(const HarmonicSeries& series, double r, std::size_t count,
                  std::string source_id = "series");

double perimeter(const TracedCurve& curve);

/// Shoelace area 1/2 sum (x_j y_{j+1} - x_{j+1} y_j); positive for
/// counterclockwise curves.
double area(const TracedCurve& curve);

/// Total signed turning of the edge directions over 2 pi, rounded.
int turning_number(const TracedCurve& curve);

struct ConvexityReport {
  bool convex = false;
  std::optional<std::size_t> first_violation;  // vertex index with a wrong-signed turn
  int turning_number = 0;
};

/// Convex iff every cross product of consecutive edges has the orientation's
/// sign, up to -1e-12 |e_j| |e_{j+1}|, and the turning number is +-1.
/// Throws DegenerateEdge when two consecutive points coincide to within
/// 1e-15 of the curve's extent.
ConvexityReport convexity(const TracedCurve& curve);

/// Distance from the origin to the closed polyline (vertices and edges).
double dist_origin(const TracedCurve& curve);

struct CurveReport {
  double perimeter = 0.0;
  double area = 0.0;
  bool convex = false;
  double dist_origin = 0.0;
  int turning_number = 0;
  double r = 0.0;
  std::size_t count = 0;
};

CurveReport analyze(const TracedCurve& curve);

/// max_j |F(r e^{i (t_j + 2 pi / fold)}) - e^{2 pi i / fold} F(r e^{i t_j})|.
/// Zero for a map equivariant under rotation by 2 pi / fold.
double rotational_symmetry_defect(const std::function<Complex(Complex)>& map,
                                  const TracedCurve& curve, int fold);

struct AreaSeriesCheck {
  double alternative_formula = 0.0;  // R^2 pi (1 - sum_{k>=0} |a_k|^2 / ((k+1)(k+2)))
  double oracle = 0.0;         // shoelace area of the boundary image
  double derived = 0.0;        // R^2 pi (1 - sum_{k>=1} 2k |a_k|^2 / (k+2))
};

/// For F = R (\int_0^z (1 - t^2 h'(t)) dt + conj(h(z))) with h = sum a_k z^k.
/// Throws HypothesisViolated when |h'| / |1 - z^2 h'| < 1 fails on a
/// boundary sample.
AreaSeriesCheck area_series_check(std::span<const Complex> hcoeffs, double R,
                                  std::size_t oracle_count = 1u << 16);

/// CSV with header "t,re,im", 17 significant digits.
void write_csv(const TracedCurve& curve, std::ostream& out);

/// JSON object with keys perimeter, area, convex, dist_origin,
/// turning_number, r, count.
std::string to_json(const CurveReport& report);

}  // namespace hdiff
