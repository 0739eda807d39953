#pragma once

#include <cmath>
#include <optional>

#include "hdiff/error.hpp"

namespace hdiff {

/// Value and first Wirtinger derivatives of a map at a point, with the
/// quantities derived from them.
struct MapJet {
  std::optional<Complex> value;
  Complex f_z{};
  Complex f_zbar{};
  double jacobian = 0.0;    // |f_z|^2 - |f_zbar|^2
  double dpartial = 0.0;    // |f_z|
  double dilatation = 0.0;  // |f_zbar| / |f_z|
  double dnorm_sq = 0.0;    // |f_z|^2 + |f_zbar|^2

  static MapJet from_derivatives(Complex f_z, Complex f_zbar,
                                 std::optional<Complex> value = std::nullopt) {
    MapJet j;
    j.value = value;
    j.f_z = f_z;
    j.f_zbar = f_zbar;
    const double a = std::norm(f_z);
    const double b = std::norm(f_zbar);
    j.jacobian = a - b;
    j.dpartial = std::sqrt(a);
    j.dilatation = j.dpartial > 0.0 ? std::sqrt(b) / j.dpartial : INFINITY;
    j.dnorm_sq = a + b;
    return j;
  }
};

}  // namespace hdiff
