#pragma once

// Holomorphic self-maps mu of the unit disk: the Beltrami data that selects
// an extremal harmonic map.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hdiff/error.hpp"

namespace hdiff {

/// Radius used for boundary sampling of user-supplied maps.
inline constexpr double kBoundarySampleRadius = 1.0 - 1e-9;

class DiskSelfMap {
 public:
  struct Zero {};
  struct Constant {
    Complex c;
  };
  /// mu(z) = z^n, n >= 1.
  struct Monomial {
    int n;
  };
  /// mu(z) = k z^n with 0 <= k < 1, n >= 0.
  struct ScaledMonomial {
    double k;
    int n;
  };
  /// mu(z) = e^{i phase} (z - a) / (1 - conj(a) z).
  struct BlaschkeFactor {
    Complex a;
    double phase;
  };
  /// Only reachable through DiskSelfMap::polynomial, which validates.
  struct Polynomial {
    std::vector<Complex> coeffs;
    double certified_sup;
  };
  struct Product {
    std::vector<DiskSelfMap> factors;
  };

  using Variant = std::variant<Zero, Constant, Monomial, ScaledMonomial,
                               BlaschkeFactor, Polynomial, Product>;

  DiskSelfMap() : DiskSelfMap(Zero{}) {}

  static DiskSelfMap zero();
  static DiskSelfMap constant(Complex c);
  static DiskSelfMap monomial(int n);
  static DiskSelfMap scaled_monomial(double k, int n);
  static DiskSelfMap blaschke(Complex a, double phase);
  /// Validates by boundary sampling with `count` points; throws
  /// ValidationFailed carrying the witness if |p| > 1 somewhere.
  static DiskSelfMap polynomial(std::vector<Complex> coeffs, int count = 4096);
  static DiskSelfMap product(std::vector<DiskSelfMap> factors);

  Complex operator()(Complex z) const;
  const Variant& variant() const noexcept { return *impl_; }

  /// Canonical text form; parse_disk_map(to_string()) reproduces the map.
  std::string to_string() const;

 private:
  explicit DiskSelfMap(Variant v) : impl_(std::make_shared<const Variant>(std::move(v))) {}

  std::shared_ptr<const Variant> impl_;
};

/// mu(z) for |z| <= 1.
Complex eval(const DiskSelfMap& mu, Complex z);

/// Estimate of sup |mu| over the disk. Exact for Zero, Constant, Monomial,
/// ScaledMonomial and BlaschkeFactor; otherwise the maximum over `count`
/// uniform samples on |z| = kBoundarySampleRadius.
double sup_norm_estimate(const DiskSelfMap& mu, int count = 4096);

struct ValidationResult {
  bool passed = false;
  Complex witness{};
  double witness_modulus = 0.0;  // |mu(witness)|, the sampled maximum
  double certified_sup = 0.0;    // set when passed
};

ValidationResult validate(const DiskSelfMap& mu, int count = 4096);
ValidationResult validate_polynomial(std::span<const Complex> coeffs, int count = 4096);

/// Parses "zero", "const:re,im", "mono:n", "smono:k,n",
/// "blaschke:re,im,phase", "poly:c0,c1,..." and products "A*B*...".
/// Polynomial coefficients are complex literals such as 0.3, -0.2i, 0.1+0.4i.
DiskSelfMap parse_disk_map(std::string_view text);

/// Parses "x", "yi", "x+yi", "x-yi".
Complex parse_complex_literal(std::string_view text);

}  // namespace hdiff
