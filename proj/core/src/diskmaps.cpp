#include "hdiff/diskmaps.hpp"

#include <charconv>
#include <functional>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace hdiff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Complex ipow(Complex z, int n) {
  Complex r{1.0, 0.0};
  for (; n > 0; n >>= 1) {
    if (n & 1) r *= z;
    z *= z;
  }
  return r;
}

Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double parse_real(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(fmt::format("not a real number: '{}'", s));
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(fmt::format("not an integer: '{}'", s));
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string format_complex(Complex c) {
  return fmt::format("{:.17g}{:+.17g}i", c.real(), c.imag());
}

DiskSelfMap parse_factor(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto args = body.empty() ? std::vector<std::string_view>{} : split(body, ',');
  auto expect = [&](std::size_t n) {
    if (args.size() != n)
      throw ParseError(fmt::format("'{}' expects {} argument(s), got {}", head, n, args.size()));
  };

  if (head == "zero") {
    expect(0);
    return DiskSelfMap::zero();
  }
  if (head == "const") {
    expect(2);
    return DiskSelfMap::constant({parse_real(args[0]), parse_real(args[1])});
  }
  if (head == "mono") {
    expect(1);
    return DiskSelfMap::monomial(parse_int(args[0]));
  }
  if (head == "smono") {
    expect(2);
    return DiskSelfMap::scaled_monomial(parse_real(args[0]), parse_int(args[1]));
  }
  if (head == "blaschke") {
    expect(3);
    return DiskSelfMap::blaschke({parse_real(args[0]), parse_real(args[1])},
                                 parse_real(args[2]));
  }
  if (head == "poly") {
    if (args.empty()) throw ParseError("'poly' needs at least one coefficient");
    std::vector<Complex> coeffs;
    for (auto a : args) coeffs.push_back(parse_complex_literal(a));
    return DiskSelfMap::polynomial(std::move(coeffs));
  }
  throw ParseError(fmt::format("unknown disk map '{}'", head));
}

ValidationResult sample_boundary(const std::function<Complex(Complex)>& f, int count) {
  if (count < 1) throw ValidationFailed("boundary sample count must be positive");
  ValidationResult r;
  for (int j = 0; j < count; ++j) {
    const Complex z = std::polar(kBoundarySampleRadius, 2.0 * std::numbers::pi * j / count);
    const double m = std::abs(f(z));
    if (j == 0 || m > r.witness_modulus) {
      r.witness_modulus = m;
      r.witness = z;
    }
  }
  r.passed = r.witness_modulus <= 1.0;
  r.certified_sup = r.passed ? r.witness_modulus : 0.0;
  return r;
}

}  // namespace

DiskSelfMap DiskSelfMap::zero() { return DiskSelfMap(Zero{}); }

DiskSelfMap DiskSelfMap::constant(Complex c) {
  if (!(std::abs(c) < 1.0))
    throw ValidationFailed(fmt::format("constant map needs |c| < 1, got |c| = {}", std::abs(c)),
                           std::nullopt, std::abs(c));
  return DiskSelfMap(Constant{c});
}

DiskSelfMap DiskSelfMap::monomial(int n) {
  if (n < 1) throw ValidationFailed(fmt::format("monomial degree must be >= 1, got {}", n));
  return DiskSelfMap(Monomial{n});
}

DiskSelfMap DiskSelfMap::scaled_monomial(double k, int n) {
  if (!(k >= 0.0 && k < 1.0))
    throw ValidationFailed(fmt::format("scaled monomial needs 0 <= k < 1, got {}", k));
  if (n < 0) throw ValidationFailed(fmt::format("scaled monomial degree must be >= 0, got {}", n));
  return DiskSelfMap(ScaledMonomial{k, n});
}

DiskSelfMap DiskSelfMap::blaschke(Complex a, double phase) {
  if (!(std::abs(a) < 1.0))
    throw ValidationFailed(fmt::format("Blaschke zero must lie in the open disk, |a| = {}", std::abs(a)),
                           a);
  if (!std::isfinite(phase)) throw ValidationFailed("Blaschke phase must be finite");
  return DiskSelfMap(BlaschkeFactor{a, phase});
}

DiskSelfMap DiskSelfMap::polynomial(std::vector<Complex> coeffs, int count) {
  if (coeffs.empty()) throw ValidationFailed("polynomial needs at least one coefficient");
  const ValidationResult v = validate_polynomial(coeffs, count);
  if (!v.passed)
    throw ValidationFailed(
        fmt::format("polynomial leaves the unit disk: |p({:.6g}{:+.6g}i)| = {:.17g}",
                    v.witness.real(), v.witness.imag(), v.witness_modulus),
        v.witness, v.witness_modulus);
  return DiskSelfMap(Polynomial{std::move(coeffs), v.certified_sup});
}

DiskSelfMap DiskSelfMap::product(std::vector<DiskSelfMap> factors) {
  if (factors.empty()) throw ValidationFailed("product needs at least one factor");
  if (factors.size() == 1) return factors.front();
  return DiskSelfMap(Product{std::move(factors)});
}

Complex DiskSelfMap::operator()(Complex z) const { return eval(*this, z); }

std::string DiskSelfMap::to_string() const {
  return std::visit(
      overloaded{
          [](const Zero&) -> std::string { return "zero"; },
          [](const Constant& c) {
            return fmt::format("const:{:.17g},{:.17g}", c.c.real(), c.c.imag());
          },
          [](const Monomial& m) { return fmt::format("mono:{}", m.n); },
          [](const ScaledMonomial& m) { return fmt::format("smono:{:.17g},{}", m.k, m.n); },
          [](const BlaschkeFactor& b) {
            return fmt::format("blaschke:{:.17g},{:.17g},{:.17g}", b.a.real(), b.a.imag(), b.phase);
          },
          [](const Polynomial& p) {
            std::string s = "poly:";
            for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
              if (i) s += ',';
              s += format_complex(p.coeffs[i]);
            }
            return s;
          },
          [](const Product& p) {
            std::string s;
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
              if (i) s += '*';
              s += p.factors[i].to_string();
            }
            return s;
          },
      },
      *impl_);
}

Complex eval(const DiskSelfMap& mu, Complex z) {
  using M = DiskSelfMap;
  return std::visit(
      overloaded{
          [](const M::Zero&) { return Complex{}; },
          [](const M::Constant& c) { return c.c; },
          [z](const M::Monomial& m) { return ipow(z, m.n); },
          [z](const M::ScaledMonomial& m) {
            return m.n == 0 ? Complex{m.k, 0.0} : m.k * ipow(z, m.n);
          },
          [z](const M::BlaschkeFactor& b) {
            return std::polar(1.0, b.phase) * (z - b.a) / (1.0 - std::conj(b.a) * z);
          },
          [z](const M::Polynomial& p) { return horner(p.coeffs, z); },
          [z](const M::Product& p) {
            Complex acc{1.0, 0.0};
            for (const auto& f : p.factors) acc *= eval(f, z);
            return acc;
          },
      },
      mu.variant());
}

double sup_norm_estimate(const DiskSelfMap& mu, int count) {
  using M = DiskSelfMap;
  const auto sampled = [&] {
    return sample_boundary([&](Complex z) { return eval(mu, z); }, count).witness_modulus;
  };
  return std::visit(
      overloaded{
          [](const M::Zero&) { return 0.0; },
          [](const M::Constant& c) { return std::abs(c.c); },
          [](const M::Monomial&) { return 1.0; },
          [](const M::ScaledMonomial& m) { return m.k; },
          [](const M::BlaschkeFactor&) { return 1.0; },
          [&](const M::Polynomial&) { return sampled(); },
          [&](const M::Product&) { return sampled(); },
      },
      mu.variant());
}

ValidationResult validate(const DiskSelfMap& mu, int count) {
  return sample_boundary([&](Complex z) { return eval(mu, z); }, count);
}

ValidationResult validate_polynomial(std::span<const Complex> coeffs, int count) {
  return sample_boundary([&](Complex z) { return horner(coeffs, z); }, count);
}

Complex parse_complex_literal(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty complex literal");
  if (text.back() != 'i' && text.back() != 'j') return {parse_real(text), 0.0};

  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_of = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split_at == std::string_view::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split_at)), imag_of(body.substr(split_at))};
}

DiskSelfMap parse_disk_map(std::string_view text) {
  if (text.empty()) throw ParseError("empty disk map description");
  const auto factors = split(text, '*');
  if (factors.size() == 1) return parse_factor(factors.front());
  std::vector<DiskSelfMap> maps;
  for (auto f : factors) maps.push_back(parse_factor(f));
  return DiskSelfMap::product(std::move(maps));
}

}  // namespace hdiff
