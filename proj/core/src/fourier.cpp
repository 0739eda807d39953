#include <fftw3.h>

#include <mutex>

#include <fmt/format.h>

#include "hdiff/numerics.hpp"

namespace hdiff {

namespace {

// FFTW's planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> run_fft(std::span<const Complex> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<Complex> out(in.begin(), in.end());
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

FourierCoefficients::FourierCoefficients(std::vector<Complex> fft_order)
    : data_(std::move(fft_order)) {}

Complex FourierCoefficients::operator[](int k) const noexcept {
  if (k < min_index() || k > max_index()) return {};
  const auto n = static_cast<int>(data_.size());
  return data_[static_cast<std::size_t>(k >= 0 ? k : n + k)];
}

FourierCoefficients fourier_analyze(std::span<const Complex> samples) {
  if (samples.size() < 2 || !is_power_of_two(samples.size()))
    throw BadLength(fmt::format(
        "Fourier analysis needs a power-of-two sample count, got {}", samples.size()));
  std::vector<Complex> c = run_fft(samples, FFTW_FORWARD);
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (auto& v : c) v *= inv_n;
  return FourierCoefficients(std::move(c));
}

std::vector<Complex> fourier_synthesize(const FourierCoefficients& coeffs) {
  if (coeffs.size() < 2 || !is_power_of_two(coeffs.size()))
    throw BadLength(fmt::format(
        "Fourier synthesis needs a power-of-two coefficient count, got {}", coeffs.size()));
  return run_fft(coeffs.fft_order(), FFTW_BACKWARD);
}

}  // namespace hdiff
