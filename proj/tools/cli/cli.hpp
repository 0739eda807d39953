#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hdiff/error.hpp"
#include "hdiff/extremal.hpp"
#include "hdiff/numerics.hpp"

namespace hdiff::cli {

enum class Command { extremal, poisson, scan, trace, polygon, verify };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::verify;
  std::string mu_text = "zero";
  std::string boundary_text;  // non-empty selects a Poisson series source
  double R = 1.0;
  Complex a{};
  double theta = 0.0;
  ShiftConvention convention = ShiftConvention::minus;
  double r = 0.0;               // 0 selects the command default
  int grid_n = 24;
  int grid_angles = 128;
  std::size_t samples_n = 0;    // 0 selects the command default
  int polygon_n = 2;
  std::string out_path;
  std::string report_path;
  Format format = Format::csv;
  QuadratureConfig quadrature;
  double margin_tolerance = -1.0;  // negative selects the command default
};

/// Throws ParseError for malformed arguments. Returns false when help was
/// printed and nothing should run.
bool parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out);

/// Runs one command. Returns the exit status; library errors propagate.
int run(const RunConfig& config, std::ostream& out);

/// parse_args + run, mapping errors to exit codes and writing a one-line
/// JSON error record to `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// {"error": {"code", "kind", "message", "witness"?, "witness_value"?}}
std::string error_record(int code, std::string_view kind, std::string_view message,
                         const std::optional<Complex>& witness = std::nullopt,
                         const std::optional<double>& witness_value = std::nullopt);

struct Check {
  std::string module;
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "abs", "rel", "le", "ge", "true"
  bool passed = false;
};

std::vector<Check> verify_suite();
std::string verify_report_json(const std::vector<Check>& checks);

}  // namespace hdiff::cli
