#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hdiff/diskmaps.hpp"
#include "hdiff/geometry.hpp"
#include "hdiff/grid.hpp"
#include "hdiff/poisson.hpp"
#include "json.hpp"

namespace hdiff::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPolygonRadius = 1.0 - 1e-4;
constexpr std::size_t kPolygonCount = 1u << 14;

std::string num(double v) { return fmt::format("{:.17g}", v); }

ordered_json complex_json(Complex z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

void emit(const RunConfig& cfg, std::ostream& out, const std::string& content) {
  if (cfg.out_path.empty())
    out << content;
  else
    write_atomic(cfg.out_path, content);
}

ExtremalSpec spec_from(const RunConfig& cfg) {
  ExtremalSpec spec{parse_disk_map(cfg.mu_text), cfg.R, cfg.a, cfg.theta, cfg.convention};
  spec.validate();
  return spec;
}

std::vector<Complex> default_grid(const RunConfig& cfg) {
  if (cfg.grid_n < 1 || cfg.grid_angles < 1)
    throw ValidationFailed(fmt::format("grid needs positive radii and angle counts, got {}x{}",
                                       cfg.grid_n, cfg.grid_angles));
  return polar_grid(cfg.grid_n, cfg.grid_angles, 0.95, true);
}

std::size_t series_samples(const RunConfig& cfg) {
  if (cfg.samples_n != 0) return cfg.samples_n;
  return cfg.boundary_text.starts_with("polygonal") ? 4096 : 256;
}

int cmd_extremal(const RunConfig& cfg, std::ostream& out) {
  const ExtremalSpec spec = spec_from(cfg);
  const auto grid = default_grid(cfg);
  std::vector<MapJet> jets(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) jets[i] = jet(spec, grid[i], true, cfg.quadrature);

  if (cfg.format == Format::json) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({{"z", complex_json(grid[i])},
                      {"f", complex_json(*jets[i].value)},
                      {"f_z", complex_json(jets[i].f_z)},
                      {"f_zbar", complex_json(jets[i].f_zbar)},
                      {"jacobian", jets[i].jacobian}});
    ordered_json doc{{"mu", spec.mu.to_string()}, {"R", spec.R}, {"points", rows}};
    emit(cfg, out, doc.dump(2) + "\n");
    return 0;
  }
  std::string csv = "re,im,f_re,f_im,fz_re,fz_im,fzb_re,fzb_im,jac\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const MapJet& j = jets[i];
    csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(grid[i].real()), num(grid[i].imag()),
                       num(j.value->real()), num(j.value->imag()), num(j.f_z.real()),
                       num(j.f_z.imag()), num(j.f_zbar.real()), num(j.f_zbar.imag()), num(j.jacobian));
  }
  emit(cfg, out, csv);
  return 0;
}

int cmd_poisson(const RunConfig& cfg, std::ostream& out) {
  if (cfg.boundary_text.empty()) throw ParseError("poisson needs --boundary");
  const BoundaryFunction boundary = parse_boundary(cfg.boundary_text, series_samples(cfg));
  const HarmonicSeries series = poisson_extend(boundary);
  const auto& c = series.coefficients();

  if (cfg.format == Format::json) {
    const double L = perimeter_of_boundary(boundary);
    const auto grid = default_grid(cfg);
    const OrientationReport orient = orientation_check(series, grid);
    const SpScan scan = sp_scan(series, L / kTwoPi, grid);
    ordered_json coeffs = ordered_json::array();
    for (int k = c.min_index(); k <= c.max_index(); ++k) coeffs.push_back({k, c[k].real(), c[k].imag()});
    ordered_json doc{{"boundary", boundary.provenance()},
                     {"samples", boundary.size()},
                     {"perimeter", L},
                     {"R", L / kTwoPi},
                     {"injective", injectivity_sample(boundary)},
                     {"orientation_preserving", orient.passed},
                     {"max_margin", scan.max_margin},
                     {"argmax", complex_json(scan.argmax)},
                     {"coefficients", coeffs}};
    emit(cfg, out, doc.dump(2) + "\n");
    return 0;
  }
  std::string csv = "k,re,im\n";
  for (int k = c.min_index(); k <= c.max_index(); ++k)
    csv += fmt::format("{},{},{}\n", k, num(c[k].real()), num(c[k].imag()));
  emit(cfg, out, csv);
  return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  auto grid = default_grid(cfg);
  std::vector<double> field;
  double max_margin = 0.0, tol = 0.0;
  std::size_t argmax = 0;
  bool holds = true;
  std::string source;

  if (!cfg.boundary_text.empty()) {
    const BoundaryFunction boundary = parse_boundary(cfg.boundary_text, series_samples(cfg));
    const HarmonicSeries series = poisson_extend(boundary);
    tol = cfg.margin_tolerance >= 0.0 ? cfg.margin_tolerance : 1e-9;
    const SpScan scan = sp_scan(series, perimeter_of_boundary(boundary) / kTwoPi, grid, tol);
    field = scan.field;
    max_margin = scan.max_margin;
    argmax = scan.argmax_index;
    holds = scan.holds;
    source = boundary.provenance();
  } else {
    const ExtremalSpec spec = spec_from(cfg);
    const Complex p = equality_point(spec);
    if (std::find(grid.begin(), grid.end(), p) == grid.end()) grid.push_back(p);
    tol = cfg.margin_tolerance >= 0.0 ? cfg.margin_tolerance : 1e-12;
    const MarginScan scan = margin_scan(spec, grid, tol);
    field = scan.field;
    max_margin = scan.max_margin;
    argmax = scan.argmax_index;
    holds = scan.holds;
    source = spec.mu.to_string();
  }

  std::string artifact;
  if (cfg.format == Format::json) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({grid[i].real(), grid[i].imag(), field[i]});
    ordered_json doc{{"source", source},
                     {"max_margin", max_margin},
                     {"argmax", complex_json(grid[argmax])},
                     {"argmax_index", argmax},
                     {"tolerance", tol},
                     {"holds", holds},
                     {"field", rows}};
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = "re,im,margin\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      artifact += fmt::format("{},{},{}\n", num(grid[i].real()), num(grid[i].imag()), num(field[i]));
  }
  // Without --out the CSV field is dropped and only the summary is printed.
  if (!cfg.out_path.empty() || cfg.format == Format::json) emit(cfg, out, artifact);
  if (!cfg.out_path.empty() || cfg.format == Format::csv)
    out << fmt::format("max margin {} at z = {}{:+.17g}i (grid index {}), {}\n", num(max_margin),
                       num(grid[argmax].real()), grid[argmax].imag(), argmax,
                       holds ? "bound holds" : "BOUND VIOLATED");
  return holds ? 0 : static_cast<int>(ErrorCode::violation);
}

int cmd_trace(const RunConfig& cfg, std::ostream& out) {
  const std::size_t count = cfg.samples_n != 0 ? cfg.samples_n : 4096;
  TracedCurve curve;
  if (!cfg.boundary_text.empty()) {
    const double r = cfg.r != 0.0 ? cfg.r : kSeriesDerivativeCap;
    const BoundaryFunction boundary = parse_boundary(cfg.boundary_text, 4096);
    curve = trace(poisson_extend(boundary), r, count, boundary.provenance());
  } else {
    const double r = cfg.r != 0.0 ? cfg.r : 0.999;
    curve = trace(spec_from(cfg), r, count, cfg.quadrature);
  }
  const CurveReport report = analyze(curve);
  const std::string json = to_json(report) + "\n";
  if (cfg.format == Format::json) {
    emit(cfg, out, json);
  } else {
    std::ostringstream csv;
    write_csv(curve, csv);
    emit(cfg, out, csv.str());
    if (!cfg.out_path.empty() && cfg.report_path.empty()) out << json;
  }
  if (!cfg.report_path.empty()) write_atomic(cfg.report_path, json);
  return 0;
}

int cmd_polygon(const RunConfig& cfg, std::ostream& out) {
  if (cfg.polygon_n < 1) throw ValidationFailed(fmt::format("polygon needs n >= 1, got {}", cfg.polygon_n));
  const int n = cfg.polygon_n, m = n + 2;
  const ExtremalSpec spec{DiskSelfMap::monomial(n), cfg.R};
  spec.validate();
  const double r = cfg.r != 0.0 ? cfg.r : kPolygonRadius;
  const std::size_t count = cfg.samples_n != 0 ? cfg.samples_n : kPolygonCount;
  const TracedCurve curve = trace(spec, r, count, cfg.quadrature);
  const CurveReport rep = analyze(curve);
  const double defect = rotational_symmetry_defect(
      [&](Complex z) { return eval_normalized(spec, z, cfg.quadrature); }, curve, m);

  // Regular m-gon with perimeter 2 pi R.
  const double L = kTwoPi * cfg.R;
  const double apothem = L / m / (2.0 * std::tan(std::numbers::pi / m));
  const double poly_area = 0.5 * L * apothem;

  struct Row {
    std::string name;
    std::string value, target, tol;
    bool pass;
  };
  auto rel_row = [](std::string name, double v, double t, double tol) {
    return Row{std::move(name), num(v), num(t), fmt::format("{} rel", tol), std::abs(v - t) <= tol * std::abs(t)};
  };
  std::vector<Row> rows{
      rel_row("perimeter", rep.perimeter, L, 0.01),
      Row{"convex", rep.convex ? "true" : "false", "true", "-", rep.convex},
      Row{fmt::format("symmetry {}-fold", m), num(defect), "0", "1e-06 abs", defect <= 1e-6},
      rel_row("area", rep.area, poly_area, 0.01),
      rel_row("dist_origin", rep.dist_origin, apothem, 0.01),
  };
  bool all = true;
  for (const Row& row : rows) all = all && row.pass;

  if (cfg.format == Format::json) {
    ordered_json checks = ordered_json::array();
    for (const Row& row : rows)
      checks.push_back({{"name", row.name}, {"value", row.value}, {"target", row.target},
                        {"tolerance", row.tol}, {"passed", row.pass}});
    ordered_json doc{{"n", n}, {"R", cfg.R}, {"r", r}, {"count", count},
                     {"report", ordered_json::parse(to_json(rep))}, {"checks", checks}, {"passed", all}};
    emit(cfg, out, doc.dump(2) + "\n");
  } else {
    std::string table = fmt::format("polygon n={} ({}-gon), R={}, r={}, count={}\n", n, m, num(cfg.R), num(r), count);
    table += fmt::format("{:<18} {:<24} {:<24} {:<10} {}\n", "check", "value", "target", "tolerance", "result");
    for (const Row& row : rows)
      table += fmt::format("{:<18} {:<24} {:<24} {:<10} {}\n", row.name, row.value, row.target, row.tol,
                           row.pass ? "pass" : "FAIL");
    emit(cfg, out, table);
  }
  return all ? 0 : static_cast<int>(ErrorCode::violation);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto checks = verify_suite();
  std::size_t failed = 0;
  for (const Check& c : checks) {
    if (!c.passed) ++failed;
    out << fmt::format("{} {}/{}: value={} target={} tol={} ({})\n", c.passed ? "PASS" : "FAIL", c.module,
                       c.name, num(c.value), num(c.target), c.tolerance, c.relation);
  }
  out << fmt::format("{} checks, {} passed, {} failed\n", checks.size(), checks.size() - failed, failed);
  if (!cfg.out_path.empty()) write_atomic(cfg.out_path, verify_report_json(checks));
  return failed == 0 ? 0 : static_cast<int>(ErrorCode::violation);
}

}  // namespace

bool parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out) {
  CLI::App app{"Harmonic diffeomorphisms of the disk: extremal maps, Poisson extensions and curve checks",
               "hdiff"};
  app.require_subcommand(1);
  std::string a_text = "0", convention = "minus", format = "csv";

  auto add_map = [&](CLI::App* sub) {
    sub->add_option("--mu", cfg.mu_text, "Beltrami coefficient (zero, const:re,im, mono:n, smono:k,n, "
                                         "blaschke:re,im,phase, poly:c0,c1,..., products with '*')");
    sub->add_option("--R", cfg.R, "Perimeter scale R");
    sub->add_option("--a", a_text, "Shift point, a complex literal such as 0.3-0.6i");
    sub->add_option("--theta", cfg.theta, "Rotation angle");
    sub->add_option("--convention", convention, "Shift convention: minus or plus")
        ->check(CLI::IsMember({"minus", "plus"}));
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid-n", cfg.grid_n, "Chebyshev radii in (0, 0.95]");
    sub->add_option("--grid-angles", cfg.grid_angles, "Angles per radius");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Output file (written atomically); stdout when absent");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_quadrature = [&](CLI::App* sub) {
    sub->add_option("--abs-tol", cfg.quadrature.abs_tol, "Quadrature absolute tolerance");
    sub->add_option("--rel-tol", cfg.quadrature.rel_tol, "Quadrature relative tolerance");
    sub->add_option("--max-depth", cfg.quadrature.max_depth, "Quadrature bisection depth");
  };

  auto* extremal = app.add_subcommand("extremal", "Sample the extremal map and its jets on the polar grid");
  add_map(extremal);
  add_grid(extremal);
  add_output(extremal);
  add_quadrature(extremal);

  auto* poisson = app.add_subcommand("poisson", "Poisson-extend boundary data and write the series");
  poisson->add_option("--boundary", cfg.boundary_text,
                      "circle, ellipse:b, polygonal:k, twist:eps or samples:path.csv")->required();
  poisson->add_option("--samples", cfg.samples_n, "Boundary sample count (power of two)");
  add_grid(poisson);
  add_output(poisson);

  auto* scan = app.add_subcommand("scan", "Schwarz-Pick margin field |f_z|(1-|z|^2)/R and its maximum");
  add_map(scan);
  scan->add_option("--boundary", cfg.boundary_text, "Scan a Poisson series instead of an extremal map");
  scan->add_option("--samples", cfg.samples_n, "Boundary sample count (power of two)");
  scan->add_option("--tolerance", cfg.margin_tolerance, "Slack allowed above 1");
  add_grid(scan);
  add_output(scan);

  auto* tr = app.add_subcommand("trace", "Trace the image of |z| = r and report its geometry");
  add_map(tr);
  tr->add_option("--boundary", cfg.boundary_text, "Trace a Poisson series instead of an extremal map");
  tr->add_option("--r", cfg.r, "Circle radius");
  tr->add_option("--count", cfg.samples_n, "Points on the circle (power of two >= 64)");
  tr->add_option("--report", cfg.report_path, "Also write the curve report JSON here");
  add_output(tr);
  add_quadrature(tr);

  auto* polygon = app.add_subcommand("polygon", "Regular (n+2)-gon example for mu = z^n");
  polygon->add_option("n", cfg.polygon_n, "Exponent n >= 1")->required();
  polygon->add_option("R", cfg.R, "Perimeter scale R");
  polygon->add_option("--r", cfg.r, "Trace radius");
  polygon->add_option("--count", cfg.samples_n, "Trace points");
  add_output(polygon);
  add_quadrature(polygon);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite and write a JSON report");
  verify->add_option("--out", cfg.out_path, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  for (auto* sub : app.get_subcommands()) {
    const std::string& name = sub->get_name();
    if (name == "extremal") cfg.command = Command::extremal;
    else if (name == "poisson") cfg.command = Command::poisson;
    else if (name == "scan") cfg.command = Command::scan;
    else if (name == "trace") cfg.command = Command::trace;
    else if (name == "polygon") cfg.command = Command::polygon;
    else cfg.command = Command::verify;
  }
  cfg.a = parse_complex_literal(a_text);
  cfg.convention = convention == "plus" ? ShiftConvention::plus : ShiftConvention::minus;
  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.quadrature.validate();
  return true;
}

int run(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::extremal: return cmd_extremal(cfg, out);
    case Command::poisson: return cmd_poisson(cfg, out);
    case Command::scan: return cmd_scan(cfg, out);
    case Command::trace: return cmd_trace(cfg, out);
    case Command::polygon: return cmd_polygon(cfg, out);
    case Command::verify: return cmd_verify(cfg, out);
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg;
    if (!parse_args(argc, argv, cfg, out)) return 0;
    return run(cfg, out);
  } catch (const Error& e) {
    const int code = static_cast<int>(e.code());
    err << error_record(code, e.kind(), e.what(), e.witness(), e.witness_value()) << "\n";
    return code;
  } catch (const std::exception& e) {
    err << error_record(1, "InternalError", e.what()) << "\n";
    return 1;
  }
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationFailed(fmt::format("cannot open '{}' for writing", tmp.string()));
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp);
      throw ValidationFailed(fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationFailed(fmt::format("cannot rename onto '{}': {}", path.string(), ec.message()));
  }
}

std::string error_record(int code, std::string_view kind, std::string_view message,
                         const std::optional<Complex>& witness, const std::optional<double>& witness_value) {
  ordered_json body{{"code", code}, {"kind", kind}, {"message", message}};
  if (witness) body["witness"] = complex_json(*witness);
  if (witness_value) body["witness_value"] = *witness_value;
  return ordered_json{{"error", body}}.dump();
}

}  // namespace hdiff::cli
