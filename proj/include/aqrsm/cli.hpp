#pragma once

// Subcommands behind the aqrsm command-line tool. Each command renders its
// outputs to strings first and only then writes files, so the same code is
// driven in-process by the tests.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "aqrsm/io/config.hpp"
#include "aqrsm/io/format.hpp"
#include "aqrsm/io/heatmap.hpp"
#include "aqrsm/sweep.hpp"

namespace aqrsm {

inline constexpr const char* kVersion = "1.0.0";

namespace cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kIoError = 4 };

struct Options {
  std::string command;  // spectrum | critical | observables | sweep
  std::string config_path;
  std::optional<std::string> out;
  int workers = 1;
  bool plot = false;
  std::optional<io::ColorScale> scale;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// file name -> contents
using Outputs = std::map<std::string, std::string>;

namespace detail {

using io::csv_line;
using io::format_number;
using io::format_optional;

inline std::string integer(long long v) { return std::to_string(v); }

inline std::string error_field(ErrorCode c) { return integer(static_cast<int>(c)); }

}  // namespace detail

inline std::string spectrum_csv(const io::RunConfig& cfg) {
  using namespace detail;
  const io::SpectrumSection sec = cfg.spectrum.value_or(io::SpectrumSection{cfg.model.g, cfg.model.g, 1, 10});
  const int levels = std::min(sec.levels, 2 * (cfg.model.n_tr + 1));
  std::vector<std::string> header{"g"};
  for (int k = 0; k < levels; ++k) header.push_back("E" + integer(k));
  for (int k = 0; k < levels; ++k) header.push_back("P" + integer(k));
  std::string out = csv_line(header);
  for (int i = 0; i < sec.count; ++i) {
    const double g = sec.count == 1 ? sec.g_min : Axis{"g", sec.g_min, sec.g_max, sec.count}.value(i);
    ModelParams p = cfg.model;
    p.g = g;
    const EigenSystem e = solve_spectrum(p);
    std::vector<std::string> row{format_number(g)};
    for (int k = 0; k < levels; ++k) row.push_back(format_number(e.energies(k)));
    for (int k = 0; k < levels; ++k) row.push_back(integer(e.parities[k]));
    out += csv_line(row);
  }
  return out;
}

inline std::string critical_csv(const io::RunConfig& cfg, int workers = 1) {
  using namespace detail;
  const io::CriticalSection& c = cfg.critical;
  CrossingOptions opt;
  opt.closure = c.closure;
  opt.workers = workers;
  const CriticalPoints cp = find_crossings(cfg.model, c.g_min, c.g_max, c.steps, c.pairs, opt);
  std::string out = csv_line({"type", "lower", "upper", "g", "half_width"});
  out += csv_line({"analytic", "0", "1", format_optional(cp.gc_analytic), ""});
  if (cp.gc_numeric) {
    out += csv_line({"numeric_ground", "0", "1", format_number(cp.gc_numeric->value),
                     format_number(cp.gc_numeric->half_width)});
  } else {
    out += csv_line({"numeric_ground", "0", "1", "", ""});
  }
  for (const Crossing& x : cp.crossings) {
    out += csv_line({"crossing", integer(x.lower), integer(x.lower + 1), format_number(x.g), format_number(x.half_width)});
  }
  return out;
}

inline std::string observables_csv(const io::RunConfig& cfg) {
  using namespace detail;
  SweepSpec spec;
  spec.model = cfg.model;
  spec.bath = cfg.bath;
  spec.axis1 = Axis{"g", cfg.model.g, cfg.model.g + 1.0, 2};
  spec.n_levels = cfg.n_levels;
  spec.convergence_delta_ntr = cfg.convergence.delta_ntr;
  spec.convergence_tol = cfg.convergence.tol;
  const SweepRow row = evaluate_row(spec, cfg.model.g, std::nullopt);

  std::string out = csv_line({"g", "r", "u", "kt", "n_tr", "G2", "G3", "xi_B2", "n_photon", "flux_proxy", "eta1",
                              "eta2", "eta3", "converged", "error_code"});
  std::vector<std::string> fields{format_number(row.model.g), format_number(row.model.r), format_number(row.model.u),
                                  format_number(row.bath.kt_c), integer(row.model.n_tr)};
  if (row.report) {
    const ObservableReport& r = *row.report;
    for (const auto& v : {format_optional(r.g2), format_optional(r.g3), format_optional(r.xi_b2),
                          format_number(r.n_photon), format_number(r.flux_proxy), format_number(r.eta1),
                          format_number(r.eta2), format_number(r.eta3)})
      fields.push_back(v);
    fields.push_back(row.converged ? "1" : "0");
  } else {
    fields.insert(fields.end(), 9, "");
  }
  fields.push_back(error_field(row.error));
  out += csv_line(fields);
  return out;
}

inline std::string sweep_csv(const SweepResult& result) {
  using namespace detail;
  std::string out = csv_line({"i", "j", "g", "r", "u", "kt", "n_tr", "G2", "G3", "G2_approx", "G3_approx", "xi_B2",
                              "xi_B2_closed", "n_photon", "a_sq_re", "a_sq_im", "flux_proxy", "eta1", "eta2", "eta3",
                              "near_degenerate", "converged", "error_code"});
  const int n2 = result.spec.axis2 ? result.spec.axis2->count : 1;
  for (std::size_t idx = 0; idx < result.rows.size(); ++idx) {
    const SweepRow& row = result.rows[idx];
    std::vector<std::string> f{integer(static_cast<long long>(idx) / n2), integer(static_cast<long long>(idx) % n2),
                               format_number(row.model.g),  format_number(row.model.r),
                               format_number(row.model.u),  format_number(row.bath.kt_c),
                               integer(row.model.n_tr)};
    if (row.report) {
      const ObservableReport& r = *row.report;
      for (const auto& v :
           {format_optional(r.g2), format_optional(r.g3), format_optional(r.g2_approx), format_optional(r.g3_approx),
            format_optional(r.xi_b2), format_optional(r.xi_b2_closed), format_number(r.n_photon),
            format_number(r.a_sq.real()), format_number(r.a_sq.imag()), format_number(r.flux_proxy),
            format_number(r.eta1), format_number(r.eta2), format_number(r.eta3)})
        f.push_back(v);
      f.push_back(r.near_degenerate ? "1" : "0");
      f.push_back(row.converged ? "1" : "0");
    } else {
      f.insert(f.end(), 15, "");
    }
    f.push_back(error_field(row.error));
    out += csv_line(f);
  }
  return out;
}

/// sweep.csv, sweep.meta.json and, when plotting a 2-D sweep, sweep.svg.
inline Outputs sweep_outputs(const io::RunConfig& cfg, int workers = 1) {
  const auto start = std::chrono::steady_clock::now();
  const SweepResult result = run_sweep(io::sweep_spec(cfg), workers);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outputs out;
  out["sweep.csv"] = sweep_csv(result);
  if (cfg.output.plot) {
    if (!result.two_dimensional()) throw io::ConfigError("output.plot: heatmaps need a two-dimensional sweep (axis2)");
    out["sweep.svg"] = io::emit_heatmap(result, cfg.output.column, cfg.output.scale);
  }
  io::Json meta;
  meta["config"] = io::to_json(cfg);
  meta["version"] = kVersion;
  meta["wall_time_s"] = wall;
  meta["workers"] = workers;
  meta["rows"] = result.rows.size();
  out["sweep.meta.json"] = meta.dump(2) + "\n";
  return out;
}

inline Outputs command_outputs(const std::string& command, const io::RunConfig& cfg, int workers) {
  if (command == "spectrum") return {{"spectrum.csv", spectrum_csv(cfg)}};
  if (command == "critical") return {{"critical.csv", critical_csv(cfg, workers)}};
  if (command == "observables") return {{"observables.csv", observables_csv(cfg)}};
  if (command == "sweep") return sweep_outputs(cfg, workers);
  throw io::ConfigError("unknown command '" + command + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_outputs(const std::filesystem::path& dir, const Outputs& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, text] : files) {
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    if (!f) throw IoFailure("cannot write " + path.string());
  }
}

/// Loads the config, applies flag overrides, runs the command and writes its
/// files. Returns the process exit code; diagnostics go to `err`.
inline int run(const Options& opt, std::ostream& err = std::cerr) {
  try {
    if (opt.workers < 1) throw io::ConfigError("--workers: must be >= 1");
    if (opt.plot && opt.command != "sweep") throw io::ConfigError("--plot: only valid for sweep");
    io::RunConfig cfg = io::parse_config_text(read_file(opt.config_path));
    if (opt.out) cfg.output.dir = *opt.out;
    if (opt.scale) cfg.output.scale = *opt.scale;
    if (opt.plot) cfg.output.plot = true;
    const Outputs files = command_outputs(opt.command, cfg, opt.workers);
    write_outputs(cfg.output.dir, files);
    return kOk;
  } catch (const io::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoFailure& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const InvalidParameter& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  }
}

}  // namespace cli
}  // namespace aqrsm
