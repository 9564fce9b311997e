#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aqrsm/parallel.hpp"
#include "aqrsm/pipeline.hpp"

namespace aqrsm {

struct Axis {
  std::string name;  // one of g, r, u, kt
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  double value(int i) const { return i == count - 1 ? max : min + (max - min) * i / (count - 1); }

  friend bool operator==(const Axis&, const Axis&) = default;
};

struct SweepSpec {
  ModelParams model;
  BathParams bath;
  Axis axis1{"g", 0.05, 2.0, 41};
  std::optional<Axis> axis2;
  ObservableSet observables;
  int n_levels = 40;
  int convergence_delta_ntr = 40;  // 0 disables the per-point check
  double convergence_tol = 1e-6;

  std::size_t rows() const {
    return static_cast<std::size_t>(axis1.count) * static_cast<std::size_t>(axis2 ? axis2->count : 1);
  }

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

inline bool is_axis_name(std::string_view name) {
  return name == "g" || name == "r" || name == "u" || name == "kt";
}

inline void apply_axis(std::string_view name, double v, ModelParams& m, BathParams& b) {
  if (name == "g") m.g = v;
  else if (name == "r") m.r = v;
  else if (name == "u") m.u = v;
  else if (name == "kt") b.kt_q = b.kt_c = v;
  else throw InvalidParameter("unknown axis parameter '" + std::string(name) + "'");
}

/// Throws InvalidParameter listing every offending field.
inline void validate(const SweepSpec& s) {
  std::vector<std::string> bad;
  auto check_axis = [&](const Axis& a, const std::string& label) {
    if (!is_axis_name(a.name)) bad.push_back(label + ".name must be one of g, r, u, kt");
    if (a.count < 2) bad.push_back(label + ".count must be >= 2");
    if (!(std::isfinite(a.min) && std::isfinite(a.max) && a.min < a.max)) bad.push_back(label + ".min must be < max");
    const double lo = std::min(a.min, a.max), hi = std::max(a.min, a.max);
    if ((a.name == "g" || a.name == "r" || a.name == "kt") && lo < 0.0) bad.push_back(label + " range must be >= 0");
    if (a.name == "u" && !(std::abs(lo) < s.model.omega0 && std::abs(hi) < s.model.omega0)) {
      bad.push_back(label + " range must satisfy |u| < omega0");
    }
  };
  check_axis(s.axis1, "axis1");
  if (s.axis2) {
    check_axis(*s.axis2, "axis2");
    if (s.axis2->name == s.axis1.name) bad.push_back("axis2.name must differ from axis1.name");
  }
  if (s.n_levels < 4) bad.push_back("n_levels must be >= 4");
  if (s.convergence_delta_ntr != 0 && s.convergence_delta_ntr < 10) bad.push_back("convergence_delta_ntr must be 0 or >= 10");
  if (!(s.convergence_tol > 0.0)) bad.push_back("convergence_tol must be > 0");
  try {
    validate(s.model);
  } catch (const InvalidParameter& e) {
    bad.emplace_back(e.what());
  }
  try {
    validate(s.bath);
  } catch (const InvalidParameter& e) {
    bad.emplace_back(e.what());
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "invalid sweep spec: ";
    for (std::size_t i = 0; i < bad.size(); ++i) os << (i ? "; " : "") << bad[i];
    throw InvalidParameter(os.str());
  }
}

struct SweepRow {
  double axis1 = 0.0;
  double axis2 = std::numeric_limits<double>::quiet_NaN();
  ModelParams model;
  BathParams bath;
  std::optional<ObservableReport> report;  // empty when error != none
  bool converged = false;
  ErrorCode error = ErrorCode::none;
  std::string message;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // row-major in (axis1 index, axis2 index)

  bool two_dimensional() const { return spec.axis2.has_value(); }
};

namespace detail {

inline bool close_enough(std::optional<double> a, std::optional<double> b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  const double diff = std::abs(*a - *b);
  return std::abs(*a) < 1e-6 ? diff < tol : diff < tol * std::abs(*a);
}

}  // namespace detail

/// Convergence of a report against one evaluated at a larger truncation.
inline bool reports_agree(const ObservableReport& a, const ObservableReport& b, double tol) {
  return detail::close_enough(a.g2, b.g2, tol) && detail::close_enough(a.g3, b.g3, tol) &&
         detail::close_enough(a.xi_b2, b.xi_b2, tol) && detail::close_enough(a.n_photon, b.n_photon, tol);
}

inline SweepRow evaluate_row(const SweepSpec& spec, double v1, std::optional<double> v2) {
  SweepRow row;
  row.axis1 = v1;
  row.model = spec.model;
  row.bath = spec.bath;
  apply_axis(spec.axis1.name, v1, row.model, row.bath);
  if (v2) {
    row.axis2 = *v2;
    apply_axis(spec.axis2->name, *v2, row.model, row.bath);
  }
  const PointOptions opt{spec.n_levels, spec.observables};
  try {
    row.report = evaluate_point(row.model, row.bath, opt);
  } catch (const Error& e) {
    row.error = e.code();
    row.message = e.what();
    return row;
  } catch (const std::exception& e) {
    row.error = ErrorCode::numeric_failure;
    row.message = e.what();
    return row;
  }
  if (spec.convergence_delta_ntr > 0) {
    ModelParams larger = row.model;
    larger.n_tr += spec.convergence_delta_ntr;
    try {
      row.converged = reports_agree(*row.report, evaluate_point(larger, row.bath, opt), spec.convergence_tol);
    } catch (const std::exception&) {
      row.converged = false;
    }
  } else {
    row.converged = true;
  }
  return row;
}

/// Each grid point is evaluated independently into its own slot, so the
/// table does not depend on the worker count.
inline SweepResult run_sweep(const SweepSpec& spec, int workers = 1) {
  validate(spec);
  if (workers < 1) throw InvalidParameter("workers must be >= 1");
  SweepResult result;
  result.spec = spec;
  result.rows.resize(spec.rows());
  const int n2 = spec.axis2 ? spec.axis2->count : 1;
  parallel_for(result.rows.size(), workers, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / n2);
    const int j = static_cast<int>(idx % n2);
    std::optional<double> v2;
    if (spec.axis2) v2 = spec.axis2->value(j);
    result.rows[idx] = evaluate_row(spec, spec.axis1.value(i), v2);
  });
  return result;
}

inline constexpr std::array<std::string_view, 11> kReportColumns = {
    "g2", "g3", "g2_approx", "g3_approx", "xi_b2", "xi_b2_closed", "n_photon", "flux_proxy", "eta1", "eta2", "eta3"};

inline std::optional<double> column_value(const ObservableReport& r, std::string_view column) {
  if (column == "g2") return r.g2;
  if (column == "g3") return r.g3;
  if (column == "g2_approx") return r.g2_approx;
  if (column == "g3_approx") return r.g3_approx;
  if (column == "xi_b2") return r.xi_b2;
  if (column == "xi_b2_closed") return r.xi_b2_closed;
  if (column == "n_photon") return r.n_photon;
  if (column == "flux_proxy") return r.flux_proxy;
  if (column == "eta1") return r.eta1;
  if (column == "eta2") return r.eta2;
  if (column == "eta3") return r.eta3;
  throw InvalidInput("unknown observable column '" + std::string(column) + "'");
}

inline std::optional<double> column_value(const SweepRow& row, std::string_view column) {
  if (row.error != ErrorCode::none || !row.report) {
    column_value(ObservableReport{}, column);  // still reject unknown names
    return std::nullopt;
  }
  return column_value(*row.report, column);
}

struct SignTransitions {
  int count = 0;
  std::vector<double> locations;  // axis midpoints between the rows that flip
};

/// Strict sign changes of (value - threshold) along a 1-D sweep, skipping
/// error-coded rows and exact ties.
inline SignTransitions sign_transitions(const SweepResult& result, std::string_view column, double threshold) {
  if (result.two_dimensional()) throw InvalidInput("sign_transitions: result must be one-dimensional");
  SignTransitions out;
  int prev_sign = 0;
  double prev_axis = 0.0;
  for (const SweepRow& row : result.rows) {
    const std::optional<double> v = column_value(row, column);
    if (!v || !std::isfinite(*v)) continue;
    const double d = *v - threshold;
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (prev_sign != 0 && sign != prev_sign) {
      ++out.count;
      out.locations.push_back(0.5 * (prev_axis + row.axis1));
    }
    prev_sign = sign;
    prev_axis = row.axis1;
  }
  return out;
}

}  // namespace aqrsm
