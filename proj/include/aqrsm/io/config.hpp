#pragma once

// Strict JSON run configuration. Unknown keys and wrongly typed values are
// rejected with the dotted path of the offending field.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "aqrsm/io/heatmap.hpp"
#include "aqrsm/sweep.hpp"

namespace aqrsm::io {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectrumSection {
  double g_min = 0.0;
  double g_max = 1.0;
  int count = 11;
  int levels = 10;
  friend bool operator==(const SpectrumSection&, const SpectrumSection&) = default;
};

struct CriticalSection {
  double g_min = 0.05;
  double g_max = 2.0;
  int steps = 400;
  std::vector<int> pairs{0, 1, 2};  // lower index n of each tracked pair (n, n+1)
  double closure = 1e-3;
  friend bool operator==(const CriticalSection&, const CriticalSection&) = default;
};

struct SweepSection {
  Axis axis1{"g", 0.05, 2.0, 41};
  std::optional<Axis> axis2;
  ObservableSet observables;
  int n_tr = 120;
  friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

struct ConvergenceSection {
  int delta_ntr = 40;  // 0 disables
  double tol = 1e-6;
  friend bool operator==(const ConvergenceSection&, const ConvergenceSection&) = default;
};

struct OutputSection {
  std::string dir = "out";
  ColorScale scale = ColorScale::linear;
  bool plot = false;
  std::string column = "g2";
  friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct RunConfig {
  ModelParams model{1.0, 1.0, 0.5, 1.0, 0.0, 200};
  BathParams bath;
  int n_levels = 40;
  ConvergenceSection convergence;
  std::optional<SpectrumSection> spectrum;
  CriticalSection critical;
  std::optional<SweepSection> sweep;
  OutputSection output;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace detail {

class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key, double fallback) {
    if (!take(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key, int fallback) {
    if (!take(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
    const auto x = v.get<long long>();
    if (x < -1000000000LL || x > 1000000000LL) throw ConfigError(field(key) + ": integer out of range");
    return static_cast<int>(x);
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!take(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!take(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    return v.get<std::string>();
  }

  const Json* child(const std::string& key) {
    if (!take(key)) return nullptr;
    return &j_.at(key);
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(field(it.key()) + ": unknown key");
    }
  }

 private:
  bool take(const std::string& key) {
    if (!j_.contains(key)) return false;
    used_.insert(key);
    return true;
  }
  std::string where() const { return path_.empty() ? "config" : path_; }

  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

inline void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw ConfigError(path + ": " + msg);
}

inline Axis parse_axis(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  Axis a;
  a.name = r.string("name", "");
  a.min = r.number("min", 0.0);
  a.max = r.number("max", 1.0);
  a.count = r.integer("count", 2);
  r.finish();
  require(is_axis_name(a.name), path + ".name", "must be one of g, r, u, kt");
  require(a.count >= 2, path + ".count", "must be >= 2");
  require(a.min < a.max, path + ".min", "must be < max");
  return a;
}

inline Json axis_json(const Axis& a) { return Json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}}; }

inline ObservableSet parse_observables(const Json& j, const std::string& path) {
  require(j.is_array(), path, "expected an array of names");
  ObservableSet s{false, false, false, false};
  for (const Json& item : j) {
    require(item.is_string(), path, "entries must be strings");
    const std::string name = item.get<std::string>();
    if (name == "g2") s.g2 = true;
    else if (name == "g3") s.g3 = true;
    else if (name == "squeezing") s.squeezing = true;
    else if (name == "approximants") s.approximants = true;
    else throw ConfigError(path + ": unknown observable '" + name + "'");
  }
  return s;
}

inline Json observables_json(const ObservableSet& s) {
  Json out = Json::array();
  if (s.g2) out.push_back("g2");
  if (s.g3) out.push_back("g3");
  if (s.squeezing) out.push_back("squeezing");
  if (s.approximants) out.push_back("approximants");
  return out;
}

}  // namespace detail

inline RunConfig parse_config(const Json& root) {
  using detail::ObjectReader;
  using detail::require;
  RunConfig cfg;
  ObjectReader top(root, "");

  if (const Json* m = top.child("model")) {
    ObjectReader r(*m, "model");
    cfg.model.delta = r.number("delta", cfg.model.delta);
    cfg.model.omega0 = r.number("omega0", cfg.model.omega0);
    cfg.model.g = r.number("g", cfg.model.g);
    cfg.model.r = r.number("r", cfg.model.r);
    cfg.model.u = r.number("u", cfg.model.u);
    cfg.model.n_tr = r.integer("n_tr", cfg.model.n_tr);
    r.finish();
  }
  require(cfg.model.omega0 > 0.0, "model.omega0", "must be > 0");
  require(cfg.model.delta > 0.0, "model.delta", "must be > 0");
  require(cfg.model.g >= 0.0, "model.g", "must be >= 0");
  require(cfg.model.r >= 0.0, "model.r", "must be >= 0");
  require(std::abs(cfg.model.u) < cfg.model.omega0, "model.u", "|u| must be < omega0");
  require(cfg.model.n_tr >= 2, "model.n_tr", "must be >= 2");

  if (const Json* b = top.child("bath")) {
    ObjectReader r(*b, "bath");
    cfg.bath.alpha_q = r.number("alpha_q", cfg.bath.alpha_q);
    cfg.bath.alpha_c = r.number("alpha_c", cfg.bath.alpha_c);
    cfg.bath.omega_cutoff = r.number("omega_cutoff", cfg.bath.omega_cutoff);
    cfg.bath.kt_q = r.number("kt_q", cfg.bath.kt_q);
    cfg.bath.kt_c = r.number("kt_c", cfg.bath.kt_c);
    r.finish();
  }
  require(cfg.bath.alpha_q > 0.0, "bath.alpha_q", "must be > 0");
  require(cfg.bath.alpha_c > 0.0, "bath.alpha_c", "must be > 0");
  require(cfg.bath.omega_cutoff > 0.0, "bath.omega_cutoff", "must be > 0");
  require(cfg.bath.kt_q >= 0.0, "bath.kt_q", "must be >= 0");
  require(cfg.bath.kt_c >= 0.0, "bath.kt_c", "must be >= 0");

  cfg.n_levels = top.integer("n_levels", cfg.n_levels);
  require(cfg.n_levels >= 4, "n_levels", "must be >= 4");

  if (const Json* c = top.child("convergence")) {
    ObjectReader r(*c, "convergence");
    cfg.convergence.delta_ntr = r.integer("delta_ntr", cfg.convergence.delta_ntr);
    cfg.convergence.tol = r.number("tol", cfg.convergence.tol);
    r.finish();
  }
  require(cfg.convergence.delta_ntr == 0 || cfg.convergence.delta_ntr >= 10, "convergence.delta_ntr",
          "must be 0 or >= 10");
  require(cfg.convergence.tol > 0.0, "convergence.tol", "must be > 0");

  if (const Json* s = top.child("spectrum")) {
    ObjectReader r(*s, "spectrum");
    SpectrumSection sec;
    sec.g_min = r.number("g_min", sec.g_min);
    sec.g_max = r.number("g_max", sec.g_max);
    sec.count = r.integer("count", sec.count);
    sec.levels = r.integer("levels", sec.levels);
    r.finish();
    require(sec.g_min >= 0.0, "spectrum.g_min", "must be >= 0");
    require(sec.count >= 1, "spectrum.count", "must be >= 1");
    require(sec.count == 1 || sec.g_min < sec.g_max, "spectrum.g_min", "must be < g_max");
    require(sec.levels >= 1 && sec.levels <= 2 * (cfg.model.n_tr + 1), "spectrum.levels",
            "must be between 1 and the Hilbert-space dimension");
    cfg.spectrum = sec;
  }

  if (const Json* c = top.child("critical")) {
    ObjectReader r(*c, "critical");
    cfg.critical.g_min = r.number("g_min", cfg.critical.g_min);
    cfg.critical.g_max = r.number("g_max", cfg.critical.g_max);
    cfg.critical.steps = r.integer("steps", cfg.critical.steps);
    cfg.critical.closure = r.number("closure", cfg.critical.closure);
    if (const Json* pairs = r.child("pairs")) {
      require(pairs->is_array(), "critical.pairs", "expected an array of level indices");
      cfg.critical.pairs.clear();
      for (const Json& p : *pairs) {
        require(p.is_number_integer() && p.get<long long>() >= 0 && p.get<long long>() < 2 * cfg.model.n_tr,
                "critical.pairs", "entries must be non-negative level indices");
        cfg.critical.pairs.push_back(p.get<int>());
      }
    }
    r.finish();
  }
  require(cfg.critical.g_min >= 0.0, "critical.g_min", "must be >= 0");
  require(cfg.critical.g_min < cfg.critical.g_max, "critical.g_min", "must be < g_max");
  require(cfg.critical.steps >= 8, "critical.steps", "must be >= 8");
  require(cfg.critical.closure > 0.0, "critical.closure", "must be > 0");

  if (const Json* s = top.child("sweep")) {
    ObjectReader r(*s, "sweep");
    SweepSection sec;
    if (const Json* a = r.child("axis1")) sec.axis1 = detail::parse_axis(*a, "sweep.axis1");
    else throw ConfigError("sweep.axis1: required");
    if (const Json* a = r.child("axis2")) sec.axis2 = detail::parse_axis(*a, "sweep.axis2");
    if (const Json* o = r.child("observables")) sec.observables = detail::parse_observables(*o, "sweep.observables");
    sec.n_tr = r.integer("n_tr", sec.n_tr);
    r.finish();
    require(sec.n_tr >= 2, "sweep.n_tr", "must be >= 2");
    require(!sec.axis2 || sec.axis2->name != sec.axis1.name, "sweep.axis2.name", "must differ from axis1.name");
    for (const Axis* a : {&sec.axis1, sec.axis2 ? &*sec.axis2 : nullptr}) {
      if (!a) continue;
      if (a->name == "u") {
        require(std::abs(a->min) < cfg.model.omega0 && std::abs(a->max) < cfg.model.omega0, "sweep." + a->name,
                "u range must satisfy |u| < omega0");
      } else {
        require(a->min >= 0.0, "sweep." + a->name, "range must be >= 0");
      }
    }
    cfg.sweep = sec;
  }

  if (const Json* o = top.child("output")) {
    ObjectReader r(*o, "output");
    cfg.output.dir = r.string("dir", cfg.output.dir);
    const std::string scale = r.string("scale", "linear");
    cfg.output.plot = r.boolean("plot", cfg.output.plot);
    cfg.output.column = r.string("column", cfg.output.column);
    r.finish();
    if (scale == "linear") cfg.output.scale = ColorScale::linear;
    else if (scale == "log10") cfg.output.scale = ColorScale::log10;
    else throw ConfigError("output.scale: must be linear or log10");
    require(!cfg.output.dir.empty(), "output.dir", "must not be empty");
    try {
      column_value(ObservableReport{}, cfg.output.column);
    } catch (const InvalidInput&) {
      throw ConfigError("output.column: unknown observable column '" + cfg.output.column + "'");
    }
  }
  top.finish();
  return cfg;
}

inline RunConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

inline Json to_json(const RunConfig& c) {
  Json j;
  j["model"] = {{"delta", c.model.delta}, {"omega0", c.model.omega0}, {"g", c.model.g},
                {"r", c.model.r},         {"u", c.model.u},           {"n_tr", c.model.n_tr}};
  j["bath"] = {{"alpha_q", c.bath.alpha_q}, {"alpha_c", c.bath.alpha_c}, {"omega_cutoff", c.bath.omega_cutoff},
               {"kt_q", c.bath.kt_q},       {"kt_c", c.bath.kt_c}};
  j["n_levels"] = c.n_levels;
  j["convergence"] = {{"delta_ntr", c.convergence.delta_ntr}, {"tol", c.convergence.tol}};
  if (c.spectrum) {
    j["spectrum"] = {{"g_min", c.spectrum->g_min},
                     {"g_max", c.spectrum->g_max},
                     {"count", c.spectrum->count},
                     {"levels", c.spectrum->levels}};
  }
  j["critical"] = {{"g_min", c.critical.g_min},
                   {"g_max", c.critical.g_max},
                   {"steps", c.critical.steps},
                   {"pairs", c.critical.pairs},
                   {"closure", c.critical.closure}};
  if (c.sweep) {
    Json s;
    s["axis1"] = detail::axis_json(c.sweep->axis1);
    if (c.sweep->axis2) s["axis2"] = detail::axis_json(*c.sweep->axis2);
    s["observables"] = detail::observables_json(c.sweep->observables);
    s["n_tr"] = c.sweep->n_tr;
    j["sweep"] = s;
  }
  j["output"] = {{"dir", c.output.dir},
                 {"scale", c.output.scale == ColorScale::log10 ? "log10" : "linear"},
                 {"plot", c.output.plot},
                 {"column", c.output.column}};
  return j;
}

inline SweepSpec sweep_spec(const RunConfig& c) {
  if (!c.sweep) throw ConfigError("sweep: section required for this command");
  SweepSpec s;
  s.model = c.model;
  s.model.n_tr = c.sweep->n_tr;
  s.bath = c.bath;
  s.axis1 = c.sweep->axis1;
  s.axis2 = c.sweep->axis2;
  s.observables = c.sweep->observables;
  s.n_levels = c.n_levels;
  s.convergence_delta_ntr = c.convergence.delta_ntr;
  s.convergence_tol = c.convergence.tol;
  return s;
}

}  // namespace aqrsm::io
