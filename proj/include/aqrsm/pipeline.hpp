#pragma once

// One parameter point: assemble -> diagonalize -> rates -> steady state ->
// observables.

#include <optional>

#include "aqrsm/observables.hpp"

namespace aqrsm {

inline constexpr double kNearDegenerateGap = 1e-4;  // units of omega0

struct ObservableSet {
  bool g2 = true;
  bool g3 = true;
  bool squeezing = true;
  bool approximants = true;

  friend bool operator==(const ObservableSet&, const ObservableSet&) = default;
};

struct ObservableReport {
  std::optional<double> g2, g3;
  std::optional<double> g2_approx, g3_approx;
  std::optional<double> xi_b2, xi_b2_closed, theta_min;
  double n_photon = 0.0;
  Complex a_sq;
  Complex a_mean;
  double flux_proxy = 0.0;
  double eta1 = 0.0, eta2 = 0.0, eta3 = 0.0;
  double gap10 = 0.0;
  bool near_degenerate = false;  // Delta10 below 1e-4 omega0
  bool frozen_pairs = false;     // degenerate pairs frozen at kt = 0

  bool bunched() const { return g2 && *g2 > 1.0; }
  bool antibunched() const { return g2 && *g2 < 1.0; }
};

struct PointOptions {
  int n_levels = 40;
  ObservableSet observables;
};

/// Everything computed on the way to a report; handy for tests and the CLI.
struct PointState {
  EigenSystem eigs;
  TransitionTable table;
  SteadyState steady;
  DetectionOperator detection;
};

inline PointState solve_point(const ModelParams& model, const BathParams& bath, int n_levels = 40) {
  validate(model);
  validate(bath);
  PointState s;
  s.eigs = solve_spectrum(model);
  s.table = transition_rates(s.eigs, model, bath, n_levels);
  s.steady = steady_populations(s.table);
  s.detection = detection_operator(s.table);
  return s;
}

/// Throws the underlying aqrsm::Error (zero flux, disconnected rate graph,
/// numeric failure) instead of returning a partial report.
inline ObservableReport evaluate_point(const PointState& s, const BathParams& bath, int n_tr,
                                       const ObservableSet& which = {}) {
  ObservableReport rep;
  const RealVector& e = s.eigs.energies;
  const RealVector& p = s.steady.populations;
  rep.gap10 = e(1) - e(0);
  rep.near_degenerate = rep.gap10 < kNearDegenerateGap;
  rep.frozen_pairs = !s.table.frozen_pairs.empty();
  if (s.eigs.size() >= 4) {
    rep.eta1 = (e(1) - e(0)) - (e(2) - e(1));
    rep.eta2 = (e(1) - e(0)) - (e(3) - e(1));
    rep.eta3 = 2.0 * (e(1) - e(0)) - (e(2) - e(1)) - (e(3) - e(2));
  }
  rep.flux_proxy = flux_proxy(s.detection, s.steady);
  if (which.g2) rep.g2 = correlation_g_n(s.detection.xplus, p, 2);
  if (which.g3) rep.g3 = correlation_g_n(s.detection.xplus, p, 3);
  if (which.approximants && s.detection.levels() >= 4) {
    const ApproxG2 a2 = approx_g2(s.eigs, s.detection, s.steady);
    if (a2.applicable) rep.g2_approx = a2.value;
    // The approximant's Boltzmann factor refers to the cavity bath temperature.
    const ApproxG3 a3 = approx_g3(s.eigs, s.detection, bath.kt_c);
    if (a3.applicable) rep.g3_approx = a3.value;
  }
  const FieldMoments f = LevelMoments::compute(s.eigs, annihilation_sparse(n_tr), s.steady.size()).average(p);
  rep.n_photon = f.n_photon;
  rep.a_sq = f.a_sq;
  rep.a_mean = f.a_mean;
  if (which.squeezing) {
    const Squeezing sq = squeezing_factor(f);
    rep.xi_b2 = sq.xi_b2;
    rep.xi_b2_closed = sq.xi_b2_closed;
    rep.theta_min = sq.theta_min;
  }
  return rep;
}

inline ObservableReport evaluate_point(const ModelParams& model, const BathParams& bath,
                                       const PointOptions& opt = {}) {
  return evaluate_point(solve_point(model, bath, opt.n_levels), bath, model.n_tr, opt.observables);
}

}  // namespace aqrsm
