#pragma once

// Emission observables built on the dressed detection operator
//   X+ = -i sum_{j, k > j} (E_k - E_j) <phi_j|(a + a^dag)|phi_k> |phi_j><phi_k|,
// zero-delay correlations Gn(0), their few-level approximants, field moments
// and principal quadrature squeezing.

#include <cmath>
#include <limits>
#include <numbers>

#include "aqrsm/dissipation.hpp"

namespace aqrsm {

struct DetectionOperator {
  ComplexMatrix xplus;  // strictly upper triangular in the sorted eigenbasis
  ComplexMatrix x;      // X_{j,k} = <phi_j|(a + a^dag)|phi_k>
  RealVector energies;

  Index levels() const { return xplus.rows(); }
  ComplexMatrix xminus() const { return xplus.adjoint(); }
};

/// From the projected quadrature X_{j,k} and the matching energies.
inline DetectionOperator detection_operator(const ComplexMatrix& x, const RealVector& energies) {
  if (x.rows() != x.cols() || x.rows() != energies.size()) {
    throw InvalidInput("detection_operator: X and energies must share the level count");
  }
  DetectionOperator d;
  d.x = x;
  d.energies = energies;
  const Index n = x.rows();
  d.xplus = ComplexMatrix::Zero(n, n);
  const Complex minus_i(0.0, -1.0);
  for (Index j = 0; j < n; ++j)
    for (Index k = j + 1; k < n; ++k) d.xplus(j, k) = minus_i * (energies(k) - energies(j)) * x(j, k);
  return d;
}

inline DetectionOperator detection_operator(const EigenSystem& eigs, const OperatorMatrix& field_x,
                                            int n_levels = 40) {
  if (field_x.dim() != eigs.size()) throw InvalidInput("detection_operator: operator dimension mismatch");
  const Index n = level_count(eigs, n_levels);
  return detection_operator(project(eigs, field_x, n), eigs.energies.head(n));
}

inline DetectionOperator detection_operator(const TransitionTable& table) {
  return detection_operator(table.m_c, table.energies);
}

namespace detail {

// sum_m P_m ||M e_m||^2 = sum_m P_m (M^dag M)_{mm}
inline double diagonal_expectation_of_square(const ComplexMatrix& m, const RealVector& p) {
  double acc = 0.0;
  for (Index c = 0; c < m.cols(); ++c) acc += p(c) * m.col(c).squaredNorm();
  return acc;
}

inline void require_levels(const ComplexMatrix& xplus, const RealVector& p) {
  if (xplus.rows() != p.size()) throw InvalidInput("steady state and detection operator level counts differ");
}

inline constexpr double kZeroFlux = 1e-30;

}  // namespace detail

/// <X- X+> in the diagonal ensemble.
inline double flux_proxy(const ComplexMatrix& xplus, const RealVector& p) {
  detail::require_levels(xplus, p);
  return detail::diagonal_expectation_of_square(xplus, p);
}

inline double flux_proxy(const DetectionOperator& x, const SteadyState& ss) {
  return flux_proxy(x.xplus, ss.populations);
}

/// Gn(0) = <X-^n X+^n> / <X- X+>^n for n in {2, 3, 4}.
inline double correlation_g_n(const ComplexMatrix& xplus, const RealVector& p, int n) {
  if (n < 2 || n > 4) throw InvalidInput("correlation_g_n: order must be 2, 3 or 4");
  detail::require_levels(xplus, p);
  const double flux = detail::diagonal_expectation_of_square(xplus, p);
  if (!(flux >= detail::kZeroFlux)) {
    throw ZeroFlux("correlation_g_n: <X-X+> = " + std::to_string(flux) + " below 1e-30");
  }
  ComplexMatrix power = xplus;
  for (int i = 1; i < n; ++i) power = xplus * power;
  return detail::diagonal_expectation_of_square(power, p) / std::pow(flux, n);
}

inline double correlation_g_n(const DetectionOperator& x, const SteadyState& ss, const EigenSystem& eigs, int n) {
  if (eigs.size() < x.levels()) throw InvalidInput("correlation_g_n: eigensystem smaller than detection operator");
  return correlation_g_n(x.xplus, ss.populations, n);
}

struct ApproxG2 {
  double value = std::numeric_limits<double>::quiet_NaN();
  double eta1 = 0.0;  // Delta10 - Delta21
  double eta2 = 0.0;  // Delta10 - Delta31
  bool applicable = false;
};

/// Four-level approximant of G2(0):
///   { (|X+_02|^2 + |X+_12|^2) |X+_23|^2 P3 + |X+_01|^2 |X+_13|^2 P3
///     + |X+_01|^2 |X+_12|^2 P2 } / (|X+_01|^4 P1^2),
/// where |X+_jk|^2 = Delta_kj^2 |X_jk|^2.
inline ApproxG2 approx_g2(const EigenSystem& eigs, const DetectionOperator& x, const SteadyState& ss) {
  if (x.levels() < 4 || ss.size() < 4 || eigs.size() < 4) throw InvalidInput("approx_g2: needs at least 4 levels");
  const RealVector& e = eigs.energies;
  ApproxG2 out;
  out.eta1 = (e(1) - e(0)) - (e(2) - e(1));
  out.eta2 = (e(1) - e(0)) - (e(3) - e(1));
  const auto w = [&](Index j, Index k) { return std::norm(x.xplus(j, k)); };
  const RealVector& p = ss.populations;
  const double denom = w(0, 1) * w(0, 1) * p(1) * p(1);
  if (!(p(1) > 1e-300) || !(denom > 0.0)) return out;
  const double num = (w(0, 2) + w(1, 2)) * w(2, 3) * p(3) + w(0, 1) * w(1, 3) * p(3) + w(0, 1) * w(1, 2) * p(2);
  out.value = num / denom;
  out.applicable = std::isfinite(out.value);
  return out;
}

struct ApproxG3 {
  double value = std::numeric_limits<double>::quiet_NaN();
  double eta3 = 0.0;  // 2 Delta10 - Delta21 - Delta32
  bool applicable = false;
};

/// Single-path approximant of G3(0) along phi_3 -> phi_2 -> phi_1 -> phi_0:
///   |X+_12|^2 |X+_23|^2 / |X+_01|^4 * exp(eta3 / kt).
inline ApproxG3 approx_g3(const EigenSystem& eigs, const DetectionOperator& x, double kt) {
  if (x.levels() < 4 || eigs.size() < 4) throw InvalidInput("approx_g3: needs at least 4 levels");
  const RealVector& e = eigs.energies;
  ApproxG3 out;
  out.eta3 = 2.0 * (e(1) - e(0)) - (e(2) - e(1)) - (e(3) - e(2));
  if (!(kt > 0.0)) return out;
  const auto w = [&](Index j, Index k) { return std::norm(x.xplus(j, k)); };
  const double denom = w(0, 1) * w(0, 1);
  if (!(denom > 0.0)) return out;
  const double path = w(1, 2) * w(2, 3);
  out.value = path == 0.0 ? 0.0 : path / denom * std::exp(out.eta3 / kt);
  out.applicable = std::isfinite(out.value);
  return out;
}

struct FieldMoments {
  Complex a_mean;
  double n_photon = 0.0;  // <a^dag a>
  Complex a_sq;           // <a^2>
  double a_a_dag = 0.0;   // <a a^dag>, kept separate from the commutator identity
};

/// Caches the per-level expectations so several moment queries share one pass
/// over the eigenvectors.
struct LevelMoments {
  Eigen::VectorXcd a;
  RealVector n_photon;
  Eigen::VectorXcd a_sq;
  RealVector a_a_dag;

  static LevelMoments compute(const EigenSystem& eigs, const SparseOperator& a, Index levels) {
    const Index n = std::min(levels, eigs.size());
    LevelMoments m;
    m.a.resize(n);
    m.n_photon.resize(n);
    m.a_sq.resize(n);
    m.a_a_dag.resize(n);
    const SparseOperator a_dag = a.adjoint();
    for (Index k = 0; k < n; ++k) {
      const Eigen::VectorXcd v = eigs.states.col(k);
      const Eigen::VectorXcd av = a * v;
      const Eigen::VectorXcd adv = a_dag * v;
      m.a(k) = v.dot(av);
      m.n_photon(k) = av.squaredNorm();
      m.a_sq(k) = adv.dot(av);  // <v| a a |v> = (a^dag v)^dag (a v)
      m.a_a_dag(k) = adv.squaredNorm();
    }
    return m;
  }

  FieldMoments average(const RealVector& p) const {
    if (p.size() > a.size()) throw InvalidInput("field_moments: steady state has more levels than cached moments");
    FieldMoments f{};
    for (Index k = 0; k < p.size(); ++k) {
      f.a_mean += p(k) * a(k);
      f.n_photon += p(k) * n_photon(k);
      f.a_sq += p(k) * a_sq(k);
      f.a_a_dag += p(k) * a_a_dag(k);
    }
    return f;
  }
};

inline FieldMoments field_moments(const SteadyState& ss, const EigenSystem& eigs, const OperatorMatrix& a) {
  if (a.dim() != eigs.size()) throw InvalidInput("field_moments: operator dimension mismatch");
  return LevelMoments::compute(eigs, a.sparse(), ss.size()).average(ss.populations);
}

struct Squeezing {
  double xi_b2 = 1.0;         // analytic min over theta of Var(X_theta)
  double xi_b2_closed = 1.0;  // 2 (<a^dag a> - Re<a^2>) + 1
  double theta_min = 0.0;     // in [0, pi)
  double grid_min = 1.0;      // refined theta-grid minimum from the raw moments
};

/// Var(X_theta) with X_theta = a e^{-i theta} + a^dag e^{i theta}, evaluated
/// from raw moments (no commutator identity applied).
inline double quadrature_variance(const FieldMoments& f, double theta) {
  const Complex phase = std::polar(1.0, -2.0 * theta);
  const double second = 2.0 * (f.a_sq * phase).real() + f.a_a_dag + f.n_photon;
  const double first = 2.0 * (f.a_mean * std::polar(1.0, -theta)).real();
  return second - first * first;
}

namespace detail {

inline double refined_grid_minimum(const FieldMoments& f, int points = 720) {
  const double step = 2.0 * std::numbers::pi / points;
  int best = 0;
  double best_value = quadrature_variance(f, 0.0);
  for (int i = 1; i < points; ++i) {
    const double v = quadrature_variance(f, step * i);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  // Golden-section refinement inside the neighbouring grid cells.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = step * (best - 1), hi = step * (best + 1);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = quadrature_variance(f, x1), f2 = quadrature_variance(f, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = quadrature_variance(f, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = quadrature_variance(f, x2);
    }
  }
  return std::min({best_value, f1, f2});
}

}  // namespace detail

/// Principal quadrature squeezing min_theta Var(X_theta)
///   = 1 + 2 (<a^dag a> - |<a>|^2) - 2 |<a^2> - <a>^2|.
inline Squeezing squeezing_factor(const FieldMoments& f) {
  Squeezing s;
  const Complex var_a = f.a_sq - f.a_mean * f.a_mean;
  s.xi_b2 = 1.0 + 2.0 * (f.n_photon - std::norm(f.a_mean)) - 2.0 * std::abs(var_a);
  s.xi_b2_closed = 2.0 * (f.n_photon - f.a_sq.real()) + 1.0;
  double theta = 0.5 * std::arg(var_a) + 0.5 * std::numbers::pi;
  theta = std::fmod(theta, std::numbers::pi);
  if (theta < 0.0) theta += std::numbers::pi;
  s.theta_min = theta;
  s.grid_min = detail::refined_grid_minimum(f);
  return s;
}

inline Squeezing squeezing_factor(const SteadyState& ss, const EigenSystem& eigs, const OperatorMatrix& a) {
  return squeezing_factor(field_moments(ss, eigs, a));
}

}  // namespace aqrsm
