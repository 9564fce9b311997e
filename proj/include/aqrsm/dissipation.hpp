#pragma once

// Dressed-basis dissipation: Ohmic transition rates for the qubit and cavity
// baths, the population balance steady state and element-wise density-matrix
// dynamics in the eigenbasis.

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "aqrsm/eigenbasis.hpp"

namespace aqrsm {

struct BathParams {
  double alpha_q = 1e-3;
  double alpha_c = 1e-3;
  double omega_cutoff = 10.0;
  double kt_q = 0.07;
  double kt_c = 0.07;

  friend bool operator==(const BathParams&, const BathParams&) = default;
};

inline void validate(const BathParams& b) {
  std::ostringstream bad;
  auto check = [&](bool ok, const char* msg) {
    if (!ok) bad << (bad.tellp() > 0 ? "; " : "") << msg;
  };
  check(std::isfinite(b.alpha_q) && b.alpha_q > 0.0, "alpha_q must be > 0");
  check(std::isfinite(b.alpha_c) && b.alpha_c > 0.0, "alpha_c must be > 0");
  check(std::isfinite(b.omega_cutoff) && b.omega_cutoff > 0.0, "omega_cutoff must be > 0");
  check(std::isfinite(b.kt_q) && b.kt_q >= 0.0, "kt_q must be >= 0");
  check(std::isfinite(b.kt_c) && b.kt_c >= 0.0, "kt_c must be >= 0");
  if (bad.tellp() > 0) throw InvalidParameter("invalid bath parameters: " + bad.str());
}

/// 1 / (exp(gap / kt) - 1); zero at kt = 0.
inline double bose_occupation(double gap, double kt) {
  if (!(gap > 0.0)) throw InvalidInput("bose_occupation: gap must be > 0");
  if (kt < 0.0) throw InvalidInput("bose_occupation: kt must be >= 0");
  if (kt == 0.0) return 0.0;
  const double x = gap / kt;
  if (x > 30.0) return std::exp(-x) / -std::expm1(-x);
  return 1.0 / std::expm1(x);
}

inline constexpr double kDegenerateGap = 1e-9;  // units of omega0

struct RateWeights {
  double down = 0.0;  // Gamma (1 + n)
  double up = 0.0;    // Gamma n
  bool frozen = false;
};

/// Ohmic rate weights for one bath and one pair. Below the degeneracy
/// threshold the finite Delta -> 0 limits of Gamma n and Gamma (1 + n) are used.
inline RateWeights ohmic_weights(double gap, double matrix_element_sq, double alpha, double omega_ref,
                                 double omega_cutoff, double kt, double eps_gap) {
  RateWeights w;
  if (matrix_element_sq == 0.0) return w;
  const double cutoff = std::exp(-std::abs(gap) / omega_cutoff);
  if (gap < eps_gap) {
    if (kt == 0.0) {
      w.frozen = true;
      return w;
    }
    w.down = w.up = alpha * (kt / omega_ref) * matrix_element_sq * cutoff;
    return w;
  }
  const double gamma = alpha * (gap / omega_ref) * cutoff * matrix_element_sq;
  const double n = bose_occupation(gap, kt);
  w.down = gamma * (1.0 + n);
  w.up = gamma * n;
  return w;
}

/// Pairwise rates among the lowest `levels` eigenstates. Weight matrices are
/// indexed (k, j) with k > j: down(k, j) drives k -> j and up(k, j) drives
/// j -> k.
struct TransitionTable {
  Index levels = 0;
  RealVector energies;
  std::vector<int> parities;
  RealMatrix gap;       // gap(k, j) = E_k - E_j
  ComplexMatrix m_q;    // <phi_j| sigma_x |phi_k>
  ComplexMatrix m_c;    // <phi_j| (a + a^dag) |phi_k>
  RealMatrix down_q, up_q, down_c, up_c;
  std::vector<std::pair<int, int>> frozen_pairs;  // (k, j) degenerate pairs at kt = 0
  double kt_q = 0.0;
  double kt_c = 0.0;

  RealMatrix down() const { return down_q + down_c; }
  RealMatrix up() const { return up_q + up_c; }

  /// rate(i, j): total transition rate from level i to level j (i != j).
  RealMatrix rate_matrix() const {
    RealMatrix r = RealMatrix::Zero(levels, levels);
    for (Index k = 0; k < levels; ++k)
      for (Index j = 0; j < k; ++j) {
        r(k, j) = down_q(k, j) + down_c(k, j);
        r(j, k) = up_q(k, j) + up_c(k, j);
      }
    return r;
  }

  bool zero_temperature() const { return kt_q == 0.0 && kt_c == 0.0; }
};

inline TransitionTable transition_rates(const EigenSystem& eigs, const ModelParams& model, const BathParams& bath,
                                        int n_levels = 40) {
  validate(model);
  validate(bath);
  if (eigs.size() != model.dim()) throw InvalidInput("transition_rates: eigensystem does not match model dimension");
  TransitionTable t;
  t.levels = level_count(eigs, n_levels);
  const Index n = t.levels;
  t.energies = eigs.energies.head(n);
  t.parities.assign(eigs.parities.begin(), eigs.parities.begin() + n);
  t.gap = gaps(eigs, n);
  t.m_q = project(eigs, sigma_x_sparse(model.n_tr), n);
  t.m_c = project(eigs, quadrature_sparse(model.n_tr), n);
  t.kt_q = bath.kt_q;
  t.kt_c = bath.kt_c;
  t.down_q = t.up_q = t.down_c = t.up_c = RealMatrix::Zero(n, n);
  const double eps = kDegenerateGap * model.omega0;
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < k; ++j) {
      const double d = t.gap(k, j);
      const RateWeights q =
          ohmic_weights(d, std::norm(t.m_q(j, k)), bath.alpha_q, model.delta, bath.omega_cutoff, bath.kt_q, eps);
      const RateWeights c =
          ohmic_weights(d, std::norm(t.m_c(j, k)), bath.alpha_c, model.omega0, bath.omega_cutoff, bath.kt_c, eps);
      t.down_q(k, j) = q.down;
      t.up_q(k, j) = q.up;
      t.down_c(k, j) = c.down;
      t.up_c(k, j) = c.up;
      if (q.frozen || c.frozen) t.frozen_pairs.emplace_back(static_cast<int>(k), static_cast<int>(j));
    }
  return t;
}

/// Diagonal populations over the levels of a TransitionTable.
struct SteadyState {
  RealVector populations;

  Index size() const { return populations.size(); }
};

namespace detail {

inline std::vector<std::vector<int>> connected_components(const RealMatrix& rate) {
  const Index n = rate.rows();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < i; ++j)
      if (rate(i, j) > 0.0 || rate(j, i) > 0.0) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
  std::map<int, std::vector<int>> groups;
  for (Index i = 0; i < n; ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string describe_components(const std::vector<std::vector<int>>& comps) {
  std::ostringstream os;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    os << (c ? " " : "") << "{";
    for (std::size_t i = 0; i < comps[c].size(); ++i) os << (i ? "," : "") << comps[c][i];
    os << "}";
  }
  return os.str();
}

inline SteadyState clamp_and_normalize(RealVector p) {
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) < 0.0) p(i) = 0.0;
  const double total = p.sum();
  if (!(total > 0.0) || !std::isfinite(total)) throw NumericFailure("steady state normalization failed");
  return SteadyState{p / total};
}

}  // namespace detail

/// Stationary populations of the balance equations
///   sum_k rate(k, m) P_k - sum_k rate(m, k) P_m = 0,  sum_m P_m = 1.
///
/// Solved by Grassmann-Taksar-Heyman state reduction. The reduction is
/// subtraction-free, so tiny thermal populations (which Gn(0) ratios depend
/// on) keep full relative precision. Both baths at zero temperature give the
/// ground-state point mass.
inline SteadyState steady_populations(const TransitionTable& table) {
  const Index n = table.levels;
  if (n < 1) throw InvalidInput("steady_populations: empty transition table");
  if (table.zero_temperature()) {
    RealVector p = RealVector::Zero(n);
    p(0) = 1.0;
    return SteadyState{p};
  }
  RealMatrix q = table.rate_matrix();
  const auto comps = detail::connected_components(q);
  if (comps.size() > 1) {
    throw MultipleSteadyStates("rate graph is disconnected; components " + detail::describe_components(comps));
  }
  for (Index k = n - 1; k >= 1; --k) {
    double s = 0.0;
    for (Index j = 0; j < k; ++j) s += q(k, j);
    if (!(s > 0.0)) {
      throw MultipleSteadyStates("level " + std::to_string(k) + " has no outgoing path to lower levels");
    }
    for (Index i = 0; i < k; ++i) q(i, k) /= s;
    for (Index i = 0; i < k; ++i) {
      const double qik = q(i, k);
      if (qik == 0.0) continue;
      for (Index j = 0; j < k; ++j)
        if (j != i) q(i, j) += qik * q(k, j);
    }
  }
  RealVector p = RealVector::Zero(n);
  p(0) = 1.0;
  for (Index k = 1; k < n; ++k) {
    double acc = 0.0;
    for (Index i = 0; i < k; ++i) acc += p(i) * q(i, k);
    p(k) = acc;
  }
  return detail::clamp_and_normalize(std::move(p));
}

/// Least-squares solve of the balance system augmented with the
/// normalization row. Kept as an independent cross-check of the reduction.
inline SteadyState steady_populations_least_squares(const TransitionTable& table) {
  const Index n = table.levels;
  const RealMatrix rate = table.rate_matrix();
  const double scale = std::max(rate.cwiseAbs().maxCoeff(), 1e-300);
  RealMatrix a = RealMatrix::Zero(n + 1, n);
  for (Index m = 0; m < n; ++m) {
    for (Index k = 0; k < n; ++k) {
      if (k == m) continue;
      a(m, k) += rate(k, m);
      a(m, m) -= rate(m, k);
    }
  }
  a.row(n).setConstant(scale);
  RealVector b = RealVector::Zero(n + 1);
  b(n) = scale;
  RealVector p = a.completeOrthogonalDecomposition().solve(b);
  return detail::clamp_and_normalize(std::move(p));
}

/// max_m |sum_k rate(k, m) P_k - sum_k rate(m, k) P_m|.
inline double balance_residual(const TransitionTable& table, const RealVector& p) {
  const RealMatrix rate = table.rate_matrix();
  double worst = 0.0;
  for (Index m = 0; m < table.levels; ++m) {
    double flow = 0.0;
    for (Index k = 0; k < table.levels; ++k) {
      if (k == m) continue;
      flow += rate(k, m) * p(k) - rate(m, k) * p(m);
    }
    worst = std::max(worst, std::abs(flow));
  }
  return worst;
}

/// Canonical populations exp(-E_n / kt) / Z, shifted by the ground energy.
inline SteadyState gibbs_state(const EigenSystem& eigs, double kt, Index levels = -1) {
  if (kt < 0.0) throw InvalidInput("gibbs_state: kt must be >= 0");
  const Index n = levels < 0 ? eigs.size() : std::min(levels, eigs.size());
  RealVector p = RealVector::Zero(n);
  if (kt == 0.0) {
    p(0) = 1.0;
    return SteadyState{p};
  }
  const double e0 = eigs.energies(0);
  for (Index i = 0; i < n; ++i) p(i) = std::exp(-(eigs.energies(i) - e0) / kt);
  return SteadyState{p / p.sum()};
}

/// Element-wise dynamics in the eigenbasis, integrated with fixed-step RK4.
///
///   d rho_mm / dt = sum_k rate(k, m) rho_kk - out_m rho_mm
///   d rho_mn / dt = (-i (E_m - E_n) - (out_m + out_n) / 2) rho_mn
///
/// with out_m = sum_k rate(m, k). Returns rho0 followed by every `stride`-th
/// state (the final state is always included).
inline std::vector<ComplexMatrix> evolve_density(const ComplexMatrix& rho0, const EigenSystem& eigs,
                                                 const TransitionTable& table, double dt, int steps,
                                                 int stride = 1) {
  const Index n = table.levels;
  if (rho0.rows() != n || rho0.cols() != n) throw InvalidInput("evolve_density: rho0 must match the table levels");
  if (eigs.size() < n) throw InvalidInput("evolve_density: eigensystem smaller than table");
  if (!(dt > 0.0) || steps < 0 || stride < 1) throw InvalidInput("evolve_density: need dt > 0, steps >= 0, stride >= 1");
  if (max_abs(rho0 - rho0.adjoint()) > 1e-10) throw InvalidInput("evolve_density: rho0 is not Hermitian");
  if (std::abs(rho0.trace() - Complex(1.0)) > 1e-10) throw InvalidInput("evolve_density: rho0 trace must be 1");
  {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho0, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) throw InvalidInput("evolve_density: rho0 is not positive semidefinite");
  }

  const RealMatrix rate = table.rate_matrix();
  const RealVector out = rate.rowwise().sum();
  const double max_rate = out.size() ? out.maxCoeff() : 0.0;
  if (dt * max_rate > 0.1) {
    throw StepSizeError("evolve_density: dt * max total rate = " + std::to_string(dt * max_rate) + " exceeds 0.1");
  }
  ComplexMatrix generator(n, n);
  double max_phase = 0.0;
  for (Index m = 0; m < n; ++m)
    for (Index k = 0; k < n; ++k) {
      const double omega = m == k ? 0.0 : eigs.energies(m) - eigs.energies(k);
      generator(m, k) = Complex(-0.5 * (out(m) + out(k)), -omega);
      if (m != k && rho0(m, k) != Complex(0.0)) max_phase = std::max(max_phase, std::abs(omega));
    }
  // Coherences evolve independently; RK4 on their phase needs dt * |gap| small.
  if (dt * max_phase > 1.0) {
    throw StepSizeError("evolve_density: dt * coherence frequency = " + std::to_string(dt * max_phase) +
                        " exceeds 1");
  }
  const ComplexMatrix gain = rate.transpose().cast<Complex>();  // gain(m, k) = rate(k, m)

  auto derivative = [&](const ComplexMatrix& rho) {
    ComplexMatrix d = generator.cwiseProduct(rho);
    const Eigen::VectorXcd pops = rho.diagonal();
    d.diagonal() += gain * pops;
    return d;
  };

  std::vector<ComplexMatrix> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps / stride) + 2);
  trajectory.push_back(rho0);
  ComplexMatrix rho = rho0;
  for (int s = 1; s <= steps; ++s) {
    const ComplexMatrix k1 = derivative(rho);
    const ComplexMatrix k2 = derivative(rho + 0.5 * dt * k1);
    const ComplexMatrix k3 = derivative(rho + 0.5 * dt * k2);
    const ComplexMatrix k4 = derivative(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (s % stride == 0 || s == steps) trajectory.push_back(rho);
  }
  return trajectory;
}

/// rho in the eigenbasis from diagonal populations.
inline ComplexMatrix density_from_populations(const RealVector& p) {
  return ComplexMatrix(p.cast<Complex>().asDiagonal());
}

}  // namespace aqrsm
