#pragma once

// Parity-resolved diagonalization, gaps, the analytic ground-state critical
// coupling and a numeric level-crossing scan.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "aqrsm/operators.hpp"
#include "aqrsm/parallel.hpp"

namespace aqrsm {

/// Ascending energies with orthonormal eigenvector columns and their parity.
struct EigenSystem {
  RealVector energies;
  ComplexMatrix states;
  std::vector<int> parities;

  Index size() const { return energies.size(); }
  auto state(Index n) const { return states.col(n); }
};

namespace detail {

// Largest-magnitude component made real positive. Near-ties resolve to the
// lowest index so the choice is reproducible.
inline void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  const double largest = v.cwiseAbs().maxCoeff();
  if (largest == 0.0) return;
  Index pivot = 0;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= largest * (1.0 - 1e-10)) {
      pivot = i;
      break;
    }
  }
  const Complex phase = std::conj(v(pivot)) / std::abs(v(pivot));
  v *= phase;
  v(pivot) = Complex(v(pivot).real(), 0.0);
}

struct SectorSolution {
  RealVector energies;
  ComplexMatrix vectors;
};

inline SectorSolution solve_sector(const ComplexMatrix& block, double scale) {
  SectorSolution out;
  if (block.rows() == 0) return out;
  const double imag = block.imag().cwiseAbs().maxCoeff();
  if (imag <= 1e-15 * scale) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(block.real());
    if (solver.info() != Eigen::Success) throw NumericFailure("real symmetric eigensolver did not converge");
    out.energies = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(block);
    if (solver.info() != Eigen::Success) throw NumericFailure("Hermitian eigensolver did not converge");
    out.energies = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  return out;
}

}  // namespace detail

/// Diagonalizes a Hermitian h commuting with a diagonal parity operator.
///
/// Each parity sector is solved on its own, so every eigenvector is an exact
/// simultaneous eigenvector of the parity operator, including inside
/// degenerate clusters. Sector results are merged in ascending energy; exact
/// ties put the +1 sector first.
inline EigenSystem diagonalize(const OperatorMatrix& h, const OperatorMatrix& parity) {
  const Index n = h.dim();
  if (h.entries.cols() != n || parity.dim() != n || parity.entries.cols() != n || n == 0) {
    throw InvalidInput("diagonalize: Hamiltonian and parity must be square with equal dimensions");
  }
  const double scale = std::max(1.0, max_abs(h.entries));
  if (hermiticity_defect(h) > 1e-12 * scale) throw InvalidInput("diagonalize: Hamiltonian is not Hermitian");

  std::vector<int> label(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const Complex d = parity.entries(i, i);
    if (std::abs(d - 1.0) < 1e-12) label[i] = 1;
    else if (std::abs(d + 1.0) < 1e-12) label[i] = -1;
    else throw InvalidInput("diagonalize: parity diagonal entries must be +1 or -1");
  }
  if (max_abs(parity.entries - ComplexMatrix(parity.entries.diagonal().asDiagonal())) > 0.0) {
    throw InvalidInput("diagonalize: parity operator must be diagonal in the working basis");
  }

  std::vector<Index> sector_index[2];
  for (Index i = 0; i < n; ++i) sector_index[label[i] > 0 ? 0 : 1].push_back(i);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (label[i] != label[j] && std::abs(h.entries(i, j)) > 1e-12 * scale) {
        throw InvalidInput("diagonalize: Hamiltonian does not commute with parity");
      }

  struct Level {
    double energy;
    int parity;
    int sector;
    Index column;
  };
  std::vector<Level> levels;
  levels.reserve(static_cast<std::size_t>(n));
  detail::SectorSolution solutions[2];
  for (int s = 0; s < 2; ++s) {
    const auto& idx = sector_index[s];
    const Index m = static_cast<Index>(idx.size());
    ComplexMatrix block(m, m);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b) block(a, b) = h.entries(idx[a], idx[b]);
    solutions[s] = detail::solve_sector(block, scale);
    for (Index c = 0; c < m; ++c) levels.push_back({solutions[s].energies(c), s == 0 ? 1 : -1, s, c});
  }
  std::stable_sort(levels.begin(), levels.end(), [](const Level& x, const Level& y) {
    if (x.energy != y.energy) return x.energy < y.energy;
    return x.parity > y.parity;
  });

  EigenSystem eig;
  eig.energies.resize(n);
  eig.states = ComplexMatrix::Zero(n, n);
  eig.parities.resize(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const Level& lv = levels[static_cast<std::size_t>(k)];
    eig.energies(k) = lv.energy;
    eig.parities[k] = lv.parity;
    const auto& idx = sector_index[lv.sector];
    for (std::size_t a = 0; a < idx.size(); ++a) eig.states(idx[a], k) = solutions[lv.sector].vectors(a, lv.column);
    detail::fix_phase(eig.states.col(k));
  }
  return eig;
}

inline EigenSystem solve_spectrum(const ModelParams& p) {
  return diagonalize(assemble_hamiltonian(p), parity_operator(p.n_tr));
}

/// gaps(k, j) = E_k - E_j over the lowest `levels` states (all when < 0).
inline RealMatrix gaps(const EigenSystem& eigs, Index levels = -1) {
  const Index n = levels < 0 ? eigs.size() : std::min(levels, eigs.size());
  RealMatrix d(n, n);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j) d(k, j) = eigs.energies(k) - eigs.energies(j);
  return d;
}

/// Ground-state first-order critical coupling
///   g_c = sqrt(delta (1 - u^2) / (u (1 + r^2) + 1 - r^2))
/// (dimensionless form, rescaled by omega0). Empty when the denominator is
/// not positive.
inline std::optional<double> gc_analytic(const ModelParams& p) {
  validate(p);
  const double u = p.u / p.omega0;
  const double d = p.delta / p.omega0;
  const double denom = u * (1.0 + p.r * p.r) + 1.0 - p.r * p.r;
  if (!(denom > 0.0)) return std::nullopt;
  const double radicand = d * (1.0 - u * u) / denom;
  if (!(radicand > 0.0) || !std::isfinite(radicand)) return std::nullopt;
  return p.omega0 * std::sqrt(radicand);
}

struct Crossing {
  int lower = 0;  // level pair (lower, lower + 1)
  double g = 0.0;
  double half_width = 0.0;
};

struct CoordinateEstimate {
  double value = 0.0;
  double half_width = 0.0;
};

struct CriticalPoints {
  std::optional<double> gc_analytic;
  std::optional<CoordinateEstimate> gc_numeric;
  std::vector<Crossing> crossings;  // ascending in (g, lower)
};

struct CrossingOptions {
  double closure = 1e-3;  // gap threshold, units of omega0
  int bisection_depth = 14;
  int workers = 1;
};

/// Parity-swap scan over g for Hamiltonians produced by `build(g)`.
///
/// `steps` is the number of uniform grid intervals. A crossing of pair
/// (n, n+1) is reported when the parity label of level n changes between two
/// grid points, the bracket is bisected on that label down to
/// (g_max - g_min) / 2^depth, the two levels carry opposite parities on both
/// ends of the final bracket and the gap there is below `closure`.
template <class Builder>
std::vector<Crossing> scan_crossings(Builder&& build, const OperatorMatrix& parity, double g_min, double g_max,
                                     int steps, std::vector<int> lower_levels, const CrossingOptions& opt = {}) {
  if (!(g_min < g_max)) throw InvalidParameter("find_crossings: g_min must be < g_max");
  if (steps < 8) throw InvalidParameter("find_crossings: steps must be >= 8");
  std::sort(lower_levels.begin(), lower_levels.end());
  lower_levels.erase(std::unique(lower_levels.begin(), lower_levels.end()), lower_levels.end());
  if (lower_levels.empty()) return {};
  if (lower_levels.front() < 0) throw InvalidParameter("find_crossings: level indices must be >= 0");
  const Index top = lower_levels.back() + 1;

  struct Sample {
    std::vector<int> parity;
    RealVector energy;
  };
  auto sample = [&](double g) {
    const EigenSystem e = diagonalize(build(g), parity);
    if (top >= e.size()) throw InvalidParameter("find_crossings: level index exceeds Hilbert space");
    Sample s;
    s.parity.assign(e.parities.begin(), e.parities.begin() + top + 1);
    s.energy = e.energies.head(top + 1);
    return s;
  };

  const double h = (g_max - g_min) / steps;
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) grid[i] = (i == steps) ? g_max : g_min + h * i;
  std::vector<Sample> samples(grid.size());
  parallel_for(grid.size(), opt.workers, [&](std::size_t i) { samples[i] = sample(grid[i]); });

  const double tol = (g_max - g_min) / std::ldexp(1.0, opt.bisection_depth);
  std::vector<Crossing> found;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    for (int n : lower_levels) {
      if (samples[i].parity[n] == samples[i + 1].parity[n]) continue;
      double lo = grid[i], hi = grid[i + 1];
      Sample s_lo = samples[i], s_hi = samples[i + 1];
      const int left_label = s_lo.parity[n];
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        Sample s_mid = sample(mid);
        if (s_mid.parity[n] == left_label) {
          lo = mid;
          s_lo = std::move(s_mid);
        } else {
          hi = mid;
          s_hi = std::move(s_mid);
        }
      }
      const bool opposite = s_lo.parity[n] != s_lo.parity[n + 1] && s_hi.parity[n] != s_hi.parity[n + 1];
      const double gap = std::min(s_lo.energy(n + 1) - s_lo.energy(n), s_hi.energy(n + 1) - s_hi.energy(n));
      if (opposite && gap < opt.closure) found.push_back({n, 0.5 * (lo + hi), 0.5 * (hi - lo)});
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Crossing& a, const Crossing& b) {
    return a.g != b.g ? a.g < b.g : a.lower < b.lower;
  });
  return found;
}

/// Level crossings of the model Hamiltonian for g in [g_min, g_max]. The
/// ground pair (0, 1) is always tracked; gc_numeric is its first crossing.
inline CriticalPoints find_crossings(const ModelParams& p, double g_min, double g_max, int steps,
                                     std::vector<int> lower_levels, const CrossingOptions& opt = {}) {
  validate(p);
  if (!(g_min >= 0.0)) throw InvalidParameter("find_crossings: g_min must be >= 0");
  lower_levels.push_back(0);
  const OperatorMatrix parity = parity_operator(p.n_tr);
  auto build = [&](double g) {
    ModelParams q = p;
    q.g = g;
    return assemble_hamiltonian(q);
  };
  CriticalPoints cp;
  cp.gc_analytic = gc_analytic(p);
  cp.crossings = scan_crossings(build, parity, g_min, g_max, steps, std::move(lower_levels), opt);
  for (const Crossing& c : cp.crossings) {
    if (c.lower == 0) {
      cp.gc_numeric = CoordinateEstimate{c.g, c.half_width};
      break;
    }
  }
  return cp;
}

struct ConvergenceReport {
  double value = 0.0;
  double reference = 0.0;  // value at n_tr + delta_ntr
  bool converged = false;
};

/// Evaluates observable(params) at p.n_tr and p.n_tr + delta_ntr.
template <class Observable>
ConvergenceReport truncation_report(const ModelParams& p, Observable&& observable, int delta_ntr, double tol) {
  if (delta_ntr < 10) throw InvalidParameter("truncation_report: delta_ntr must be >= 10");
  if (!(tol > 0.0)) throw InvalidParameter("truncation_report: tol must be > 0");
  ModelParams larger = p;
  larger.n_tr = p.n_tr + delta_ntr;
  ConvergenceReport rep;
  rep.value = observable(p);
  rep.reference = observable(larger);
  const double diff = std::abs(rep.reference - rep.value);
  rep.converged = std::abs(rep.value) < 1e-6 ? diff < tol : diff < tol * std::abs(rep.value);
  return rep;
}

}  // namespace aqrsm
