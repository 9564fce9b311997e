#pragma once

// Truncated qubit-cavity Hilbert space and the anisotropic Rabi-Stark
// Hamiltonian
//
//   H = (delta/2 + u a^dag a) sigma_z + omega0 a^dag a
//       + g [ (a sigma_+ + a^dag sigma_-) + r (a sigma_- + a^dag sigma_+) ].
//
// Basis ordering is qubit-major: index = qubit * (n_tr + 1) + photon, with
// qubit 0 the ground state (sigma_z = -1) and qubit 1 the excited state
// (sigma_z = +1). sigma_+ = |1><0|.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <tuple>

#include "aqrsm/errors.hpp"

namespace aqrsm {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using SparseOperator = Eigen::SparseMatrix<Complex>;

/// Physical parameters in units of omega0 (hbar = k_B = 1).
struct ModelParams {
  double delta = 1.0;   // qubit splitting
  double omega0 = 1.0;  // cavity frequency
  double g = 0.0;       // qubit-cavity coupling
  double r = 1.0;       // anisotropy (weight of counter-rotating terms)
  double u = 0.0;       // Stark coupling
  int n_tr = 200;       // highest retained photon number

  Index field_dim() const { return static_cast<Index>(n_tr) + 1; }
  Index dim() const { return 2 * field_dim(); }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

inline void validate_truncation(int n_tr) {
  if (n_tr < 2) {
    throw InvalidParameter("n_tr must be >= 2 (got " + std::to_string(n_tr) + ")");
  }
}

/// Throws InvalidParameter naming every offending field.
inline void validate(const ModelParams& p) {
  std::ostringstream bad;
  auto check = [&](bool ok, const char* msg) {
    if (!ok) bad << (bad.tellp() > 0 ? "; " : "") << msg;
  };
  check(std::isfinite(p.omega0) && p.omega0 > 0.0, "omega0 must be > 0");
  check(std::isfinite(p.delta) && p.delta > 0.0, "delta must be > 0");
  check(std::isfinite(p.g) && p.g >= 0.0, "g must be >= 0");
  check(std::isfinite(p.r) && p.r >= 0.0, "r must be >= 0");
  check(std::isfinite(p.u) && std::abs(p.u) < p.omega0, "|u| must be < omega0");
  check(p.n_tr >= 2, "n_tr must be >= 2");
  if (bad.tellp() > 0) throw InvalidParameter("invalid model parameters: " + bad.str());
}

/// Dense complex square matrix. Hamiltonian-tagged instances are Hermitian.
struct OperatorMatrix {
  ComplexMatrix entries;

  OperatorMatrix() = default;
  explicit OperatorMatrix(ComplexMatrix m) : entries(std::move(m)) {}

  Index dim() const { return entries.rows(); }
  SparseOperator sparse() const { return entries.sparseView(); }

  OperatorMatrix adjoint() const { return OperatorMatrix(entries.adjoint()); }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    return OperatorMatrix(a.entries * b.entries);
  }
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    return OperatorMatrix(a.entries + b.entries);
  }
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    return OperatorMatrix(a.entries - b.entries);
  }
};

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const OperatorMatrix& m) {
  return max_abs(m.entries - m.entries.adjoint());
}

inline OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  const Index na = a.dim(), nb = b.dim();
  ComplexMatrix out = ComplexMatrix::Zero(na * nb, na * nb);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < na; ++j)
      if (a.entries(i, j) != Complex(0.0)) out.block(i * nb, j * nb, nb, nb) = a.entries(i, j) * b.entries;
  return OperatorMatrix(std::move(out));
}

inline OperatorMatrix identity(Index n) { return OperatorMatrix(ComplexMatrix::Identity(n, n)); }

struct FieldOps {
  OperatorMatrix annihilation;
  OperatorMatrix creation;
  OperatorMatrix number;
};

inline FieldOps build_field_ops(int n_tr) {
  validate_truncation(n_tr);
  const Index n = static_cast<Index>(n_tr) + 1;
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  FieldOps ops;
  ops.annihilation = OperatorMatrix(a);
  ops.creation = OperatorMatrix(a.adjoint());
  ops.number = ops.creation * ops.annihilation;
  return ops;
}

/// Two-level operators on the qubit factor alone (index 0 = ground).
namespace qubit {

inline OperatorMatrix sigma_z() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return OperatorMatrix(m);
}

inline OperatorMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return OperatorMatrix(m);
}

inline OperatorMatrix sigma_minus() { return sigma_plus().adjoint(); }

inline OperatorMatrix sigma_x() { return sigma_plus() + sigma_minus(); }

}  // namespace qubit

/// Operators lifted to the composite space (qubit factor first).
struct CompositeOps {
  OperatorMatrix a;
  OperatorMatrix a_dag;
  OperatorMatrix number;
  OperatorMatrix quadrature;  // a + a^dag
  OperatorMatrix sigma_x;
  OperatorMatrix sigma_z;
  OperatorMatrix sigma_plus;
  OperatorMatrix sigma_minus;
};

inline CompositeOps composite_ops(int n_tr) {
  const FieldOps field = build_field_ops(n_tr);
  const OperatorMatrix id_q = identity(2);
  const OperatorMatrix id_f = identity(field.number.dim());
  CompositeOps ops;
  ops.a = kron(id_q, field.annihilation);
  ops.a_dag = kron(id_q, field.creation);
  ops.number = kron(id_q, field.number);
  ops.quadrature = ops.a + ops.a_dag;
  ops.sigma_x = kron(qubit::sigma_x(), id_f);
  ops.sigma_z = kron(qubit::sigma_z(), id_f);
  ops.sigma_plus = kron(qubit::sigma_plus(), id_f);
  ops.sigma_minus = kron(qubit::sigma_minus(), id_f);
  return ops;
}

/// Sparse (a + a^dag) on the composite space; used for the eigenbasis
/// projections where the dense product would dominate the cost.
inline SparseOperator quadrature_sparse(int n_tr) {
  validate_truncation(n_tr);
  const Index nf = static_cast<Index>(n_tr) + 1;
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<std::size_t>(4 * nf));
  for (Index q = 0; q < 2; ++q)
    for (Index k = 1; k < nf; ++k) {
      const double s = std::sqrt(static_cast<double>(k));
      t.emplace_back(q * nf + k - 1, q * nf + k, s);
      t.emplace_back(q * nf + k, q * nf + k - 1, s);
    }
  SparseOperator m(2 * nf, 2 * nf);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline SparseOperator annihilation_sparse(int n_tr) {
  validate_truncation(n_tr);
  const Index nf = static_cast<Index>(n_tr) + 1;
  std::vector<Eigen::Triplet<Complex>> t;
  for (Index q = 0; q < 2; ++q)
    for (Index k = 1; k < nf; ++k) t.emplace_back(q * nf + k - 1, q * nf + k, std::sqrt(static_cast<double>(k)));
  SparseOperator m(2 * nf, 2 * nf);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline SparseOperator sigma_x_sparse(int n_tr) {
  validate_truncation(n_tr);
  const Index nf = static_cast<Index>(n_tr) + 1;
  std::vector<Eigen::Triplet<Complex>> t;
  for (Index k = 0; k < nf; ++k) {
    t.emplace_back(k, nf + k, 1.0);
    t.emplace_back(nf + k, k, 1.0);
  }
  SparseOperator m(2 * nf, 2 * nf);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

/// Entry-wise assembly; tests compare it with the Kronecker-product form.
inline OperatorMatrix assemble_hamiltonian(const ModelParams& p) {
  validate(p);
  const Index nf = p.field_dim();
  const Index ground = 0, excited = nf;
  ComplexMatrix h = ComplexMatrix::Zero(p.dim(), p.dim());

  for (Index n = 0; n < nf; ++n) {
    const double dn = static_cast<double>(n);
    h(ground + n, ground + n) = -(0.5 * p.delta + p.u * dn) + p.omega0 * dn;
    h(excited + n, excited + n) = (0.5 * p.delta + p.u * dn) + p.omega0 * dn;
  }
  for (Index n = 1; n < nf; ++n) {
    const double s = std::sqrt(static_cast<double>(n));
    // a sigma_+ : |e, n-1><g, n|   (rotating)
    h(excited + n - 1, ground + n) += p.g * s;
    h(ground + n, excited + n - 1) += p.g * s;
    // a sigma_- : |g, n-1><e, n|   (counter-rotating)
    h(ground + n - 1, excited + n) += p.g * p.r * s;
    h(excited + n, ground + n - 1) += p.g * p.r * s;
  }
  return OperatorMatrix(std::move(h));
}

/// Pi = exp(i pi N), N = a^dag a + (sigma_z + 1)/2; diagonal with entries
/// (-1)^(photon + qubit excitation).
inline OperatorMatrix parity_operator(int n_tr) {
  validate_truncation(n_tr);
  const Index nf = static_cast<Index>(n_tr) + 1;
  ComplexMatrix m = ComplexMatrix::Zero(2 * nf, 2 * nf);
  for (Index q = 0; q < 2; ++q)
    for (Index n = 0; n < nf; ++n) m(q * nf + n, q * nf + n) = ((q + n) % 2 == 0) ? 1.0 : -1.0;
  return OperatorMatrix(std::move(m));
}

}  // namespace aqrsm
