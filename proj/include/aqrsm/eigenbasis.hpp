#pragma once

#include "aqrsm/spectrum.hpp"

namespace aqrsm {

/// <phi_j| op |phi_k> for j, k below `levels`.
inline ComplexMatrix project(const EigenSystem& eigs, const SparseOperator& op, Index levels) {
  const Index n = std::min(levels, eigs.size());
  const auto v = eigs.states.leftCols(n);
  const ComplexMatrix applied = op * v;
  return v.adjoint() * applied;
}

inline ComplexMatrix project(const EigenSystem& eigs, const OperatorMatrix& op, Index levels) {
  return project(eigs, op.sparse(), levels);
}

inline Index level_count(const EigenSystem& eigs, int requested) {
  if (requested < 2) throw InvalidParameter("level cap must be >= 2");
  return std::min<Index>(requested, eigs.size());
}

}  // namespace aqrsm
