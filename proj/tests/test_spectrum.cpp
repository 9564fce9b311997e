#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "aqrsm/spectrum.hpp"

using namespace aqrsm;

TEST(Spectrum, DecoupledLevels) {
  const EigenSystem e = solve_spectrum({1.0, 1.0, 0.0, 1.0, 0.0, 10});
  // n - 0.5 (ground qubit) and n + 0.5 (excited qubit)
  std::vector<double> expected;
  for (int n = 0; n <= 10; ++n) {
    expected.push_back(n - 0.5);
    expected.push_back(n + 0.5);
  }
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < 22; ++k) EXPECT_NEAR(e.energies(k), expected[k], 1e-12) << k;
}

TEST(Spectrum, JaynesCummingsLowestLevels) {
  const EigenSystem e = solve_spectrum({1.0, 1.0, 0.1, 0.0, 0.0, 60});
  EXPECT_NEAR(e.energies(0), -0.5, 1e-12);
  EXPECT_NEAR(e.energies(1), 0.4, 1e-12);
  EXPECT_NEAR(e.energies(2), 0.6, 1e-12);
}

TEST(Spectrum, EigenvectorsOrthonormalWithPhaseFix) {
  const ModelParams p{1.0, 1.0, 0.6, 0.4, 0.3, 30};
  const EigenSystem e = solve_spectrum(p);
  const Index n = e.size();
  EXPECT_LT(max_abs(e.states.adjoint() * e.states - ComplexMatrix::Identity(n, n)), 1e-10);
  const ComplexMatrix h = assemble_hamiltonian(p).entries;
  for (Index k = 0; k < 8; ++k) {
    EXPECT_LT((h * e.state(k) - e.energies(k) * e.state(k)).norm(), 1e-10);
    Index arg = 0;
    e.state(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_NEAR(e.state(k)(arg).imag(), 0.0, 1e-12);
  }
  for (Index k = 1; k < n; ++k) EXPECT_LE(e.energies(k - 1), e.energies(k));
}

TEST(Spectrum, ParityLabelsMatchSectors) {
  const ModelParams p{1.0, 1.0, 0.8, 0.5, -0.2, 20};
  const EigenSystem e = solve_spectrum(p);
  const OperatorMatrix pi = parity_operator(p.n_tr);
  for (Index k = 0; k < e.size(); ++k) {
    const Complex v = e.state(k).dot(pi.entries * e.state(k));
    EXPECT_NEAR(v.real(), e.parities[k], 1e-10);
  }
}

TEST(Spectrum, TruncationConvergence) {
  const ModelParams p{1.0, 1.0, 0.8, 0.5, 0.2, 60};
  ModelParams q = p;
  q.n_tr += 20;
  const EigenSystem a = solve_spectrum(p), b = solve_spectrum(q);
  for (int k = 0; k < 10; ++k) EXPECT_NEAR(a.energies(k), b.energies(k), 1e-9);
}

TEST(Diagonalize, RejectsNonHermitian) {
  OperatorMatrix h = assemble_hamiltonian({1.0, 1.0, 0.3, 0.2, 0.1, 5});
  h.entries(0, 1) += Complex(0.1, 0.0);
  EXPECT_THROW(diagonalize(h, parity_operator(5)), InvalidInput);
}

TEST(Diagonalize, RejectsNonCommutingParity) {
  OperatorMatrix h = assemble_hamiltonian({1.0, 1.0, 0.3, 0.2, 0.1, 5});
  h.entries(0, 1) += 0.2;
  h.entries(1, 0) += 0.2;
  EXPECT_THROW(diagonalize(h, parity_operator(5)), InvalidInput);
}

TEST(GcAnalytic, KnownValues) {
  const auto gc = gc_analytic({1.0, 1.0, 0.0, 0.2, 0.2, 10});
  ASSERT_TRUE(gc);
  EXPECT_NEAR(*gc, 0.9066, 5e-4);
  const auto jc = gc_analytic({1.0, 1.0, 0.0, 0.0, 0.0, 10});
  ASSERT_TRUE(jc);
  EXPECT_DOUBLE_EQ(*jc, 1.0);
  EXPECT_FALSE(gc_analytic({1.0, 1.0, 0.0, 1.0, 0.0, 10}));
}

TEST(Crossings, JaynesCummingsGroundCrossing) {
  const CriticalPoints cp = find_crossings({1.0, 1.0, 0.0, 0.0, 0.0, 40}, 0.05, 2.0, 100, {0});
  ASSERT_TRUE(cp.gc_numeric);
  EXPECT_NEAR(cp.gc_numeric->value, 1.0, 0.01);
}

TEST(Crossings, IsotropicRabiHasNoGroundCrossing) {
  const CriticalPoints cp = find_crossings({1.0, 1.0, 0.0, 1.0, 0.0, 60}, 0.05, 2.0, 100, {0});
  EXPECT_FALSE(cp.gc_numeric);
  EXPECT_TRUE(cp.crossings.empty());
  EXPECT_FALSE(cp.gc_analytic);
}

TEST(Crossings, InvariantUnderEnergyShift) {
  const ModelParams p{1.0, 1.0, 0.0, 0.2, 0.2, 50};
  const OperatorMatrix parity = parity_operator(p.n_tr);
  auto build = [&](double shift) {
    return [&, shift](double g) {
      ModelParams q = p;
      q.g = g;
      OperatorMatrix h = assemble_hamiltonian(q);
      h.entries.diagonal().array() += shift;
      return h;
    };
  };
  const auto a = scan_crossings(build(0.0), parity, 0.05, 2.0, 80, {0, 1, 2});
  const auto b = scan_crossings(build(3.7), parity, 0.05, 2.0, 80, {0, 1, 2});
  ASSERT_EQ(a.size(), b.size());
  ASSERT_FALSE(a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lower, b[i].lower);
    EXPECT_NEAR(a[i].g, b[i].g, 1e-6);
  }
}

TEST(Crossings, RejectsBadRange) {
  EXPECT_THROW(find_crossings({1.0, 1.0, 0.0, 0.2, 0.2, 20}, 1.0, 0.5, 40, {0}), InvalidParameter);
  EXPECT_THROW(find_crossings({1.0, 1.0, 0.0, 0.2, 0.2, 20}, 0.0, 0.5, 2, {0}), InvalidParameter);
}

TEST(Crossings, WorkerCountDoesNotChangeResult) {
  const ModelParams p{1.0, 1.0, 0.0, 0.2, 0.2, 40};
  CrossingOptions one, four;
  four.workers = 4;
  const auto a = find_crossings(p, 0.05, 2.0, 60, {0, 1, 2}, one);
  const auto b = find_crossings(p, 0.05, 2.0, 60, {0, 1, 2}, four);
  ASSERT_EQ(a.crossings.size(), b.crossings.size());
  for (std::size_t i = 0; i < a.crossings.size(); ++i) EXPECT_EQ(a.crossings[i].g, b.crossings[i].g);
}

TEST(TruncationReport, ConvergedGroundEnergy) {
  auto ground = [](const ModelParams& q) { return solve_spectrum(q).energies(0); };
  const ConvergenceReport r = truncation_report(ModelParams{1.0, 1.0, 0.5, 0.5, 0.1, 40}, ground, 20, 1e-8);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, r.reference, 1e-8);
}

TEST(TruncationReport, FlagsUnconvergedTruncation) {
  auto photons = [](const ModelParams& q) {
    const EigenSystem e = solve_spectrum(q);
    return (composite_ops(q.n_tr).number.entries * e.state(10)).norm();
  };
  const ConvergenceReport r = truncation_report(ModelParams{1.0, 1.0, 1.8, 1.0, 0.6, 4}, photons, 10, 1e-8);
  EXPECT_FALSE(r.converged);
}

TEST(TruncationReport, RejectsSmallDelta) {
  auto ground = [](const ModelParams& q) { return solve_spectrum(q).energies(0); };
  EXPECT_THROW(truncation_report(ModelParams{1.0, 1.0, 0.5, 0.5, 0.1, 20}, ground, 5, 1e-8), InvalidParameter);
}
