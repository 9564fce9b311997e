#include <gtest/gtest.h>

#include "aqrsm/sweep.hpp"

using namespace aqrsm;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.model = {1.0, 1.0, 0.5, 0.2, 0.2, 30};
  s.axis1 = {"g", 0.1, 1.5, 5};
  s.n_levels = 20;
  s.convergence_delta_ntr = 0;
  return s;
}

SweepResult synthetic(const std::vector<double>& g2) {
  SweepResult r;
  r.spec.axis1 = {"g", 0.0, 1.0, static_cast<int>(g2.size())};
  for (std::size_t i = 0; i < g2.size(); ++i) {
    SweepRow row;
    row.axis1 = r.spec.axis1.value(static_cast<int>(i));
    if (std::isnan(g2[i])) {
      row.error = ErrorCode::zero_flux;
    } else {
      row.report = ObservableReport{};
      row.report->g2 = g2[i];
    }
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace

TEST(Axis, EndpointsExact) {
  const Axis a{"g", 0.05, 2.0, 41};
  EXPECT_EQ(a.value(0), 0.05);
  EXPECT_EQ(a.value(40), 2.0);
  EXPECT_NEAR(a.value(20), 1.025, 1e-15);
}

TEST(Sweep, IdenticalForOneAndEightWorkers) {
  SweepSpec s = small_spec();
  s.axis2 = Axis{"u", -0.3, 0.3, 3};
  const SweepResult a = run_sweep(s, 1);
  const SweepResult b = run_sweep(s, 8);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    ASSERT_TRUE(a.rows[i].report && b.rows[i].report);
    EXPECT_EQ(*a.rows[i].report->g2, *b.rows[i].report->g2);
    EXPECT_EQ(*a.rows[i].report->xi_b2, *b.rows[i].report->xi_b2);
    EXPECT_EQ(a.rows[i].report->n_photon, b.rows[i].report->n_photon);
  }
}

TEST(Sweep, RowMajorOrder) {
  SweepSpec s = small_spec();
  s.axis1 = {"g", 0.2, 0.4, 2};
  s.axis2 = Axis{"kt", 0.05, 0.1, 3};
  const SweepResult r = run_sweep(s, 2);
  ASSERT_EQ(r.rows.size(), 6u);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      const SweepRow& row = r.rows[i * 3 + j];
      EXPECT_EQ(row.model.g, s.axis1.value(i));
      EXPECT_EQ(row.bath.kt_q, s.axis2->value(j));
      EXPECT_EQ(row.bath.kt_c, s.axis2->value(j));
      EXPECT_EQ(row.axis2, s.axis2->value(j));
    }
}

TEST(Sweep, ErrorIsolatedToItsRow) {
  SweepSpec s = small_spec();
  s.axis1 = {"kt", 0.0, 0.1, 3};
  const SweepResult r = run_sweep(s, 1);
  EXPECT_EQ(r.rows[0].error, ErrorCode::zero_flux);
  EXPECT_FALSE(r.rows[0].report);
  EXPECT_FALSE(column_value(r.rows[0], "g2"));
  EXPECT_EQ(r.rows[1].error, ErrorCode::none);
  EXPECT_EQ(r.rows[2].error, ErrorCode::none);
}

TEST(Sweep, NearDegenerateFlagAtCriticalCoupling) {
  SweepSpec s = small_spec();
  s.model.n_tr = 80;
  const double gc = *gc_analytic(s.model);
  s.axis1 = {"g", gc, gc + 0.5, 2};
  const SweepResult r = run_sweep(s, 1);
  ASSERT_TRUE(r.rows[0].report && r.rows[1].report);
  EXPECT_TRUE(r.rows[0].report->near_degenerate);
  EXPECT_FALSE(r.rows[1].report->near_degenerate);
}

TEST(Sweep, ConvergenceFlag) {
  SweepSpec s = small_spec();
  s.axis1 = {"g", 0.2, 0.3, 2};
  s.convergence_delta_ntr = 20;
  const SweepResult r = run_sweep(s, 1);
  EXPECT_TRUE(r.rows[0].converged);
  s.model.n_tr = 3;
  s.axis1 = {"g", 1.6, 1.8, 2};
  s.n_levels = 8;
  const SweepResult bad = run_sweep(s, 1);
  EXPECT_FALSE(bad.rows[0].converged);
}

TEST(Sweep, ValidationListsFields) {
  SweepSpec s = small_spec();
  s.axis1 = {"q", 1.0, 0.5, 1};
  s.axis2 = Axis{"u", -2.0, 0.5, 3};
  try {
    run_sweep(s);
    FAIL();
  } catch (const InvalidParameter& e) {
    const std::string m = e.what();
    EXPECT_NE(m.find("axis1.name"), std::string::npos);
    EXPECT_NE(m.find("axis1.count"), std::string::npos);
    EXPECT_NE(m.find("axis1.min"), std::string::npos);
    EXPECT_NE(m.find("axis2 range"), std::string::npos);
  }
  EXPECT_THROW(run_sweep(small_spec(), 0), InvalidParameter);
}

TEST(SignTransitions, CountsStrictChanges) {
  const SignTransitions t = sign_transitions(synthetic({1.2, 0.8, 0.9, 1.0, 1.1, NAN, 0.5}), "g2", 1.0);
  EXPECT_EQ(t.count, 3);
  ASSERT_EQ(t.locations.size(), 3u);
  EXPECT_NEAR(t.locations[0], 0.5 * (0.0 + 1.0 / 6), 1e-15);
}

TEST(SignTransitions, RejectsTwoDimensionalAndUnknownColumn) {
  SweepResult r = synthetic({1.0, 2.0});
  EXPECT_THROW(sign_transitions(r, "nope", 1.0), InvalidInput);
  r.spec.axis2 = Axis{"r", 0.0, 1.0, 2};
  EXPECT_THROW(sign_transitions(r, "g2", 1.0), InvalidInput);
}
