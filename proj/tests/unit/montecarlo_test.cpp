#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include "gmmlab/error.hpp"
#include "gmmlab/montecarlo.hpp"
#include "gmmlab/theory.hpp"

namespace gmmlab::mc {
namespace {

ExperimentConfig small(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  c.mixings = {StudentTMixing{3.0}, GaussianMixing{}};
  c.n_values = {1, 20};
  c.rho_grid = {-0.5, 0.0, 0.5};
  c.repetitions = 300;
  c.seed = 11;
  return c;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void expect_identical(const SimResult& a, const SimResult& b) {
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    EXPECT_TRUE(same(x.mean_g, y.mean_g)) << i;
    EXPECT_TRUE(same(x.std_g, y.std_g)) << i;
    EXPECT_TRUE(same(x.var_g_times_n, y.var_g_times_n)) << i;
    EXPECT_TRUE(same(x.mse_rho_g, y.mse_rho_g)) << i;
    EXPECT_TRUE(same(x.mse_rho_c, y.mse_rho_c)) << i;
    EXPECT_EQ(x.reps, y.reps);
  }
}

TEST(MonteCarlo, RowOrderAndTheoryColumns) {
  const auto r = run_mean_std(small(Experiment::mean_std));
  ASSERT_EQ(r.rows.size(), 2u * 2u * 3u);
  EXPECT_TRUE(std::holds_alternative<StudentTMixing>(r.rows[0].mixing));
  EXPECT_EQ(r.rows[0].n, 1);
  EXPECT_EQ(r.rows[0].rho, -0.5);
  EXPECT_EQ(r.rows[1].rho, 0.0);
  EXPECT_EQ(r.rows[3].n, 20);
  EXPECT_TRUE(std::holds_alternative<GaussianMixing>(r.rows[6].mixing));
  for (const auto& row : r.rows) {
    const EllipticalModel m{row.rho, row.sigma, row.mixing};
    EXPECT_DOUBLE_EQ(row.theory_f1, theory::f1(m));
    EXPECT_DOUBLE_EQ(row.theory_finf, theory::f_infty(m));
    EXPECT_EQ(row.reps, 300);
    EXPECT_EQ(row.degenerate_count, 0);
    EXPECT_GT(row.mean_g, 0.0);
    EXPECT_LT(row.mean_g, 1.0);
  }
}

TEST(MonteCarlo, ResultsDoNotDependOnWorkerCount) {
  for (auto e : {Experiment::mean_std, Experiment::var_check, Experiment::mse_compare, Experiment::g1_check}) {
    auto c = small(e);
    c.repetitions = 333;  // not a multiple of the chunk size
    c.workers = 1;
    const auto a = run(c);
    c.workers = 5;
    const auto b = run(c);
    expect_identical(a, b);
  }
}

TEST(MonteCarlo, CellsDoNotDependOnNeighbours) {
  auto c = small(Experiment::mean_std);
  const auto full = run(c);
  c.rho_grid = {0.5};
  c.mixings = {GaussianMixing{}};
  c.n_values = {20};
  const auto one = run(c);
  ASSERT_EQ(one.rows.size(), 1u);
  EXPECT_EQ(one.rows[0].mean_g, full.rows.back().mean_g);
  EXPECT_EQ(one.rows[0].std_g, full.rows.back().std_g);
}

TEST(MonteCarlo, SeedChangesOutput) {
  auto c = small(Experiment::mean_std);
  const auto a = run(c);
  c.seed = 12;
  const auto b = run(c);
  EXPECT_NE(a.rows[4].mean_g, b.rows[4].mean_g);
}

TEST(MonteCarlo, PerfectCorrelationGivesOne) {
  auto c = small(Experiment::mean_std);
  c.rho_grid = {1.0};
  const auto r = run(c);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.mean_g, 1.0);
    EXPECT_EQ(row.std_g, 0.0);
  }
}

TEST(MonteCarlo, G1CheckForcesSingleObservation) {
  auto c = small(Experiment::g1_check);
  c.n_values = {50, 500};
  const auto r = run(c);
  ASSERT_EQ(r.rows.size(), 2u * 3u);
  for (const auto& row : r.rows) EXPECT_EQ(row.n, 1);
}

TEST(MonteCarlo, MseCompareFillsBothEstimators) {
  const auto r = run(small(Experiment::mse_compare));
  for (const auto& row : r.rows) {
    EXPECT_GE(row.mse_rho_g, 0.0);
    EXPECT_GE(row.mse_rho_c, 0.0);
    EXPECT_TRUE(std::isfinite(row.mse_rho_g));
  }
}

TEST(MonteCarlo, VarCheckTheoryColumn) {
  const auto r = run(small(Experiment::var_check));
  for (const auto& row : r.rows) {
    const EllipticalModel m{row.rho, row.sigma, row.mixing};
    EXPECT_DOUBLE_EQ(row.theory_nvar, theory::asymptotic_nvar_gmm(m));
    EXPECT_NEAR(row.var_g_times_n, row.std_g * row.std_g * static_cast<double>(row.n), 1e-12);
  }
}

TEST(MonteCarlo, OutOfRegimeTheoryIsInfinite) {
  auto c = small(Experiment::mean_std);
  c.mixings = {StudentTMixing{2.0}};
  const auto r = run(c);
  for (const auto& row : r.rows) EXPECT_TRUE(std::isinf(row.theory_nvar));
}

TEST(MonteCarlo, Validation) {
  auto c = small(Experiment::var_check);
  c.mixings = {StudentTMixing{2.0}};
  EXPECT_THROW(validate(c), RegimeError);

  c = small(Experiment::mse_compare);
  c.sigma = 2.0;
  EXPECT_THROW(validate(c), RegimeError);

  c = small(Experiment::mean_std);
  c.repetitions = 0;
  EXPECT_THROW(validate(c), InputError);
  c = small(Experiment::mean_std);
  c.n_values = {0};
  EXPECT_THROW(validate(c), InputError);
  c = small(Experiment::mean_std);
  c.rho_grid = {1.5};
  EXPECT_THROW(validate(c), InputError);
  c = small(Experiment::mean_std);
  c.mixings.clear();
  EXPECT_THROW(validate(c), InputError);
  c = small(Experiment::mean_std);
  c.sigma = 0.0;
  EXPECT_THROW(validate(c), InputError);
}

TEST(MonteCarlo, ExperimentNames) {
  for (auto e : {Experiment::mean_std, Experiment::var_check, Experiment::mse_compare, Experiment::g1_check}) {
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  }
  EXPECT_EQ(to_string(Experiment::mse_compare), "mse");
  EXPECT_THROW(parse_experiment("nope"), InputError);
}

}  // namespace
}  // namespace gmmlab::mc
