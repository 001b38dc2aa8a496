#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gmmlab/theory.hpp"

namespace gmmlab::mc {

enum class Experiment { mean_std, var_check, mse_compare, g1_check };

std::string_view to_string(Experiment e);
/// Accepts the CLI spellings: mean-std, var-check, mse, g1-check.
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::mean_std;
  std::vector<Mixing> mixings;  ///< one table block per mixing law
  double sigma = 1.0;
  std::vector<std::int64_t> n_values;
  std::vector<double> rho_grid;
  std::int64_t repetitions = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;  ///< results do not depend on this
};

/// Monte Carlo summary of one (mixing, n, rho) cell plus the matching theory.
struct SimRow {
  Mixing mixing;
  double rho = 0.0;
  double sigma = 1.0;
  std::int64_t n = 0;

  double mean_g = 0.0;
  double std_g = 0.0;
  double var_g_times_n = 0.0;
  double mse_rho_g = 0.0;
  double mse_rho_c = 0.0;
  double mean_rho_g = 0.0;
  double var_rho_c_times_n = 0.0;

  double theory_f1 = 0.0;
  double theory_finf = 0.0;
  double theory_nvar = 0.0;       ///< +inf when E T^2 is infinite
  double theory_var_rho_g = 0.0;  ///< at this n; +inf outside the regime, NaN for sigma != 1

  std::int64_t reps = 0;  ///< repetitions that produced a finite statistic
  std::int64_t degenerate_count = 0;
};

struct SimResult {
  ExperimentConfig config;
  std::vector<SimRow> rows;  ///< ordered by mixing, then n, then rho
};

/// Throws InputError or RegimeError if the config cannot run as the given experiment.
void validate(const ExperimentConfig& config);

SimResult run_mean_std(const ExperimentConfig& config);
/// Requires E T^2 < inf for every mixing law.
SimResult run_var_check(const ExperimentConfig& config);
/// Requires sigma = 1.
SimResult run_mse_compare(const ExperimentConfig& config);
/// Runs with n = 1 regardless of n_values.
SimResult run_g1_check(const ExperimentConfig& config);

/// Dispatches on config.experiment.
SimResult run(const ExperimentConfig& config);

}  // namespace gmmlab::mc
