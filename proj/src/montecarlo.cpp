#include "gmmlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "gmmlab/error.hpp"
#include "gmmlab/rng.hpp"
#include "gmmlab/sampling.hpp"
#include "gmmlab/similarity.hpp"
#include "gmmlab/welford.hpp"

namespace gmmlab::mc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cell {
  Mixing mixing;
  std::int64_t n;
  double rho;
};

// Per-repetition statistics; NaN marks a degenerate draw.
struct RepOutcome {
  double g;
  double c;
};

std::uint64_t mixing_key(const Mixing& m) {
  if (const auto* t = std::get_if<StudentTMixing>(&m)) return mix64(std::bit_cast<std::uint64_t>(t->nu));
  return std::holds_alternative<GaussianMixing>(m) ? 0x6A09E667F3BCC908ULL : 0xBB67AE8584CAA73BULL;
}

// Random streams depend on the cell's content, not on its position in the
// grid, so a cell reproduces regardless of what else the config contains.
std::uint64_t cell_seed(std::uint64_t seed, const Cell& cell) {
  std::uint64_t k = mix64(seed);
  k = mix64(k ^ mixing_key(cell.mixing));
  k = mix64(k ^ static_cast<std::uint64_t>(cell.n));
  k = mix64(k ^ std::bit_cast<std::uint64_t>(cell.rho));
  return k;
}

std::vector<Cell> enumerate_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (const Mixing& m : config.mixings) {
    for (std::int64_t n : config.n_values) {
      for (double rho : config.rho_grid) cells.push_back({m, n, rho});
    }
  }
  return cells;
}

RepOutcome one_repetition(const EllipticalModel& model, std::int64_t n, Rng& rng, std::vector<double>& x,
                          std::vector<double>& y) {
  const auto size = static_cast<std::size_t>(n);
  std::span<double> xs(x.data(), size);
  std::span<double> ys(y.data(), size);
  sampling::sample_pair_into(model, xs, ys, rng);
  RepOutcome out{kNaN, kNaN};
  try {
    out.g = gmm(xs, ys);
    out.c = cosine(xs, ys);
  } catch (const DegenerateInputError&) {
    out = {kNaN, kNaN};
  }
  return out;
}

// Repetitions run on any worker in any order; outcomes are stored by index
// and reduced in index order, so the result is independent of scheduling.
std::vector<RepOutcome> simulate_all(const ExperimentConfig& config, const std::vector<Cell>& cells) {
  const auto reps = static_cast<std::size_t>(config.repetitions);
  std::vector<RepOutcome> outcomes(cells.size() * reps);
  std::vector<std::uint64_t> seeds;
  seeds.reserve(cells.size());
  for (const Cell& c : cells) seeds.push_back(cell_seed(config.seed, c));

  constexpr std::size_t kChunk = 64;
  const std::size_t chunks_per_cell = (reps + kChunk - 1) / kChunk;
  const std::size_t total_chunks = chunks_per_cell * cells.size();
  std::int64_t max_n = 1;
  for (const Cell& c : cells) max_n = std::max(max_n, c.n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<double> x(static_cast<std::size_t>(max_n));
    std::vector<double> y(static_cast<std::size_t>(max_n));
    for (std::size_t chunk = next++; chunk < total_chunks; chunk = next++) {
      const std::size_t ci = chunk / chunks_per_cell;
      const std::size_t begin = (chunk % chunks_per_cell) * kChunk;
      const std::size_t end = std::min(begin + kChunk, reps);
      const Cell& cell = cells[ci];
      const EllipticalModel model{cell.rho, config.sigma, cell.mixing};
      for (std::size_t r = begin; r < end; ++r) {
        Rng rng(seeds[ci], r);
        outcomes[ci * reps + r] = one_repetition(model, cell.n, rng, x, y);
      }
    }
  };

  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return outcomes;
}

double variance_or_nan(const Welford& w) { return w.count() >= 2 ? w.variance() : kNaN; }
double mean_or_nan(const Welford& w) { return w.count() >= 1 ? w.mean() : kNaN; }

void fill_theory(SimRow& row) {
  const EllipticalModel model{row.rho, row.sigma, row.mixing};
  row.theory_f1 = theory::f1(model);
  row.theory_finf = theory::f_infty(model);
  try {
    row.theory_nvar = theory::asymptotic_nvar_gmm(model);
  } catch (const RegimeError&) {
    row.theory_nvar = kInf;
  }
  if (row.sigma != 1.0) {
    row.theory_var_rho_g = kNaN;
  } else if (std::isinf(row.theory_nvar)) {
    row.theory_var_rho_g = kInf;
  } else {
    row.theory_var_rho_g = theory::asy_var_rho_g(model, row.n);
  }
}

SimRow summarize(const Cell& cell, double sigma, std::span<const RepOutcome> outcomes) {
  SimRow row;
  row.mixing = cell.mixing;
  row.rho = cell.rho;
  row.sigma = sigma;
  row.n = cell.n;

  Welford g;
  Welford c;
  Welford rho_g;
  Welford sq_err_g;
  Welford sq_err_c;
  for (const RepOutcome& o : outcomes) {
    if (std::isnan(o.g)) {
      ++row.degenerate_count;
      continue;
    }
    g.add(o.g);
    c.add(o.c);
    const double rg = theory::rho_hat_g(o.g);
    rho_g.add(rg);
    sq_err_g.add((rg - cell.rho) * (rg - cell.rho));
    sq_err_c.add((o.c - cell.rho) * (o.c - cell.rho));
  }
  const auto n = static_cast<double>(cell.n);
  row.reps = g.count();
  row.mean_g = mean_or_nan(g);
  const double var_g = variance_or_nan(g);
  row.std_g = std::sqrt(var_g);
  row.var_g_times_n = n * var_g;
  row.mse_rho_g = mean_or_nan(sq_err_g);
  row.mse_rho_c = mean_or_nan(sq_err_c);
  row.mean_rho_g = mean_or_nan(rho_g);
  row.var_rho_c_times_n = n * variance_or_nan(c);
  fill_theory(row);
  return row;
}

SimResult execute(const ExperimentConfig& config) {
  validate(config);
  const std::vector<Cell> cells = enumerate_cells(config);
  const std::vector<RepOutcome> outcomes = simulate_all(config, cells);
  const auto reps = static_cast<std::size_t>(config.repetitions);

  SimResult result{config, {}};
  result.rows.reserve(cells.size());
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    result.rows.push_back(
        summarize(cells[ci], config.sigma, std::span<const RepOutcome>(outcomes).subspan(ci * reps, reps)));
  }
  return result;
}

void expect(const ExperimentConfig& config, Experiment e) {
  if (config.experiment != e) {
    throw InputError("config is for experiment '" + std::string(to_string(config.experiment)) + "', not '" +
                     std::string(to_string(e)) + "'");
  }
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::mean_std:
      return "mean-std";
    case Experiment::var_check:
      return "var-check";
    case Experiment::mse_compare:
      return "mse";
    case Experiment::g1_check:
      return "g1-check";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::mean_std, Experiment::var_check, Experiment::mse_compare, Experiment::g1_check}) {
    if (name == to_string(e)) return e;
  }
  throw InputError("unknown experiment '" + std::string(name) + "'");
}

void validate(const ExperimentConfig& config) {
  if (config.repetitions < 1) throw InputError("repetitions must be >= 1");
  if (config.mixings.empty()) throw InputError("at least one mixing law is required");
  if (config.n_values.empty()) throw InputError("n_values must not be empty");
  if (config.rho_grid.empty()) throw InputError("rho grid must not be empty");
  for (std::int64_t n : config.n_values) {
    if (n < 1) throw InputError("every n must be >= 1");
  }
  for (const Mixing& m : config.mixings) {
    for (double rho : config.rho_grid) validate(EllipticalModel{rho, config.sigma, m});
  }
  if (config.experiment == Experiment::var_check) {
    for (const Mixing& m : config.mixings) {
      if (!theory::t_moments(m).e_t2.is_finite()) {
        throw RegimeError("var-check needs E T^2 < inf (t mixing requires nu > 2); got " + describe(m));
      }
    }
  }
  if (config.experiment == Experiment::mse_compare && config.sigma != 1.0) {
    throw RegimeError("mse comparison uses rho_hat_g, which is defined for sigma = 1 only");
  }
}

SimResult run_mean_std(const ExperimentConfig& config) {
  expect(config, Experiment::mean_std);
  return execute(config);
}

SimResult run_var_check(const ExperimentConfig& config) {
  expect(config, Experiment::var_check);
  return execute(config);
}

SimResult run_mse_compare(const ExperimentConfig& config) {
  expect(config, Experiment::mse_compare);
  return execute(config);
}

SimResult run_g1_check(const ExperimentConfig& config) {
  expect(config, Experiment::g1_check);
  ExperimentConfig forced = config;
  forced.n_values = {1};
  return execute(forced);
}

SimResult run(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::mean_std:
      return run_mean_std(config);
    case Experiment::var_check:
      return run_var_check(config);
    case Experiment::mse_compare:
      return run_mse_compare(config);
    case Experiment::g1_check:
      return run_g1_check(config);
  }
  throw InputError("unknown experiment");
}

}  // namespace gmmlab::mc
