#include "gmmlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "gmmlab/error.hpp"

namespace gmmlab::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(const std::string& token) {
  if (token == "inf" || token == "+inf") return std::numeric_limits<double>::infinity();
  if (token == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || token.empty()) throw UsageError("not a number: '" + token + "'");
  return v;
}

double round12(double v) {
  const double r = std::round(v * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  std::vector<double> grid;
  if (parts.size() == 3) {
    const double start = parse_real(parts[0]);
    const double stop = parse_real(parts[1]);
    const double step = parse_real(parts[2]);
    if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step)) {
      throw UsageError("grid '" + std::string(text) + "' needs finite start:stop and a positive step");
    }
    if (stop < start) throw UsageError("grid '" + std::string(text) + "' has stop < start");
    const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 0.5));
    for (std::int64_t k = 0; k <= count; ++k) grid.push_back(round12(start + static_cast<double>(k) * step));
  } else if (parts.size() == 1) {
    for (const auto& tok : split(text, ',')) grid.push_back(parse_real(tok));
  } else {
    throw UsageError("grid '" + std::string(text) + "' must be start:stop:step or a comma list");
  }
  return grid;
}

std::vector<double> drop_endpoints(std::vector<double> grid) {
  std::erase_if(grid, [](double r) { return r == 1.0 || r == -1.0; });
  return grid;
}

std::vector<std::int64_t> parse_count_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (const auto& tok : split(text, ',')) {
    const double v = parse_real(tok);
    if (!(v >= 1.0) || v > 1e12 || v != std::floor(v)) {
      throw UsageError("'" + tok + "' is not a positive integer count");
    }
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_real(tok));
  return out;
}

Mixing mixing_from_nu(double nu) {
  if (std::isinf(nu) && nu > 0.0) return GaussianMixing{};
  if (!(nu > 0.0)) throw UsageError("nu must be positive or inf");
  return StudentTMixing{nu};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_nu(const Mixing& m) {
  if (std::holds_alternative<UnitMixing>(m)) return "unit";
  return format_number(degrees_of_freedom(m));
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

const std::vector<std::string>& simulate_header() {
  static const std::vector<std::string> header = {
      "experiment", "nu",    "rho",   "sigma",        "n",    "mean_g",         "std_g",
      "f1",         "finf",  "nvar_emp", "nvar_theory", "mse_g", "mse_c", "var_rho_g_theory",
      "reps",       "seed",  "degenerate_count"};
  return header;
}

void write_simulate_csv(std::ostream& out, const mc::SimResult& result) {
  write_row(out, simulate_header());
  const std::string experiment(mc::to_string(result.config.experiment));
  const std::string seed = std::to_string(result.config.seed);
  for (const mc::SimRow& r : result.rows) {
    write_row(out, {experiment, format_nu(r.mixing), format_number(r.rho), format_number(r.sigma),
                    std::to_string(r.n), format_number(r.mean_g), format_number(r.std_g),
                    format_number(r.theory_f1), format_number(r.theory_finf), format_number(r.var_g_times_n),
                    format_number(r.theory_nvar), format_number(r.mse_rho_g), format_number(r.mse_rho_c),
                    format_number(r.theory_var_rho_g), std::to_string(r.reps), seed,
                    std::to_string(r.degenerate_count)});
  }
}

const std::vector<std::string>& theory_header() {
  static const std::vector<std::string> header = {
      "nu", "rho", "sigma", "n", "alpha", "tau", "f1", "finf", "V", "H", "nvar_theory", "log_rate_var",
      "var_rho_g_theory", "cos_var_factor", "var_rho_c_theory"};
  return header;
}

std::vector<TheoryRow> theory_table(const std::vector<double>& rho_grid, double sigma, const Mixing& mixing,
                                    std::int64_t n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  std::vector<TheoryRow> rows;
  for (double rho : rho_grid) {
    const EllipticalModel model{rho, sigma, mixing};
    validate(model);
    TheoryRow row{};
    row.mixing = mixing;
    row.rho = rho;
    row.sigma = sigma;
    row.n = n;
    const theory::GeometryParams g = theory::geometry(model);
    row.alpha = g.alpha;
    row.tau = g.tau;
    row.f1 = theory::f1(model);
    row.finf = theory::f_infty(model);
    const theory::VarianceIngredients vh = theory::variance_ingredients(model);
    row.v = vh.v;
    row.h = vh.h;
    try {
      row.nvar_theory = theory::asymptotic_nvar_gmm(model);
    } catch (const RegimeError&) {
      row.nvar_theory = kInf;
    }
    try {
      row.log_rate_var = theory::log_rate_var_gmm(model);
    } catch (const RegimeError&) {
      row.log_rate_var = kNaN;
    }
    if (sigma != 1.0) {
      row.var_rho_g_theory = kNaN;
    } else {
      row.var_rho_g_theory = std::isinf(row.nvar_theory) ? kInf : theory::asy_var_rho_g(model, n);
    }
    try {
      row.cos_var_factor = theory::cosine_variance_factor(mixing);
      row.var_rho_c_theory = theory::asy_var_rho_c(mixing, rho, n);
    } catch (const RegimeError&) {
      row.cos_var_factor = kInf;
      row.var_rho_c_theory = kInf;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_theory_csv(std::ostream& out, const std::vector<TheoryRow>& rows) {
  write_row(out, theory_header());
  for (const TheoryRow& r : rows) {
    write_row(out, {format_nu(r.mixing), format_number(r.rho), format_number(r.sigma), std::to_string(r.n),
                    format_number(r.alpha), format_number(r.tau), format_number(r.f1), format_number(r.finf),
                    format_number(r.v), format_number(r.h), format_number(r.nvar_theory),
                    format_number(r.log_rate_var), format_number(r.var_rho_g_theory),
                    format_number(r.cos_var_factor), format_number(r.var_rho_c_theory)});
  }
}

const std::vector<std::string>& tail_ratio_header() {
  static const std::vector<std::string> header = {"nu", "t", "ratio"};
  return header;
}

void write_tail_ratio_csv(std::ostream& out, const std::vector<double>& nus, const std::vector<double>& ts) {
  write_row(out, tail_ratio_header());
  for (double nu : nus) {
    for (double t : ts) {
      write_row(out, {format_number(nu), format_number(t), format_number(theory::tail_ratio(nu, t))});
    }
  }
}

namespace {

struct Preset {
  std::string_view name;
  mc::Experiment experiment;
  std::string_view nu;
  std::string_view n_list;
};

// Desk-scale versions of the four figure designs: 1000 repetitions, 0.1 grid.
constexpr Preset kPresets[] = {
    {"fig1-small", mc::Experiment::mean_std, "3,2,1,0.5", "1,10,100,1000"},
    {"fig2-small", mc::Experiment::var_check, "2.5,3,4,5", "10,100,1000"},
    {"fig3-small", mc::Experiment::mse_compare, "2.5,3,4,4.5", "1000"},
    {"fig4-small", mc::Experiment::mse_compare, "5,6,8,10,inf", "1000"},
};
constexpr std::int64_t kPresetReps = 1000;
constexpr std::string_view kPresetGrid = "-1:1:0.1";

const Preset* find_preset(const std::string& name) {
  for (const Preset& p : kPresets) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

struct Defaults {
  std::string_view nu;
  std::string_view n_list;
};

Defaults defaults_for(mc::Experiment e) {
  switch (e) {
    case mc::Experiment::mean_std:
      return {"3,2,1,0.5", "1,10,100,1000,10000"};
    case mc::Experiment::var_check:
      return {"2.5,3,4,5", "10,100,1000,10000"};
    case mc::Experiment::mse_compare:
      return {"2.5,3,4,4.5,5,6,8,10,inf", "1000"};
    case mc::Experiment::g1_check:
      return {"3,inf", "1"};
  }
  return {"3", "1"};
}

unsigned default_workers() {
  if (const char* env = std::getenv("GMM_LAB_WORKERS")) {
    try {
      const auto v = parse_count_list(env);
      if (v.size() == 1) return static_cast<unsigned>(v.front());
    } catch (const UsageError&) {
    }
    throw UsageError(std::string("GMM_LAB_WORKERS='") + env + "' is not a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Writes to --out when given, else to the provided stream.
template <class Writer>
int emit(const std::string& path, std::ostream& out, std::ostream& err, Writer write) {
  if (path.empty()) {
    write(out);
    return kOk;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kIo;
  }
  write(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return kIo;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized min-max similarity: theory tables and Monte Carlo experiments", "gmm_lab"};
  app.require_subcommand(1);

  // theory
  auto* theory_cmd = app.add_subcommand("theory", "closed-form limits and asymptotic variances per rho");
  std::string th_grid = "-1:1:0.1";
  std::string th_nu = "inf";
  double th_sigma = 1.0;
  std::int64_t th_n = 1;
  std::string th_out;
  theory_cmd->add_option("--rho-grid", th_grid, "start:stop:step or comma list")->capture_default_str();
  theory_cmd->add_option("--sigma", th_sigma, "scale ratio sigma > 0")->capture_default_str();
  theory_cmd->add_option("--nu", th_nu, "degrees of freedom (inf = Gaussian)")->capture_default_str();
  theory_cmd->add_option("--n", th_n, "sample size used for the Var(rho_hat) columns")->capture_default_str();
  theory_cmd->add_option("--out", th_out, "output CSV (default: stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "seeded Monte Carlo experiment");
  std::string sim_experiment;
  std::string sim_preset;
  std::string sim_nu;
  std::string sim_grid;
  std::string sim_n_list;
  double sim_sigma = 1.0;
  std::int64_t sim_reps = 10000;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  unsigned sim_workers = 0;
  bool include_endpoints = false;
  sim_cmd->add_option("experiment", sim_experiment, "mean-std | var-check | mse | g1-check");
  auto* preset_opt = sim_cmd->add_option("--preset", sim_preset, "fig1-small | fig2-small | fig3-small | fig4-small");
  auto* nu_opt = sim_cmd->add_option("--nu", sim_nu, "comma list of nu (inf = Gaussian)");
  auto* grid_opt = sim_cmd->add_option("--rho-grid", sim_grid, "start:stop:step or comma list");
  sim_cmd->add_option("--sigma", sim_sigma, "scale ratio sigma > 0")->capture_default_str();
  auto* n_opt = sim_cmd->add_option("--n-list", sim_n_list, "comma list of sample sizes");
  auto* reps_opt = sim_cmd->add_option("--reps", sim_reps, "repetitions per cell")->capture_default_str();
  sim_cmd->add_option("--seed", sim_seed, "base seed")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "output CSV (default: stdout)");
  auto* workers_opt = sim_cmd->add_option("--workers", sim_workers, "worker threads (env GMM_LAB_WORKERS)");
  sim_cmd->add_flag("--include-endpoints", include_endpoints, "keep rho = +-1 in the grid");

  // tail-ratio
  auto* tail_cmd = app.add_subcommand("tail-ratio", "t P(T > t) / E min(T, t) for t mixing");
  std::string tail_nu = "1";
  std::string tail_t = "10,100,1000,10000,100000,1000000";
  std::string tail_out;
  tail_cmd->add_option("--nu", tail_nu, "comma list of nu")->capture_default_str();
  tail_cmd->add_option("--t-list", tail_t, "comma list of t")->capture_default_str();
  tail_cmd->add_option("--out", tail_out, "output CSV (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (theory_cmd->parsed()) {
      const auto grid = parse_grid(th_grid);
      const auto nus = parse_real_list(th_nu);
      if (nus.size() != 1) throw UsageError("theory takes a single --nu");
      if (th_n < 1) throw UsageError("--n must be >= 1");
      const auto rows = theory_table(grid, th_sigma, mixing_from_nu(nus.front()), th_n);
      return emit(th_out, out, err, [&](std::ostream& os) { write_theory_csv(os, rows); });
    }

    if (tail_cmd->parsed()) {
      const auto nus = parse_real_list(tail_nu);
      const auto ts = parse_real_list(tail_t);
      for (double nu : nus) {
        if (!(nu > 0.0) || std::isinf(nu)) throw UsageError("tail-ratio needs finite nu > 0");
      }
      for (double t : ts) {
        if (!(t > 0.0) || std::isinf(t)) throw UsageError("tail-ratio needs finite t > 0");
      }
      return emit(tail_out, out, err, [&](std::ostream& os) { write_tail_ratio_csv(os, nus, ts); });
    }

    // simulate
    mc::ExperimentConfig config;
    const Preset* preset = nullptr;
    if (preset_opt->count() > 0) {
      preset = find_preset(sim_preset);
      if (preset == nullptr) throw UsageError("unknown preset '" + sim_preset + "'");
    }
    if (!sim_experiment.empty()) {
      try {
        config.experiment = mc::parse_experiment(sim_experiment);
      } catch (const InputError& e) {
        throw UsageError(e.what());
      }
      if (preset != nullptr && preset->experiment != config.experiment) {
        throw UsageError("preset '" + sim_preset + "' is a " + std::string(mc::to_string(preset->experiment)) +
                         " experiment");
      }
    } else if (preset != nullptr) {
      config.experiment = preset->experiment;
    } else {
      throw UsageError("simulate needs an experiment name or --preset");
    }

    const Defaults defaults = defaults_for(config.experiment);
    std::string nu_text(preset ? preset->nu : defaults.nu);
    std::string n_text(preset ? preset->n_list : defaults.n_list);
    std::string grid_text(preset ? kPresetGrid : std::string_view("-1:1:0.01"));
    if (preset != nullptr && reps_opt->count() == 0) sim_reps = kPresetReps;
    if (nu_opt->count() > 0) nu_text = sim_nu;
    if (n_opt->count() > 0) n_text = sim_n_list;
    if (grid_opt->count() > 0) grid_text = sim_grid;

    for (double nu : parse_real_list(nu_text)) config.mixings.push_back(mixing_from_nu(nu));
    config.n_values = parse_count_list(n_text);
    config.rho_grid = parse_grid(grid_text);
    if (!include_endpoints) config.rho_grid = drop_endpoints(config.rho_grid);
    if (config.rho_grid.empty()) throw UsageError("rho grid is empty after removing the +-1 endpoints");
    config.sigma = sim_sigma;
    if (sim_reps < 1) throw UsageError("--reps must be >= 1");
    config.repetitions = sim_reps;
    config.seed = sim_seed;
    config.workers = workers_opt->count() > 0 ? sim_workers : default_workers();
    if (config.workers < 1) throw UsageError("--workers must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    const mc::SimResult result = mc::run(config);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

    const int code = emit(sim_out, out, err, [&](std::ostream& os) { write_simulate_csv(os, result); });
    if (code != kOk) return code;
    std::ostream& summary = sim_out.empty() ? err : out;
    summary << "simulate " << mc::to_string(config.experiment) << ": " << result.rows.size() << " rows, "
            << config.repetitions << " reps/cell, seed " << config.seed << ", " << config.workers
            << " worker(s), wall " << wall.count() << " s";
    if (!sim_out.empty()) summary << " -> " << sim_out;
    summary << "\n";
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << "\n";
    return kRegime;
  } catch (const InputError& e) {
    err << "validation error: " << e.what() << "\n";
    return kRegime;
  } catch (const DegenerateInputError& e) {
    err << "validation error: " << e.what() << "\n";
    return kRegime;
  }
}

}  // namespace gmmlab::cli
