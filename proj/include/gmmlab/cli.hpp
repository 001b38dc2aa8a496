#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmmlab/montecarlo.hpp"
#include "gmmlab/theory.hpp"

namespace gmmlab::cli {

/// Bad command-line value; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

enum ExitCode : int { kOk = 0, kUsage = 1, kRegime = 2, kIo = 3 };

/// "start:stop:step" (inclusive, half-step tolerance at stop) or a comma list.
/// Values are rounded to 12 decimals so 0.1 steps print as 0.3, not 0.30000000000000004.
std::vector<double> parse_grid(std::string_view text);

/// Removes exact +-1 entries.
std::vector<double> drop_endpoints(std::vector<double> grid);

/// Comma list of positive integers; scientific notation such as 1e4 is accepted.
std::vector<std::int64_t> parse_count_list(std::string_view text);

/// Comma list of reals; "inf" is accepted.
std::vector<double> parse_real_list(std::string_view text);

/// "inf" -> Gaussian, finite nu -> Student t.
Mixing mixing_from_nu(double nu);

/// Shortest round-trip decimal; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);

/// Column order of the simulate CSV. Never reordered.
const std::vector<std::string>& simulate_header();
void write_simulate_csv(std::ostream& out, const mc::SimResult& result);

struct TheoryRow {
  Mixing mixing;
  double rho;
  double sigma;
  std::int64_t n;
  double alpha;
  double tau;
  double f1;
  double finf;
  double v;
  double h;
  double nvar_theory;       ///< +inf when E T^2 is infinite
  double log_rate_var;      ///< populated for nu = 2 only, NaN otherwise
  double var_rho_g_theory;  ///< Var(rho_hat_g) at n; +inf outside the regime, NaN for sigma != 1
  double cos_var_factor;    ///< E T^4 / (2 (E T^2)^2); +inf when E T^4 is infinite
  double var_rho_c_theory;  ///< Var(rho_hat_c) at n
};

const std::vector<std::string>& theory_header();
std::vector<TheoryRow> theory_table(const std::vector<double>& rho_grid, double sigma, const Mixing& mixing,
                                    std::int64_t n);
void write_theory_csv(std::ostream& out, const std::vector<TheoryRow>& rows);

const std::vector<std::string>& tail_ratio_header();
void write_tail_ratio_csv(std::ostream& out, const std::vector<double>& nus, const std::vector<double>& ts);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmmlab::cli
