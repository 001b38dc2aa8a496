#include "gmmlab/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gmmlab/error.hpp"
#include "gmmlab/special_functions.hpp"

namespace gmmlab {

double degrees_of_freedom(const Mixing& m) {
  if (const auto* t = std::get_if<StudentTMixing>(&m)) return t->nu;
  if (std::holds_alternative<GaussianMixing>(m)) return std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

std::string describe(const Mixing& m) {
  if (const auto* t = std::get_if<StudentTMixing>(&m)) {
    std::ostringstream os;
    os << "t(nu=" << t->nu << ")";
    return os.str();
  }
  return std::holds_alternative<GaussianMixing>(m) ? "gaussian" : "unit";
}

void validate(const EllipticalModel& model) {
  if (!(model.rho >= -1.0 && model.rho <= 1.0)) throw InputError("rho must lie in [-1, 1]");
  if (!(model.sigma > 0.0) || !std::isfinite(model.sigma)) {
    throw InputError("sigma must be finite and positive");
  }
  if (const auto* t = std::get_if<StudentTMixing>(&model.mixing)) {
    if (!(t->nu > 0.0)) throw InputError("nu must be positive");
  }
}

}  // namespace gmmlab

namespace gmmlab::theory {
namespace {

using std::numbers::pi;

// Trigonometric values shared by the closed forms. sin(alpha) and cos(alpha)
// come from the half-angle square roots so that rho = +-1 gives exact zeros.
struct Trig {
  double rho, sigma;
  double alpha, tau;
  double sin_a, cos_a;
  double sin_2a, cos_2a;
  double sin_tau, sin_2a_minus_tau;
};

Trig trig(const EllipticalModel& model) {
  validate(model);
  Trig t{};
  t.rho = model.rho;
  t.sigma = model.sigma;
  t.sin_a = std::sqrt(0.5 * (1.0 - model.rho));
  t.cos_a = std::sqrt(0.5 * (1.0 + model.rho));
  t.alpha = std::asin(t.sin_a);
  t.sin_2a = 2.0 * t.sin_a * t.cos_a;
  t.cos_2a = model.rho;
  // tan(tau) = (sigma - cos 2a) / sin 2a. atan2 picks the branch in
  // [2 alpha - pi/2, pi/2] and gives the limiting +-pi/2 when sin 2a = 0.
  t.tau = std::atan2(model.sigma - model.rho, t.sin_2a);
  t.sin_tau = std::sin(t.tau);
  t.sin_2a_minus_tau = std::sin(2.0 * t.alpha - t.tau);
  return t;
}

// x log(y) with the 0 * log(0) = 0 convention.
double xlogy(double x, double y) { return (x == 0.0) ? 0.0 : x * std::log(y); }

double xi_bracket(const Trig& t) { return 1.0 - t.sin_2a_minus_tau + t.sigma * (1.0 - t.sin_tau); }
double zeta_bracket(const Trig& t) { return t.sigma * (1.0 + t.sin_tau) + 1.0 + t.sin_2a_minus_tau; }

double expect_t_squared_over_t_sq(const Mixing& mixing) {
  const TMoments m = t_moments(mixing);
  if (!m.e_t2.is_finite()) {
    std::string msg = "Var(g_n) ~ 1/n requires E T^2 < inf; got " + describe(mixing);
    if (const auto* st = std::get_if<StudentTMixing>(&mixing); st && st->nu == 2.0) {
      msg += " (use the (n / log n)^{1/2} rate variance for nu = 2)";
    }
    throw RegimeError(msg);
  }
  const double et = m.e_t.value();
  return m.e_t2.value() / (et * et);
}

void check_count(std::int64_t n) {
  if (n < 1) throw InputError("sample size n must be >= 1");
}

}  // namespace

GeometryParams geometry(const EllipticalModel& model) {
  const Trig t = trig(model);
  return {t.alpha, t.tau};
}

double f1(const EllipticalModel& model) {
  const Trig t = trig(model);
  const double s = t.sigma;
  // log(cos(2a - pi/2) / cos tau) = log(1 + s^2 - 2 s rho) / 2, and the
  // cos(2a - tau) counterpart is log(1 + 1/s^2 - 2 rho / s) / 2.
  const double d1 = (1.0 - s) * (1.0 - s) + 2.0 * s * (1.0 - t.rho);
  const double is = 1.0 / s;
  const double d2 = (1.0 - is) * (1.0 - is) + 2.0 * is * (1.0 - t.rho);
  const double first = (t.tau + pi / 2 - 2.0 * t.alpha) * t.cos_2a + xlogy(0.5 * t.sin_2a, d1);
  const double second = (pi / 2 - t.tau) * t.cos_2a + xlogy(0.5 * t.sin_2a, d2);
  return first / (s * pi) + s * second / pi;
}

double f_infty(const EllipticalModel& model) {
  const Trig t = trig(model);
  return xi_bracket(t) / zeta_bracket(t);
}

XiZetaMoments xi_zeta_moments(const EllipticalModel& model) {
  const Trig t = trig(model);
  const double s = t.sigma;
  const double s2 = s * s;
  const double a = t.alpha;
  const double tau = t.tau;
  const double sin_2tau = std::sin(2.0 * tau);
  const double sin_2tau_4a = std::sin(2.0 * tau - 4.0 * a);

  XiZetaMoments m{};
  m.e_xi = xi_bracket(t) / pi;
  m.e_zeta = zeta_bracket(t) / pi;
  m.e_xi2 = (tau + pi / 2 - 2.0 * a + 0.5 * sin_2tau_4a + s2 * (pi / 2 - tau - 0.5 * sin_2tau)) /
            (2.0 * pi);
  m.e_zeta2 = (s2 * (tau / 2 + 0.25 * sin_2tau + pi / 4) + (pi / 4 + a - tau / 2 - 0.25 * sin_2tau_4a)) / pi +
              s * (t.sin_2a - 2.0 * a * t.cos_2a) / pi;
  m.e_xizeta = s * ((pi - 2.0 * a) * t.cos_2a + t.sin_2a) / (2.0 * pi);
  return m;
}

VarianceIngredients variance_ingredients(const EllipticalModel& model) {
  const Trig t = trig(model);
  const double s = t.sigma;
  const double s2 = s * s;
  const double a = t.alpha;
  const double tau = t.tau;
  const double sin_2tau = std::sin(2.0 * tau);
  const double sin_2tau_4a = std::sin(2.0 * tau - 4.0 * a);
  const double num = xi_bracket(t);
  const double den = zeta_bracket(t);
  const double pi3 = pi * pi * pi;

  const double xi2_part = 2.0 * tau + pi - 4.0 * a + sin_2tau_4a + s2 * (pi - 2.0 * tau - sin_2tau);
  const double zeta2_part = s2 * (2.0 * tau + sin_2tau + pi) + (pi + 4.0 * a - 2.0 * tau - sin_2tau_4a) +
                            4.0 * s * (t.sin_2a - 2.0 * a * t.cos_2a);
  const double cross_part = (pi - 2.0 * a) * t.cos_2a + t.sin_2a;

  double v = xi2_part * den * den / (4.0 * pi3) + zeta2_part * num * num / (4.0 * pi3) -
             s * cross_part * num * den / pi3;
  // Cancellation can leave a tiny negative residue near rho = 1.
  if (v < 0.0) v = 0.0;
  return {v, den / pi};
}

double v_from_moments(const XiZetaMoments& m) {
  return m.e_xi2 * m.e_zeta * m.e_zeta + m.e_zeta2 * m.e_xi * m.e_xi - 2.0 * m.e_xi * m.e_zeta * m.e_xizeta;
}

namespace sigma_one {

double f1(double rho) {
  validate(EllipticalModel{rho, 1.0, GaussianMixing{}});
  const double root = std::sqrt((1.0 - rho) * (1.0 + rho));
  return rho + (xlogy(root, 2.0 - 2.0 * rho) - 2.0 * rho * std::asin(std::sqrt((1.0 - rho) / 2.0))) / pi;
}

double f_infty(double rho) {
  validate(EllipticalModel{rho, 1.0, GaussianMixing{}});
  const double r = std::sqrt((1.0 - rho) / 2.0);
  return (1.0 - r) / (1.0 + r);
}

XiZetaMoments moments(double rho) {
  validate(EllipticalModel{rho, 1.0, GaussianMixing{}});
  const double sin_a = std::sqrt((1.0 - rho) / 2.0);
  const double a = std::asin(sin_a);
  const double sin_2a = std::sin(2.0 * a);
  const double cos_2a = std::cos(2.0 * a);
  XiZetaMoments m{};
  m.e_xi = 2.0 / pi * (1.0 - sin_a);
  m.e_zeta = 2.0 / pi * (1.0 + sin_a);
  m.e_xi2 = (pi - 2.0 * a - sin_2a) / (2.0 * pi);
  m.e_zeta2 = (pi / 2 + a + 1.5 * sin_2a - 2.0 * a * cos_2a) / pi;
  m.e_xizeta = ((pi - 2.0 * a) * cos_2a + sin_2a) / (2.0 * pi);
  return m;
}

double v(double rho) {
  validate(EllipticalModel{rho, 1.0, GaussianMixing{}});
  const double sin_a = std::sqrt((1.0 - rho) / 2.0);
  const double a = std::asin(sin_a);
  return 4.0 / (pi * pi * pi) * sin_a * sin_a *
         (3.0 * pi - 8.0 * std::cos(a) + 2.0 * std::sin(2.0 * a) + pi * std::cos(2.0 * a) -
          8.0 * a * sin_a - 4.0 * a * std::cos(2.0 * a));
}

double h(double rho) {
  validate(EllipticalModel{rho, 1.0, GaussianMixing{}});
  return 2.0 / pi * (1.0 + std::sqrt((1.0 - rho) / 2.0));
}

}  // namespace sigma_one

double MomentValue::value() const {
  if (!finite_) throw RegimeError("moment of T is infinite");
  return value_;
}

double MomentValue::or_inf() const { return finite_ ? value_ : std::numeric_limits<double>::infinity(); }

TMoments t_moments(double nu) {
  if (!(nu > 0.0)) throw InputError("nu must be positive");
  if (std::isinf(nu)) return t_moments(Mixing{GaussianMixing{}});
  TMoments m{MomentValue::infinite(), MomentValue::infinite(), MomentValue::infinite()};
  if (nu > 1.0) {
    // sqrt(nu) Gamma(nu/2 - 1/2) Gamma(1/2) / (2 Gamma(nu/2)), ratio taken in log space.
    const double log_ratio = log_gamma(nu / 2.0 - 0.5) - log_gamma(nu / 2.0);
    m.e_t = MomentValue::finite(std::sqrt(nu) * std::sqrt(pi) / 2.0 * std::exp(log_ratio));
  }
  if (nu > 2.0) m.e_t2 = MomentValue::finite(2.0 * nu / (nu - 2.0));
  if (nu > 4.0) {
    const double d = (nu - 2.0) * (nu - 2.0);
    m.e_t4 = MomentValue::finite(4.0 * nu * nu * nu / (d * (nu - 4.0)) + 4.0 * nu * nu / d);
  }
  return m;
}

TMoments t_moments(const Mixing& mixing) {
  if (const auto* t = std::get_if<StudentTMixing>(&mixing)) return t_moments(t->nu);
  if (std::holds_alternative<GaussianMixing>(mixing)) {
    // T^2 ~ chi^2_2: T is Rayleigh with unit scale.
    return {MomentValue::finite(std::sqrt(pi / 2.0)), MomentValue::finite(2.0), MomentValue::finite(8.0)};
  }
  return {MomentValue::finite(1.0), MomentValue::finite(1.0), MomentValue::finite(1.0)};
}

double asymptotic_nvar_gmm(const EllipticalModel& model) {
  const VarianceIngredients vh = variance_ingredients(model);
  const double h2 = vh.h * vh.h;
  return vh.v / (h2 * h2) * expect_t_squared_over_t_sq(model.mixing);
}

double asy_var_gmm(const EllipticalModel& model, std::int64_t n) {
  check_count(n);
  return asymptotic_nvar_gmm(model) / static_cast<double>(n);
}

double log_rate_var_gmm(const EllipticalModel& model) {
  const auto* st = std::get_if<StudentTMixing>(&model.mixing);
  if (st == nullptr || st->nu != 2.0) {
    throw RegimeError("the (n / log n)^{1/2} rate applies only to t mixing with nu = 2; got " +
                      describe(model.mixing));
  }
  const VarianceIngredients vh = variance_ingredients(model);
  const double h2 = vh.h * vh.h;
  return vh.v / (h2 * h2) * 4.0 / (pi * pi);
}

double rho_hat_g(double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw InputError("rho_hat_g requires g in [0, 1]");
  const double r = (1.0 - g) / (1.0 + g);
  return 1.0 - 2.0 * r * r;
}

double asy_var_rho_g(const EllipticalModel& model, std::int64_t n) {
  check_count(n);
  validate(model);
  if (model.sigma != 1.0) throw RegimeError("rho_hat_g is defined for sigma = 1 only");
  const double rho = model.rho;
  const double q = 1.0 + std::sqrt((1.0 - rho) / 2.0);
  const double q2 = q * q;
  return 2.0 * (1.0 - rho) * q2 * q2 * asymptotic_nvar_gmm(model) / static_cast<double>(n);
}

double asy_var_rho_g_delta(const EllipticalModel& model, std::int64_t n) {
  check_count(n);
  validate(model);
  if (model.sigma != 1.0) throw RegimeError("rho_hat_g is defined for sigma = 1 only");
  const double f = f_infty(model);
  const double slope = 8.0 * (1.0 - f) / ((1.0 + f) * (1.0 + f) * (1.0 + f));
  return slope * slope * asy_var_gmm(model, n);
}

double cosine_variance_factor(const Mixing& mixing) {
  const TMoments m = t_moments(mixing);
  if (!m.e_t4.is_finite()) {
    throw RegimeError("cosine asymptotic normality requires E T^4 < inf (nu > 4); got " + describe(mixing));
  }
  const double et2 = m.e_t2.value();
  return m.e_t4.value() / (2.0 * et2 * et2);
}

double asy_var_rho_c(const Mixing& mixing, double rho, std::int64_t n) {
  check_count(n);
  if (!(rho >= -1.0 && rho <= 1.0)) throw InputError("rho must lie in [-1, 1]");
  const double w = 1.0 - rho * rho;
  return cosine_variance_factor(mixing) * w * w / static_cast<double>(n);
}

}  // namespace gmmlab::theory
