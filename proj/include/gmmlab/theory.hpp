#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace gmmlab {

// Mixing laws for the radial factor T in (X, Y)^T = A U T.
struct GaussianMixing {};  ///< T^2 ~ chi^2_2
struct StudentTMixing {    ///< T ~ sqrt(chi^2_2 nu / chi^2_nu)
  double nu;
};
struct UnitMixing {};  ///< T == 1, the pure-angle model

using Mixing = std::variant<GaussianMixing, StudentTMixing, UnitMixing>;

/// Degrees of freedom of the mixing law; +inf for Gaussian, NaN for UnitT.
double degrees_of_freedom(const Mixing& m);
std::string describe(const Mixing& m);

/// Elliptical data-generating process: Sigma = [[1, sigma rho], [sigma rho, sigma^2]].
struct EllipticalModel {
  double rho = 0.0;
  double sigma = 1.0;
  Mixing mixing = GaussianMixing{};
};

/// Throws InputError unless -1 <= rho <= 1, sigma > 0 and nu > 0.
void validate(const EllipticalModel& model);

}  // namespace gmmlab

namespace gmmlab::theory {

/// Angles that parametrize every closed form.
/// alpha = asin(sqrt((1 - rho) / 2)); tau in [2 alpha - pi/2, pi/2] solves
/// cos(tau - 2 alpha) / cos(tau) = sigma.
struct GeometryParams {
  double alpha;
  double tau;
};

GeometryParams geometry(const EllipticalModel& model);

/// E[g_1], the expected GMM of a single observation.
double f1(const EllipticalModel& model);
/// Large-sample limit of g_n.
double f_infty(const EllipticalModel& model);

/// Moments of the normalized per-observation min functional xi and max functional zeta.
struct XiZetaMoments {
  double e_xi;
  double e_zeta;
  double e_xi2;
  double e_zeta2;
  double e_xizeta;
};

XiZetaMoments xi_zeta_moments(const EllipticalModel& model);

struct VarianceIngredients {
  double v;  ///< E(xi E zeta - zeta E xi)^2
  double h;  ///< E zeta
};

/// Closed-form V and H.
VarianceIngredients variance_ingredients(const EllipticalModel& model);

/// V = E xi^2 (E zeta)^2 + E zeta^2 (E xi)^2 - 2 E xi E zeta E(xi zeta).
double v_from_moments(const XiZetaMoments& m);

/// The sigma = 1 simplifications, written in terms of rho and alpha only.
namespace sigma_one {
double f1(double rho);
double f_infty(double rho);
XiZetaMoments moments(double rho);
double v(double rho);
double h(double rho);
}  // namespace sigma_one

/// A moment of T that is either a finite number or +inf.
/// Reading value() from an infinite moment throws RegimeError.
class MomentValue {
 public:
  static MomentValue finite(double v) { return MomentValue(v, true); }
  static MomentValue infinite() { return MomentValue(0.0, false); }

  bool is_finite() const { return finite_; }
  double value() const;
  /// The value, or +inf for an infinite moment.
  double or_inf() const;

 private:
  MomentValue(double v, bool finite) : value_(v), finite_(finite) {}
  double value_;
  bool finite_;
};

struct TMoments {
  MomentValue e_t;
  MomentValue e_t2;
  MomentValue e_t4;
};

/// Moments of T for the t mixing law with nu degrees of freedom.
/// E T exists for nu > 1, E T^2 for nu > 2, E T^4 for nu > 4.
TMoments t_moments(double nu);
TMoments t_moments(const Mixing& mixing);

/// V / H^4 * E T^2 / (E T)^2, i.e. n Var(g_n) to first order.
/// Throws RegimeError when E T^2 is infinite (e.g. nu <= 2).
double asymptotic_nvar_gmm(const EllipticalModel& model);

/// Var(g_n) ~ asymptotic_nvar_gmm / n.
double asy_var_gmm(const EllipticalModel& model, std::int64_t n);

/// Limiting variance of (n / log n)^{1/2} (g_n - f_infty) under t mixing with nu = 2:
/// (V / H^4) (4 / pi^2). Throws RegimeError for any other mixing law.
double log_rate_var_gmm(const EllipticalModel& model);

/// Correlation estimate obtained by inverting f_infty at sigma = 1.
double rho_hat_g(double g);

/// Var(rho_hat_g) to first order in 1/n. Defined for sigma = 1 only.
double asy_var_rho_g(const EllipticalModel& model, std::int64_t n);

/// Same quantity through the delta method: [8 (1 - f) / (1 + f)^3]^2 Var(g_n).
double asy_var_rho_g_delta(const EllipticalModel& model, std::int64_t n);

/// E T^4 / (2 (E T^2)^2); equals 1 for Gaussian mixing.
double cosine_variance_factor(const Mixing& mixing);

/// Var(cosine) ~ cosine_variance_factor * (1 - rho^2)^2 / n. Requires E T^4 < inf.
double asy_var_rho_c(const Mixing& mixing, double rho, std::int64_t n);

/// P(T > t) for the t mixing law: (1 + t^2 / nu)^{-nu/2}.
double t_survival(double nu, double t);

/// t P(T > t) / E min(T, t). Tends to 0 iff the max of iid T's is negligible
/// against their sum.
double tail_ratio(double nu, double t);

/// Integrals over the angle theta ~ U(-pi, pi] evaluated numerically from
/// the positive/negative parts of cos(theta - 2 alpha) and sigma cos(theta).
enum class Functional { e_xi, e_zeta, e_xi2, e_zeta2, e_xizeta, mu_1 };

/// Adaptive quadrature with the integrand split at its kinks; absolute error <= 1e-9.
double quadrature_oracle(const EllipticalModel& model, Functional functional);

}  // namespace gmmlab::theory
