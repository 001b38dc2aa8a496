#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "gmmlab/error.hpp"
#include "gmmlab/quadrature.hpp"
#include "gmmlab/theory.hpp"

namespace gmmlab::theory {
namespace {

using std::numbers::pi;

double wrap_angle(double theta) {
  while (theta <= -pi) theta += 2.0 * pi;
  while (theta > pi) theta -= 2.0 * pi;
  return theta;
}

struct MinMax {
  double xi;
  double zeta;
};

// Per-angle min and max functionals of X = cos(theta - 2a), Y = sigma cos(theta).
MinMax min_max(double theta, double two_alpha, double sigma) {
  const double x = std::cos(theta - two_alpha);
  const double y = sigma * std::cos(theta);
  const double xp = std::max(x, 0.0);
  const double xn = std::max(-x, 0.0);
  const double yp = std::max(y, 0.0);
  const double yn = std::max(-y, 0.0);
  return {std::min(xp, yp) + std::min(xn, yn), std::max(xp, yp) + std::max(xn, yn)};
}

}  // namespace

double quadrature_oracle(const EllipticalModel& model, Functional functional) {
  validate(model);
  // Only alpha and the crossing angle are taken from the geometry; the
  // integrand itself never touches a closed form.
  const GeometryParams g = geometry(model);
  const double two_alpha = 2.0 * g.alpha;
  const double sigma = model.sigma;

  // Kinks: zeros of X and Y, and the angles where X = Y.
  const std::array<double, 9> raw = {-pi / 2,       pi / 2,         two_alpha - pi / 2,
                                     two_alpha + pi / 2, g.tau,     g.tau - pi,
                                     g.tau + pi,    two_alpha - g.tau, two_alpha - g.tau + pi};
  std::vector<double> cuts;
  for (double c : raw) cuts.push_back(wrap_angle(c));

  auto integrand = [&](double theta) {
    const MinMax m = min_max(theta, two_alpha, sigma);
    switch (functional) {
      case Functional::e_xi:
        return m.xi;
      case Functional::e_zeta:
        return m.zeta;
      case Functional::e_xi2:
        return m.xi * m.xi;
      case Functional::e_zeta2:
        return m.zeta * m.zeta;
      case Functional::e_xizeta:
        return m.xi * m.zeta;
      case Functional::mu_1:
        return m.zeta > 0.0 ? m.xi / m.zeta : 0.0;
    }
    return 0.0;
  };
  return quadrature::integrate_piecewise(integrand, -pi, pi, cuts, 1e-11) / (2.0 * pi);
}

double t_survival(double nu, double t) {
  if (!(nu > 0.0)) throw InputError("nu must be positive");
  if (t <= 0.0) return 1.0;
  // T^2 = 2 F_{2,nu} and P(F_{2,nu} > f) = (1 + 2 f / nu)^{-nu/2}.
  return std::exp(-0.5 * nu * std::log1p(t * t / nu));
}

double tail_ratio(double nu, double t) {
  if (!(nu > 0.0)) throw InputError("nu must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("t must be finite and positive");
  // E min(T, t) = int_0^t P(T > x) dx. The integrand changes scale around
  // sqrt(nu), then decays as a power law, so cut on a geometric grid.
  std::vector<double> cuts;
  for (double c = 1e-2 * std::sqrt(nu); c < t; c *= 4.0) cuts.push_back(c);
  auto survival = [nu](double x) { return t_survival(nu, x); };
  const double e_min = quadrature::integrate_piecewise(survival, 0.0, t, cuts, 1e-12);
  return t * t_survival(nu, t) / e_min;
}

}  // namespace gmmlab::theory
