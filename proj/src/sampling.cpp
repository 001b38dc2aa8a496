#include "gmmlab/sampling.hpp"

#include <cmath>
#include <numbers>
#include <variant>

#include "gmmlab/error.hpp"

namespace gmmlab::sampling {
namespace {

using std::numbers::pi;

template <class DrawT>
void fill(const MixingMatrix& m, std::span<double> x, std::span<double> y, Rng& rng, DrawT draw_t) {
  const double a11 = m.a[0][0], a12 = m.a[0][1], a21 = m.a[1][0], a22 = m.a[1][1];
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double theta = sample_uniform_angle(rng);
    const double t = draw_t(rng);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    x[i] = (a11 * c + a12 * s) * t;
    y[i] = (a21 * c + a22 * s) * t;
  }
}

}  // namespace

MixingMatrix mixing_matrix(const EllipticalModel& model) {
  validate(model);
  // Half-angle roots give exact zeros at rho = +-1.
  const double sin_a = std::sqrt(0.5 * (1.0 - model.rho));
  const double cos_a = std::sqrt(0.5 * (1.0 + model.rho));
  return {{{{cos_a, sin_a}, {model.sigma * cos_a, -model.sigma * sin_a}}}};
}

double sample_uniform_angle(Rng& rng) { return pi - 2.0 * pi * rng.uniform(); }

double sample_standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double sample_gamma(double shape, Rng& rng) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw InputError("gamma shape must be finite and positive");
  if (shape < 1.0) {
    const double boost = std::pow(rng.uniform_open(), 1.0 / shape);
    return sample_gamma(shape + 1.0, rng) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = sample_standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_chi2(double df, Rng& rng) {
  if (!(df > 0.0)) throw InputError("chi-square degrees of freedom must be positive");
  return 2.0 * sample_gamma(0.5 * df, rng);
}

double sample_mixing_t(const Mixing& mixing, Rng& rng) {
  if (const auto* st = std::get_if<StudentTMixing>(&mixing)) {
    // chi^2_2 is exponential with mean 2.
    const double numerator = -2.0 * std::log(rng.uniform_open());
    return std::sqrt(numerator * st->nu / sample_chi2(st->nu, rng));
  }
  if (std::holds_alternative<GaussianMixing>(mixing)) return std::sqrt(-2.0 * std::log(rng.uniform_open()));
  return 1.0;
}

void sample_pair_into(const EllipticalModel& model, std::span<double> x, std::span<double> y, Rng& rng) {
  if (x.size() != y.size()) throw InputError("x and y buffers differ in length");
  const MixingMatrix m = mixing_matrix(model);
  fill(m, x, y, rng, [&model](Rng& r) { return sample_mixing_t(model.mixing, r); });
}

PairedSample sample_pair(const EllipticalModel& model, std::size_t n, Rng& rng) {
  if (n < 1) throw InputError("sample size must be >= 1");
  PairedSample s{std::vector<double>(n), std::vector<double>(n)};
  sample_pair_into(model, s.x, s.y, rng);
  return s;
}

}  // namespace gmmlab::sampling
