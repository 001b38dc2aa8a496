#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace gmmlab::quadrature {

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the embedded 7-point Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
  double kronrod;
  double gauss;
};

template <class F>
Estimate gauss_kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    k += kWgk[j] * sum;
    if (j % 2 == 1) g += kWg[j / 2] * sum;
  }
  return {k * half, g * half};
}

template <class F>
double adapt(const F& f, double a, double b, double tol, int depth) {
  const Estimate e = gauss_kronrod15(f, a, b);
  if (std::abs(e.kronrod - e.gauss) <= tol || depth >= 60 || !(b - a > 1e-15 * std::abs(a))) {
    return e.kronrod;
  }
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1) + adapt(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive 15-point Gauss-Kronrod on [a, b]. Bisects until the embedded
/// Gauss/Kronrod difference on every leaf is below its share of abs_tol.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12) {
  if (a == b) return 0.0;
  return detail::adapt(f, a, b, abs_tol, 0);
}

/// Integrates over [a, b] split at every breakpoint that falls strictly
/// inside. Place breakpoints at kinks so each piece is smooth.
template <class F>
double integrate_piecewise(const F& f, double a, double b, std::span<const double> breakpoints,
                           double abs_tol = 1e-12) {
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], piece_tol);
  }
  return total;
}

}  // namespace gmmlab::quadrature
