#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "gmmlab/rng.hpp"
#include "gmmlab/similarity.hpp"
#include "gmmlab/theory.hpp"

namespace gmmlab::sampling {

/// A = [[cos a, sin a], [sigma cos a, -sigma sin a]], so that A A^T = Sigma.
struct MixingMatrix {
  std::array<std::array<double, 2>, 2> a;
};

MixingMatrix mixing_matrix(const EllipticalModel& model);

/// theta ~ U(-pi, pi].
double sample_uniform_angle(Rng& rng);

/// N(0, 1) by the Marsaglia polar method (one variate per call).
double sample_standard_normal(Rng& rng);

/// Gamma(shape, scale = 1) by Marsaglia-Tsang; shape < 1 uses the
/// Gamma(shape + 1) * U^{1/shape} boost.
double sample_gamma(double shape, Rng& rng);

/// chi^2 with (possibly fractional) df > 0.
double sample_chi2(double df, Rng& rng);

/// One draw of the radial factor T for the given mixing law.
double sample_mixing_t(const Mixing& mixing, Rng& rng);

/// Fills x, y with iid draws of (X, Y)^T = A (cos theta, sin theta)^T T.
/// Each observation consumes theta first, then T.
void sample_pair_into(const EllipticalModel& model, std::span<double> x, std::span<double> y, Rng& rng);

PairedSample sample_pair(const EllipticalModel& model, std::size_t n, Rng& rng);

}  // namespace gmmlab::sampling
