#pragma once

namespace gmmlab {

/// log Gamma(x) for x > 0 via the Lanczos approximation (g = 7, 9 terms).
/// Relative error below 1e-13 on [0.5, 50]. Throws InputError for x <= 0.
double log_gamma(double x);

}  // namespace gmmlab
