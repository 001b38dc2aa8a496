#pragma once

#include <span>
#include <vector>

namespace gmmlab {

/// Paired observations (x_i, y_i), i = 1..n.
struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;
};

/// x = pos - neg with pos, neg >= 0 and at most one of them nonzero per entry.
struct SignedDecomposition {
  std::vector<double> pos;
  std::vector<double> neg;
};

SignedDecomposition decompose(std::span<const double> x);

// Both functions validate up front (equal nonzero length, finite entries)
// and accumulate left to right in double precision.

/// Generalized min-max similarity g_n(x, y) in [0, 1].
/// Throws DegenerateInputError when the denominator vanishes (x = y = 0).
double gmm(std::span<const double> x, std::span<const double> y);
double gmm(const PairedSample& s);

/// Cosine similarity c_n(x, y) in [-1, 1].
/// Throws DegenerateInputError when either vector has zero norm.
double cosine(std::span<const double> x, std::span<const double> y);
double cosine(const PairedSample& s);

}  // namespace gmmlab
