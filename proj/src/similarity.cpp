#include "gmmlab/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmmlab/error.hpp"

namespace gmmlab {
namespace {

void check_finite(std::span<const double> v, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InputError(std::string(name) + "[" + std::to_string(i) + "] is not finite");
    }
  }
}

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.empty()) throw InputError("sample must have at least one observation");
  if (x.size() != y.size()) {
    throw InputError("x and y differ in length (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  check_finite(x, "x");
  check_finite(y, "y");
}

}  // namespace

SignedDecomposition decompose(std::span<const double> x) {
  check_finite(x, "x");
  SignedDecomposition d;
  d.pos.reserve(x.size());
  d.neg.reserve(x.size());
  for (double v : x) {
    d.pos.push_back(v > 0.0 ? v : 0.0);
    d.neg.push_back(v < 0.0 ? -v : 0.0);
  }
  return d;
}

double gmm(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xp = x[i] > 0.0 ? x[i] : 0.0;
    const double xn = x[i] < 0.0 ? -x[i] : 0.0;
    const double yp = y[i] > 0.0 ? y[i] : 0.0;
    const double yn = y[i] < 0.0 ? -y[i] : 0.0;
    num += std::min(xp, yp) + std::min(xn, yn);
    den += std::max(xp, yp) + std::max(xn, yn);
  }
  if (!(den > 0.0)) throw DegenerateInputError("GMM undefined: both vectors are identically zero");
  return num / den;
}

double gmm(const PairedSample& s) { return gmm(s.x, s.y); }

double cosine(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateInputError("cosine undefined: zero-norm vector");
  // Rounding can push |c| a few ulps past 1.
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

double cosine(const PairedSample& s) { return cosine(s.x, s.y); }

}  // namespace gmmlab
