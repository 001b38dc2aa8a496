#pragma once

#include <cstdint>

#include "gmmlab/error.hpp"

namespace gmmlab {

/// Single-pass running mean and sample variance.
class Welford {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::int64_t count() const { return count_; }

  double mean() const {
    if (count_ < 1) throw InputError("mean of an empty stream");
    return mean_;
  }

  /// Unbiased (n - 1) variance.
  double variance() const {
    if (count_ < 2) throw InputError("variance needs at least two values");
    return m2_ / static_cast<double>(count_ - 1);
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace gmmlab
