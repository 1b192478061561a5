#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace perfro {

/// Mixed absolute/relative comparison policy shared by every check.
///
/// Two scalars a and b are tolerance-equal when
/// |a - b| <= abs_eps + rel_eps * max(|a|, |b|).
class Tolerance {
 public:
  static constexpr double kDefaultAbs = 1e-9;
  static constexpr double kDefaultRel = 1e-9;

  constexpr Tolerance() = default;
  Tolerance(double abs_eps, double rel_eps) : abs_eps_(abs_eps), rel_eps_(rel_eps) {
    if (!(abs_eps >= 0.0) || !(rel_eps >= 0.0)) {
      throw std::invalid_argument("tolerance components must be nonnegative");
    }
  }

  constexpr double abs_eps() const noexcept { return abs_eps_; }
  constexpr double rel_eps() const noexcept { return rel_eps_; }

  /// Allowed deviation for quantities of magnitude `scale`.
  double threshold(double scale) const noexcept {
    return abs_eps_ + rel_eps_ * std::abs(scale);
  }

  bool equal(std::complex<double> a, std::complex<double> b) const noexcept {
    return std::abs(a - b) <= threshold(std::max(std::abs(a), std::abs(b)));
  }

 private:
  double abs_eps_ = kDefaultAbs;
  double rel_eps_ = kDefaultRel;
};

}  // namespace perfro
