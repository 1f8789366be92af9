#pragma once

// Quadrature moments, photon statistics and normally ordered moments.

#include "catstate/fock_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace catstate {

struct UncertaintyReport {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double product = 0.0;
};

struct PhotonDistribution {
  std::vector<double> probabilities;

  double mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < probabilities.size(); ++n) m += static_cast<double>(n) * probabilities[n];
    return m;
  }
};

namespace detail {

inline void require_normalized(const FockState& s, const char* who) {
  const double dev = std::abs(s.norm_squared() - 1.0);
  if (dev > 1e-6) {
    throw std::invalid_argument(std::string(who) + ": state is not normalized (|<s|s> - 1| = " +
                                std::to_string(dev) + ")");
  }
}

}  // namespace detail

/// Means and variances of x = (a + a^dagger)/sqrt(2) and
/// p = (a - a^dagger)/(i sqrt(2)), exact on the truncated space:
/// <X^2> is taken as ||X psi||^2 with the truncated X.
inline UncertaintyReport quadrature_expectations(const FockState& s) {
  detail::require_normalized(s, "quadrature_expectations");
  const Vector& psi = s.amplitudes();
  const Vector lo = lower(psi);
  const Vector hi = raise(psi);
  const double r2 = std::numbers::sqrt2;
  const Vector xpsi = (lo + hi) / r2;
  const Vector ppsi = (lo - hi) / cplx(0.0, r2);

  UncertaintyReport r;
  r.mean_x = psi.dot(xpsi).real();
  r.mean_p = psi.dot(ppsi).real();
  r.var_x = std::max(0.0, xpsi.squaredNorm() - r.mean_x * r.mean_x);
  r.var_p = std::max(0.0, ppsi.squaredNorm() - r.mean_p * r.mean_p);
  r.product = r.var_x * r.var_p;
  return r;
}

/// p_n = |c_n|^2.
inline PhotonDistribution photon_distribution(const FockState& s) {
  detail::require_normalized(s, "photon_distribution");
  PhotonDistribution d;
  d.probabilities.resize(s.dim());
  for (std::size_t n = 0; n < s.dim(); ++n) d.probabilities[n] = std::norm(s[n]);
  return d;
}

/// <(a^dagger)^m a^n> = <a^m psi | a^n psi>. Requires m + n < dim; beyond
/// that the result is dominated by the truncation edge.
inline cplx normally_ordered_moment(const FockState& s, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("normally_ordered_moment: orders must be >= 0");
  if (static_cast<std::size_t>(m + n) >= s.dim()) {
    throw std::invalid_argument("normally_ordered_moment: order m+n=" + std::to_string(m + n) +
                                " too high for dimension " + std::to_string(s.dim()));
  }
  Vector left = s.amplitudes();
  Vector right = s.amplitudes();
  for (int k = 0; k < m; ++k) left = lower(left);
  for (int k = 0; k < n; ++k) right = lower(right);
  return left.dot(right);
}

/// Zero-delay second-order coherence <a^dag a^dag a a> / <a^dag a>^2.
inline double g2_zero(const FockState& s) {
  const double mean_n = normally_ordered_moment(s, 1, 1).real();
  if (!(mean_n > 1e-12)) {
    throw std::domain_error("g2_zero: <a^dagger a> vanishes, ratio undefined");
  }
  return normally_ordered_moment(s, 2, 2).real() / (mean_n * mean_n);
}

}  // namespace catstate
