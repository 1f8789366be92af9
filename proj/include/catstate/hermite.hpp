#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace catstate {

/// Orthonormal oscillator eigenfunctions phi_0(x) ... phi_{n_max}(x).
///
/// Uses the normalized three-term recurrence
///   phi_n = sqrt(2/n) x phi_{n-1} - sqrt((n-1)/n) phi_{n-2}
/// so no Hermite polynomial is ever formed (those overflow near n ~ 150).
/// The Gaussian factor exp(-x^2/2) is carried as a running log-scale rather
/// than multiplied in up front, which keeps the high-n values at large |x|
/// from underflowing before the polynomial growth catches up. Values whose
/// true magnitude is below the smallest double still come out as zero.
inline std::vector<double> hermite_functions(double x, int n_max) {
  if (n_max < 0) throw std::invalid_argument("hermite_functions: n_max must be >= 0");
  constexpr double rescale_above = 1e150;
  const double log_rescale = std::log(rescale_above);
  const double pi_quarter = std::pow(std::numbers::pi, -0.25);

  // Only fall back to log arithmetic when the scale itself leaves double range.
  const auto scaled = [](double v, double log_s) {
    if (log_s > -700.0 || v == 0.0) return v * std::exp(log_s);
    return std::copysign(std::exp(std::log(std::abs(v)) + log_s), v);
  };

  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  double log_scale = -0.5 * x * x;
  double prev = 0.0;
  double cur = pi_quarter;
  out[0] = scaled(cur, log_scale);
  for (int n = 1; n <= n_max; ++n) {
    const double nd = n;
    const double next = std::sqrt(2.0 / nd) * x * cur - std::sqrt((nd - 1.0) / nd) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > rescale_above) {
      cur /= rescale_above;
      prev /= rescale_above;
      log_scale += log_rescale;
    }
    out[static_cast<std::size_t>(n)] = scaled(cur, log_scale);
  }
  return out;
}

}  // namespace catstate
