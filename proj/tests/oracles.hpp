#pragma once

// Test-only reference computations, independent of the library code paths
// they check.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using hp = boost::multiprecision::cpp_bin_float_50;

/// Coherent amplitudes exp(-|alpha|^2/2) alpha^n / sqrt(n!) in 50-digit
/// arithmetic by direct power and factorial products.
inline std::vector<std::complex<double>> coherent_amplitudes(std::complex<double> alpha, int dim) {
  const hp re = alpha.real();
  const hp im = alpha.imag();
  const hp pref = exp(-(re * re + im * im) / 2);
  std::vector<std::complex<double>> out;
  hp pr = 1;
  hp pi = 0;
  hp fact = 1;
  for (int n = 0; n < dim; ++n) {
    if (n > 0) {
      const hp nr = pr * re - pi * im;
      const hp ni = pr * im + pi * re;
      pr = nr;
      pi = ni;
      fact *= n;
    }
    const hp scale = pref / sqrt(fact);
    out.emplace_back(static_cast<double>(pr * scale), static_cast<double>(pi * scale));
  }
  return out;
}

/// Poisson probabilities e^{-lambda} lambda^n / n! in 50-digit arithmetic.
inline std::vector<double> poisson(double lambda_d, int count) {
  const hp lambda = lambda_d;
  std::vector<double> out;
  hp term = exp(-lambda);
  for (int n = 0; n < count; ++n) {
    if (n > 0) term = term * lambda / n;
    out.push_back(static_cast<double>(term));
  }
  return out;
}

/// phi_n(x) from the physicists' Hermite polynomial in high precision:
/// H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)). Fine for moderate n.
inline double hermite_function(int n, double x_d) {
  const hp x = x_d;
  hp h0 = 1;
  hp h1 = 2 * x;
  hp hn = n == 0 ? h0 : h1;
  for (int k = 2; k <= n; ++k) {
    hn = 2 * x * h1 - 2 * (k - 1) * h0;
    h0 = h1;
    h1 = hn;
  }
  hp norm = sqrt(boost::math::constants::pi<hp>());
  for (int k = 1; k <= n; ++k) norm *= 2 * k;
  return static_cast<double>(hn * exp(-x * x / 2) / sqrt(norm));
}

/// Composite trapezoid rule for f on [a, b] with `points` nodes.
template <typename F>
double trapezoid(F f, double a, double b, int points) {
  const double h = (b - a) / (points - 1);
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i + 1 < points; ++i) sum += f(a + i * h);
  return sum * h;
}

/// Random complex alpha with |alpha| <= r_max, fixed seed for reproducibility.
struct AlphaGen {
  std::mt19937_64 rng;
  double r_max;
  explicit AlphaGen(double r, unsigned long long seed = 20261015ULL) : rng(seed), r_max(r) {}
  std::complex<double> operator()() {
    std::uniform_real_distribution<double> rad(0.0, r_max);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    return std::polar(rad(rng), ang(rng));
  }
};

}  // namespace oracle
