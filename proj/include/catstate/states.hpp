#pragma once

// Coherent, number and even/odd cat states; phase-space <-> alpha mapping;
// position-space wavefunctions from Fock sums and from closed forms.

#include "catstate/fock_core.hpp"
#include "catstate/hermite.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace catstate {

/// Complex coherent-state label.
using Alpha = cplx;

/// Position and momentum expectations.
struct PhaseSpacePoint {
  double x0 = 0.0;
  double p0 = 0.0;
};

/// Oscillator constants for the alpha <-> (x, p) conversion. Everything
/// else in the library is in natural units.
struct PhysicalUnits {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
};

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// Uniform grid of n_points samples on [x_min, x_max], both ends included.
struct PositionGrid {
  double x_min = -8.0;
  double x_max = 8.0;
  int n_points = 241;

  void validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
      throw std::invalid_argument("position grid needs finite x_min < x_max");
    }
    if (n_points < 2) throw std::invalid_argument("position grid needs n_points >= 2");
  }

  std::size_t size() const { return static_cast<std::size_t>(n_points); }
  double spacing() const { return (x_max - x_min) / (n_points - 1); }

  // Written as a weighted mean so symmetric grids are bitwise symmetric.
  double coordinate(std::size_t i) const {
    const double last = n_points - 1;
    const double id = static_cast<double>(i);
    return (x_min * (last - id) + x_max * id) / last;
  }

  std::vector<double> points() const {
    std::vector<double> xs(size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = coordinate(i);
    return xs;
  }
};

/// Raised when a requested truncation cannot hold the state.
class TruncationError : public std::invalid_argument {
 public:
  TruncationError(const std::string& what, std::size_t required)
      : std::invalid_argument(what), required_(required) {}
  std::size_t required_dimension() const { return required_; }

 private:
  std::size_t required_;
};

// ---------------------------------------------------------------------------
// Phase space

inline Alpha alpha_from_phase_space(PhaseSpacePoint pt, PhysicalUnits u = {}) {
  if (!(u.mass > 0.0) || !(u.omega > 0.0) || !(u.hbar > 0.0)) {
    throw std::invalid_argument("mass, omega and hbar must be positive");
  }
  const double re = pt.x0 * std::sqrt(u.mass * u.omega / (2.0 * u.hbar));
  const double im = pt.p0 * std::sqrt(1.0 / (2.0 * u.mass * u.omega * u.hbar));
  return {re, im};
}

inline PhaseSpacePoint phase_space_from_alpha(Alpha alpha, PhysicalUnits u = {}) {
  if (!(u.mass > 0.0) || !(u.omega > 0.0) || !(u.hbar > 0.0)) {
    throw std::invalid_argument("mass, omega and hbar must be positive");
  }
  return {alpha.real() / std::sqrt(u.mass * u.omega / (2.0 * u.hbar)),
          alpha.imag() / std::sqrt(1.0 / (2.0 * u.mass * u.omega * u.hbar))};
}

// ---------------------------------------------------------------------------
// Fock-basis constructors

inline FockState number_state(std::size_t n, std::size_t dim) {
  if (n >= dim) {
    throw std::invalid_argument("number_state: level " + std::to_string(n) +
                                " outside dimension " + std::to_string(dim));
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(n)] = 1.0;
  return FockState(std::move(v));
}

namespace detail {

// alpha^k / sqrt(k!) * exp(log_norm), evaluated through logs so large
// |alpha| neither overflows alpha^k nor underflows the prefactor.
inline cplx scaled_power(Alpha alpha, std::size_t k, double log_norm) {
  if (k == 0) return std::exp(log_norm);
  const double r = std::abs(alpha);
  if (r == 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  const double mag = std::exp(kd * std::log(r) - 0.5 * std::lgamma(kd + 1.0) + log_norm);
  return std::polar(mag, kd * std::arg(alpha));
}

inline double log_cosh(double v) { return v + std::log1p(std::exp(-2.0 * v)) - std::numbers::ln2; }
inline double log_sinh(double v) { return v + std::log1p(-std::exp(-2.0 * v)) - std::numbers::ln2; }

inline double cat_log_norm(double lambda, Parity parity) {
  return parity == Parity::even ? log_cosh(lambda) : log_sinh(lambda);
}

}  // namespace detail

/// c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), no renormalization.
/// Throws TruncationError if the Poisson tail at `dim` exceeds tol.norm.
inline FockState coherent_state(Alpha alpha, std::size_t dim, const Tolerances& tol = {}) {
  if (dim < 1) throw std::invalid_argument("coherent_state: dimension must be >= 1");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw std::invalid_argument("coherent_state: alpha must be finite");
  }
  if (coherent_tail(alpha, dim) >= tol.norm) {
    const std::size_t need = coherent_min_dimension(alpha, tol);
    throw TruncationError("coherent_state: dimension " + std::to_string(dim) +
                              " too small for |alpha|=" + std::to_string(std::abs(alpha)) +
                              "; need at least " + std::to_string(need),
                          need);
  }
  const double log_norm = -0.5 * std::norm(alpha);
  Vector v(static_cast<Eigen::Index>(dim));
  for (std::size_t n = 0; n < dim; ++n) {
    v[static_cast<Eigen::Index>(n)] = detail::scaled_power(alpha, n, log_norm);
  }
  return FockState(std::move(v));
}

inline FockState coherent_state(Alpha alpha, const Tolerances& tol = {}) {
  return coherent_state(alpha, auto_dimension(alpha, tol), tol);
}

/// D(alpha) = exp(alpha a^dagger - conj(alpha) a), built at dim + pad and
/// projected to dim (the top rows of a truncated exponent are wrong).
inline FockOperator displacement_operator(Alpha alpha, std::size_t dim, const Tolerances& tol = {}) {
  tol.validate();
  const std::size_t big = dim + static_cast<std::size_t>(tol.pad);
  const FockOperator a = lowering_matrix(big);
  const FockOperator gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return matrix_exponential(gen).project(dim);
}

/// D(alpha)|0>, projected to dim.
inline FockState coherent_via_displacement(Alpha alpha, std::size_t dim, const Tolerances& tol = {}) {
  tol.validate();
  if (dim < 1) throw std::invalid_argument("coherent_via_displacement: dimension must be >= 1");
  const std::size_t big = dim + static_cast<std::size_t>(tol.pad);
  const FockOperator a = lowering_matrix(big);
  const FockOperator u = matrix_exponential(alpha * a.adjoint() - std::conj(alpha) * a);
  return FockState(u.matrix().col(0).head(static_cast<Eigen::Index>(dim)));
}

/// Probability mass of the cat state above level n-1.
inline double cat_tail(Alpha alpha, Parity parity, std::size_t n) {
  const double lambda = std::norm(alpha);
  if (lambda == 0.0) return parity == Parity::even && n == 0 ? 1.0 : 0.0;
  const double log_norm = detail::cat_log_norm(lambda, parity);
  const auto top = static_cast<std::size_t>(lambda + 12.0 * std::sqrt(lambda + 1.0) + 60.0);
  const std::size_t start = parity == Parity::even ? 0 : 1;
  double tail = 0.0;
  for (std::size_t k = std::max(top, n) + 2; k-- > n;) {
    if (k % 2 != start) continue;
    const double kd = static_cast<double>(k);
    tail += std::exp(kd * std::log(lambda) - std::lgamma(kd + 1.0) - log_norm);
  }
  return tail;
}

inline std::size_t cat_min_dimension(Alpha alpha, Parity parity, const Tolerances& tol = {}) {
  const double lambda = std::norm(alpha);
  if (lambda == 0.0) return parity == Parity::even ? 1 : 2;
  const double log_norm = detail::cat_log_norm(lambda, parity);
  const std::size_t start = parity == Parity::even ? 0 : 1;
  return detail::minimal_tail_dimension(
      [&](std::size_t k) {
        if (k % 2 != start) return -std::numeric_limits<double>::infinity();
        const double kd = static_cast<double>(k);
        return kd * std::log(lambda) - std::lgamma(kd + 1.0) - log_norm;
      },
      lambda, tol.norm);
}

inline std::size_t cat_auto_dimension(Alpha alpha, Parity parity, const Tolerances& tol = {}) {
  tol.validate();
  return cat_min_dimension(alpha, parity, tol) + static_cast<std::size_t>(tol.pad);
}

/// Even: c_{2n} = alpha^{2n}/sqrt((2n)!) / sqrt(cosh|alpha|^2).
/// Odd:  c_{2n+1} = alpha^{2n+1}/sqrt((2n+1)!) / sqrt(sinh|alpha|^2).
/// The odd state at alpha = 0 is undefined and rejected.
inline FockState cat_state(Alpha alpha, Parity parity, std::size_t dim, const Tolerances& tol = {}) {
  if (dim < 1) throw std::invalid_argument("cat_state: dimension must be >= 1");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw std::invalid_argument("cat_state: alpha must be finite");
  }
  const double lambda = std::norm(alpha);
  if (parity == Parity::odd && lambda == 0.0) {
    throw std::domain_error("cat_state: odd cat state is undefined at alpha = 0 (sinh 0 = 0)");
  }
  if (cat_tail(alpha, parity, dim) >= tol.norm) {
    const std::size_t need = cat_min_dimension(alpha, parity, tol);
    throw TruncationError("cat_state: dimension " + std::to_string(dim) +
                              " too small for |alpha|=" + std::to_string(std::abs(alpha)) +
                              "; need at least " + std::to_string(need),
                          need);
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  if (lambda == 0.0) {
    v[0] = 1.0;
    return FockState(std::move(v));
  }
  const double log_norm = -0.5 * detail::cat_log_norm(lambda, parity);
  for (std::size_t n = parity == Parity::even ? 0 : 1; n < dim; n += 2) {
    v[static_cast<Eigen::Index>(n)] = detail::scaled_power(alpha, n, log_norm);
  }
  return FockState(std::move(v));
}

inline FockState cat_state(Alpha alpha, Parity parity, const Tolerances& tol = {}) {
  return cat_state(alpha, parity, cat_auto_dimension(alpha, parity, tol), tol);
}

// ---------------------------------------------------------------------------
// Position space

/// psi(x_i) = sum_n c_n phi_n(x_i).
inline std::vector<cplx> position_wavefunction(const FockState& s, const PositionGrid& grid) {
  grid.validate();
  const int n_max = static_cast<int>(s.dim()) - 1;
  std::vector<cplx> psi(grid.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const auto phi = hermite_functions(grid.coordinate(i), n_max);
    cplx acc = 0.0;
    for (std::size_t n = 0; n < phi.size(); ++n) acc += s[n] * phi[n];
    psi[i] = acc;
  }
  return psi;
}

/// Minimum-uncertainty Gaussian with ground-state width (Delta x^2 = 1/2):
/// pi^{-1/4} exp(-(x - x0)^2 / 2 + i p0 x).
inline std::vector<cplx> gaussian_wavefunction(PhaseSpacePoint pt, const PositionGrid& grid) {
  grid.validate();
  const double dx2 = 0.5;
  const double pref = std::pow(2.0 * std::numbers::pi * dx2, -0.25);
  std::vector<cplx> psi(grid.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double x = grid.coordinate(i);
    const double z = (x - pt.x0) / (2.0 * std::sqrt(dx2));
    psi[i] = pref * std::exp(cplx(-z * z, pt.p0 * x));
  }
  return psi;
}

/// Closed-form even/odd cat wavefunction, including the exp(-2i x0 p0)
/// prefactor and the 1 +- exp(-(x0^2 + p0^2)) normalization verbatim.
inline std::vector<cplx> cat_wavefunction_closed(PhaseSpacePoint pt, Parity parity,
                                                 const PositionGrid& grid) {
  grid.validate();
  const double sign = parity == Parity::even ? 1.0 : -1.0;
  const double overlap = std::exp(-(pt.x0 * pt.x0 + pt.p0 * pt.p0));
  const double denom_sq = 1.0 + sign * overlap;
  if (!(denom_sq > 0.0)) {
    throw std::domain_error("cat_wavefunction_closed: odd combination vanishes at x0 = p0 = 0");
  }
  const double denom = std::sqrt(2.0) * std::pow(std::numbers::pi, 0.25) * std::sqrt(denom_sq);
  const cplx prefactor = std::polar(1.0, -2.0 * pt.x0 * pt.p0);
  std::vector<cplx> psi(grid.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double x = grid.coordinate(i);
    const double dm = x - pt.x0;
    const double dp = x + pt.x0;
    const cplx left = std::exp(cplx(-0.5 * dm * dm, pt.p0 * x));
    const cplx right = std::exp(cplx(-0.5 * dp * dp, -pt.p0 * x));
    psi[i] = prefactor * (left + sign * right) / denom;
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Comparison helpers

/// sup_i |a_i - e^{i phi} b_i|, with phi aligning the largest-magnitude
/// sample of `a`. Wavefunctions are rays, so cross-form comparisons go
/// through this.
inline double max_deviation_up_to_phase(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sample count mismatch");
  if (a.empty()) return 0.0;
  std::size_t k = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (std::abs(a[i]) > std::abs(a[k])) k = i;
  }
  cplx phase = 1.0;
  if (std::abs(b[k]) > 0.0 && std::abs(a[k]) > 0.0) {
    phase = (a[k] / std::abs(a[k])) / (b[k] / std::abs(b[k]));
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - phase * b[i]));
  return dev;
}

/// Trapezoidal integral of samples on a uniform grid.
inline double trapezoid(std::span<const double> f, const PositionGrid& grid) {
  if (f.size() != grid.size()) throw std::invalid_argument("trapezoid: sample count mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    sum += w * f[i];
  }
  return sum * grid.spacing();
}

inline double quadrature_norm(std::span<const cplx> psi, const PositionGrid& grid) {
  std::vector<double> dens(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) dens[i] = std::norm(psi[i]);
  return trapezoid(dens, grid);
}

}  // namespace catstate
