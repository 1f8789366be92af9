#pragma once

// Free harmonic-oscillator evolution and rho(x, t) density surfaces.

#include "catstate/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace catstate {

/// n_steps uniformly spaced sample times on [t_min, t_max], both ends
/// included. A single step samples t_min only.
struct TimeGrid {
  double t_min = 0.0;
  double t_max = 2.0 * std::numbers::pi;
  int n_steps = 129;

  void validate() const {
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || t_min > t_max) {
      throw std::invalid_argument("time grid needs finite t_min <= t_max");
    }
    if (n_steps < 1) throw std::invalid_argument("time grid needs n_steps >= 1");
  }

  std::size_t size() const { return static_cast<std::size_t>(n_steps); }
  double spacing() const { return n_steps > 1 ? (t_max - t_min) / (n_steps - 1) : 0.0; }

  double time(std::size_t j) const {
    if (n_steps == 1) return t_min;
    const double last = n_steps - 1;
    const double jd = static_cast<double>(j);
    return (t_min * (last - jd) + t_max * jd) / last;
  }

  std::size_t nearest_index(double t) const {
    if (n_steps == 1) return 0;
    const double j = std::round((t - t_min) / spacing());
    return static_cast<std::size_t>(std::clamp(j, 0.0, static_cast<double>(n_steps - 1)));
  }
};

/// c_n -> exp(-i (n + 1/2) t) c_n. The zero-point half is a global phase.
inline FockState evolve(const FockState& s, double t) {
  Vector v = s.amplitudes();
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    v[n] *= std::polar(1.0, -(static_cast<double>(n) + 0.5) * t);
  }
  return FockState(std::move(v));
}

/// (<x>(t), <p>(t)) of |alpha e^{-it}> in natural units.
inline PhaseSpacePoint classical_trajectory(Alpha alpha, double t) {
  return phase_space_from_alpha(alpha * std::polar(1.0, -t));
}

/// rho(x_i, t_j), stored row-major by time slice.
class DensitySurface {
 public:
  DensitySurface(PositionGrid xg, TimeGrid tg, std::vector<double> values)
      : xg_(xg), tg_(tg), values_(std::move(values)) {
    if (values_.size() != xg_.size() * tg_.size()) {
      throw std::invalid_argument("density surface value count does not match grids");
    }
  }

  const PositionGrid& x_grid() const { return xg_; }
  const TimeGrid& t_grid() const { return tg_; }

  double at(std::size_t ix, std::size_t jt) const { return values_[jt * xg_.size() + ix]; }

  std::span<const double> slice(std::size_t jt) const {
    return std::span<const double>(values_).subspan(jt * xg_.size(), xg_.size());
  }
  std::span<const double> values() const { return values_; }

  double slice_norm(std::size_t jt) const { return trapezoid(slice(jt), xg_); }

 private:
  PositionGrid xg_;
  TimeGrid tg_;
  std::vector<double> values_;
};

/// rho(x_i, t_j) = |sum_n c_n e^{-i(n+1/2)t_j} phi_n(x_i)|^2.
///
/// The Hermite table is built once and reused for every slice. Each value
/// depends only on its own (i, j), so a parallel schedule over slices would
/// reproduce these bits exactly.
inline DensitySurface density_surface(const FockState& s, const PositionGrid& xg, const TimeGrid& tg) {
  xg.validate();
  tg.validate();
  const std::size_t nx = xg.size();
  const std::size_t dim = s.dim();
  std::vector<double> table(nx * dim);
  for (std::size_t i = 0; i < nx; ++i) {
    const auto phi = hermite_functions(xg.coordinate(i), static_cast<int>(dim) - 1);
    std::copy(phi.begin(), phi.end(), table.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }

  std::vector<double> values(nx * tg.size());
  for (std::size_t j = 0; j < tg.size(); ++j) {
    const FockState st = evolve(s, tg.time(j));
    for (std::size_t i = 0; i < nx; ++i) {
      const double* phi = table.data() + i * dim;
      cplx acc = 0.0;
      for (std::size_t n = 0; n < dim; ++n) acc += st[n] * phi[n];
      values[j * nx + i] = std::norm(acc);
    }
  }
  return DensitySurface(xg, tg, std::move(values));
}

struct Peak {
  std::size_t index = 0;
  double position = 0.0;
  double height = 0.0;
};

/// Local structure of one time slice.
struct SliceFeatures {
  std::size_t slice_index = 0;
  double time = 0.0;
  std::vector<Peak> peaks;  ///< sorted by position
  std::optional<double> center_value;  ///< rho at the grid point nearest x = 0

  /// Peaks at least `fraction` of the tallest one.
  std::vector<Peak> dominant_peaks(double fraction = 0.5) const {
    double top = 0.0;
    for (const auto& p : peaks) top = std::max(top, p.height);
    std::vector<Peak> out;
    for (const auto& p : peaks) {
      if (p.height >= fraction * top) out.push_back(p);
    }
    return out;
  }
};

/// Interior local maxima of a sampled curve. A point is a peak when it
/// beats its left neighbour and is not beaten on the right; a flat run is
/// reported once, at its leftmost index, if it drops on the far side.
inline std::vector<std::size_t> local_maxima(std::span<const double> v) {
  std::vector<std::size_t> out;
  if (v.size() < 3) return out;
  std::size_t i = 1;
  while (i + 1 < v.size()) {
    if (v[i] > v[i - 1]) {
      std::size_t j = i;
      while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
      if (j + 1 < v.size() && v[j + 1] < v[i]) out.push_back(i);
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

/// Peaks and the central value of the slice nearest `t`. Maxima lower than
/// `noise_floor` times the slice maximum are rounding ripples in the far
/// tails and are dropped.
inline SliceFeatures overlap_snapshot_features(const DensitySurface& surface, double t,
                                               double noise_floor = 1e-12) {
  const TimeGrid& tg = surface.t_grid();
  if (!(t >= tg.t_min && t <= tg.t_max)) {
    throw std::out_of_range("overlap_snapshot_features: t outside the time grid");
  }
  SliceFeatures f;
  f.slice_index = tg.nearest_index(t);
  f.time = tg.time(f.slice_index);
  const auto slice = surface.slice(f.slice_index);
  const PositionGrid& xg = surface.x_grid();
  const double floor = noise_floor * *std::max_element(slice.begin(), slice.end());
  for (std::size_t i : local_maxima(slice)) {
    if (slice[i] > floor) f.peaks.push_back({i, xg.coordinate(i), slice[i]});
  }

  if (xg.x_min <= 0.0 && xg.x_max >= 0.0) {
    const auto i0 = static_cast<std::size_t>(std::round(-xg.x_min / xg.spacing()));
    f.center_value = slice[std::min(i0, xg.size() - 1)];
  }
  return f;
}

}  // namespace catstate
