#pragma once

// Truncated Fock-space linear algebra: states, ladder operators, dense
// matrix exponential. Natural units (hbar = m = omega = 1) throughout.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catstate {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Numerical tolerances shared by constructors and checks.
struct Tolerances {
  double norm = 1e-12;  ///< allowed truncated probability mass
  double op = 1e-10;    ///< unitarity defect of exponentiated operators
  double eq = 1e-10;    ///< per-amplitude agreement between constructions
  int pad = 8;          ///< extra levels kept above the truncation

  void validate() const {
    if (!(norm > 0.0) || !(op > 0.0) || !(eq > 0.0)) {
      throw std::invalid_argument("tolerances must be strictly positive");
    }
    if (pad < 0) {
      throw std::invalid_argument("truncation pad must be non-negative");
    }
  }
};

/// Amplitudes c_0 ... c_{N-1} over the number states |0> ... |N-1>.
class FockState {
 public:
  explicit FockState(Vector amps) : amps_(std::move(amps)) {
    if (amps_.size() < 1) {
      throw std::invalid_argument("FockState needs dimension >= 1");
    }
  }

  static FockState zeros(std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("FockState needs dimension >= 1");
    return FockState(Vector::Zero(static_cast<Eigen::Index>(dim)));
  }

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  cplx operator[](std::size_t n) const { return amps_[static_cast<Eigen::Index>(n)]; }
  const Vector& amplitudes() const { return amps_; }

  double norm_squared() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }

 private:
  Vector amps_;
};

/// Dense N x N operator in the number basis.
class FockOperator {
 public:
  explicit FockOperator(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
      throw std::invalid_argument("FockOperator must be square with dimension >= 1");
    }
  }

  static FockOperator identity(std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    return FockOperator(Matrix::Identity(n, n));
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  cplx operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  const Matrix& matrix() const { return m_; }

  FockOperator adjoint() const { return FockOperator(m_.adjoint()); }

  /// Leading `size` x `size` block.
  FockOperator project(std::size_t size) const {
    if (size < 1 || size > dim()) throw std::invalid_argument("projection size out of range");
    auto n = static_cast<Eigen::Index>(size);
    return FockOperator(m_.topLeftCorner(n, n));
  }

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
    return FockOperator(a.m_ * b.m_);
  }
  friend FockOperator operator+(const FockOperator& a, const FockOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
    return FockOperator(a.m_ + b.m_);
  }
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
    return FockOperator(a.m_ - b.m_);
  }
  friend FockOperator operator*(cplx s, const FockOperator& a) { return FockOperator(s * a.m_); }
  FockOperator operator-() const { return FockOperator(-m_); }

 private:
  Matrix m_;
};

/// a: entry (n-1, n) = sqrt(n).
inline FockOperator lowering_matrix(std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  auto n = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return FockOperator(std::move(m));
}

inline FockOperator raising_matrix(std::size_t dim) { return lowering_matrix(dim).adjoint(); }

inline FockState apply(const FockOperator& op, const FockState& s) {
  if (op.dim() != s.dim()) {
    throw std::invalid_argument("apply: operator dimension " + std::to_string(op.dim()) +
                                " does not match state dimension " + std::to_string(s.dim()));
  }
  return FockState(op.matrix() * s.amplitudes());
}

/// <s1|s2>, antilinear in the first argument.
inline cplx inner_product(const FockState& s1, const FockState& s2) {
  if (s1.dim() != s2.dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch (" + std::to_string(s1.dim()) +
                                " vs " + std::to_string(s2.dim()) + ")");
  }
  return s1.amplitudes().dot(s2.amplitudes());
}

// Ladder actions on amplitude vectors, O(N) without building matrices.
inline Vector lower(const Vector& v) {
  Vector out = Vector::Zero(v.size());
  for (Eigen::Index k = 1; k < v.size(); ++k) out[k - 1] = std::sqrt(static_cast<double>(k)) * v[k];
  return out;
}

inline Vector raise(const Vector& v) {
  Vector out = Vector::Zero(v.size());
  for (Eigen::Index k = 0; k + 1 < v.size(); ++k) {
    out[k + 1] = std::sqrt(static_cast<double>(k + 1)) * v[k];
  }
  return out;
}

/// max |(U^dagger U - I)_{ij}| over i, j < block.
inline double unitarity_defect(const FockOperator& u, std::size_t block) {
  block = std::min(block, u.dim());
  if (block == 0) return 0.0;
  auto n = static_cast<Eigen::Index>(block);
  Matrix g = u.matrix().adjoint() * u.matrix();
  Matrix d = g.topLeftCorner(n, n) - Matrix::Identity(n, n);
  return d.cwiseAbs().maxCoeff();
}

namespace detail {

inline double one_norm(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// Diagonal Pade approximant r_m(A) = (V - U)^{-1} (V + U), coefficients
// from the scaling-and-squaring tables for m = 3, 5, 7, 9, 13.
inline Matrix pade_small(const Matrix& a, int order) {
  static constexpr std::array<double, 4> b3{120., 60., 12., 1.};
  static constexpr std::array<double, 6> b5{30240., 15120., 3360., 420., 30., 1.};
  static constexpr std::array<double, 8> b7{17297280., 8648640., 1995840., 277200.,
                                            25200.,    1512.,    56.,      1.};
  static constexpr std::array<double, 10> b9{17643225600., 8821612800., 2075673600., 302702400.,
                                             30270240.,    2162160.,    110880.,     3960.,
                                             90.,          1.};
  const double* b = nullptr;
  switch (order) {
    case 3: b = b3.data(); break;
    case 5: b = b5.data(); break;
    case 7: b = b7.data(); break;
    case 9: b = b9.data(); break;
    default: throw std::logic_error("unsupported Pade order");
  }
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix odd = b[1] * ident;
  Matrix even = b[0] * ident;
  Matrix power = ident;
  for (int k = 1; 2 * k <= order; ++k) {
    power = power * a2;
    odd += b[2 * k + 1] * power;
    even += b[2 * k] * power;
  }
  const Matrix u = a * odd;
  return (even - u).partialPivLu().solve(even + u);
}

inline Matrix pade13(const Matrix& a) {
  static constexpr std::array<double, 14> b{
      64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
      129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
      1323241920.,        40840800.,          960960.,           16380.,
      182.,               1.};
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  Matrix u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  u += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  u = a * u;
  Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace detail

/// exp(M) by scaling and squaring with diagonal Pade approximants.
///
/// The smallest order m in {3, 5, 7, 9} whose backward-error bound theta_m
/// covers ||M||_1 is used directly; otherwise M is scaled by 2^-s so that
/// ||M / 2^s||_1 <= theta_13, the degree-13 approximant is formed and
/// squared s times. The theta_m bounds keep the relative backward error
/// below the double-precision unit roundoff.
///
/// Throws std::overflow_error when the input is non-finite, when the
/// required scaling exceeds the exponent range, or when the result
/// overflows.
inline FockOperator matrix_exponential(const FockOperator& op) {
  constexpr std::array<std::pair<int, double>, 4> small_orders{{
      {3, 1.495585217958292e-2},
      {5, 2.539398330063230e-1},
      {7, 9.504178996162932e-1},
      {9, 2.097847961257068e0},
  }};
  constexpr double theta13 = 5.371920351148152e0;
  constexpr int max_squarings = 1000;

  const Matrix& a = op.matrix();
  if (!a.allFinite()) throw std::overflow_error("matrix_exponential: non-finite input entries");
  const double norm = detail::one_norm(a);

  for (const auto& [order, theta] : small_orders) {
    if (norm <= theta) return FockOperator(detail::pade_small(a, order));
  }

  const int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  if (s > max_squarings) {
    throw std::overflow_error("matrix_exponential: input norm " + std::to_string(norm) +
                              " needs 2^" + std::to_string(s) + " scaling");
  }
  Matrix r = detail::pade13(a / std::ldexp(1.0, s));
  for (int k = 0; k < s; ++k) {
    r = r * r;
    if (!r.allFinite()) throw std::overflow_error("matrix_exponential: result overflowed");
  }
  if (!r.allFinite()) throw std::overflow_error("matrix_exponential: result overflowed");
  return FockOperator(std::move(r));
}

namespace detail {

// Smallest n with sum_{k >= n} p_k < tol, for a distribution given by its
// log-probabilities. Terms are summed from the top so small tails are not
// lost to cancellation against 1.
template <typename LogProb>
std::size_t minimal_tail_dimension(LogProb log_prob, double mean, double tol) {
  const auto top = static_cast<std::size_t>(mean + 12.0 * std::sqrt(mean + 1.0) + 60.0);
  std::vector<double> tail(top + 2, 0.0);
  for (std::size_t k = top + 1; k-- > 0;) tail[k] = tail[k + 1] + std::exp(log_prob(k));
  for (std::size_t n = 0; n <= top + 1; ++n) {
    if (tail[n] < tol) return std::max<std::size_t>(n, 1);
  }
  return top + 1;
}

inline double log_poisson(std::size_t k, double lambda) {
  if (lambda == 0.0) {
    return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double kd = static_cast<double>(k);
  return -lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0);
}

}  // namespace detail

/// Probability mass of |alpha> above level n-1: sum_{k >= n} Poisson(|alpha|^2).
inline double coherent_tail(cplx alpha, std::size_t n) {
  const double lambda = std::norm(alpha);
  const auto top = static_cast<std::size_t>(lambda + 12.0 * std::sqrt(lambda + 1.0) + 60.0);
  double tail = 0.0;
  for (std::size_t k = std::max(top, n) + 1; k-- > n;) tail += std::exp(detail::log_poisson(k, lambda));
  return tail;
}

/// Smallest truncation whose Poisson tail for |alpha> is below tol.norm,
/// without the pad.
inline std::size_t coherent_min_dimension(cplx alpha, const Tolerances& tol = {}) {
  const double lambda = std::norm(alpha);
  return detail::minimal_tail_dimension(
      [lambda](std::size_t k) { return detail::log_poisson(k, lambda); }, lambda, tol.norm);
}

/// Default truncation for |alpha>: tail rule plus tol.pad levels.
inline std::size_t auto_dimension(cplx alpha, const Tolerances& tol = {}) {
  tol.validate();
  return coherent_min_dimension(alpha, tol) + static_cast<std::size_t>(tol.pad);
}

}  // namespace catstate
