#include "catstate/fock_core.hpp"
#include "catstate/states.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace catstate;

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

TEST(Ladder, LoweringDimensionOneIsZero) {
  const auto a = lowering_matrix(1);
  EXPECT_EQ(a.dim(), 1u);
  EXPECT_EQ(a(0, 0), cplx(0.0));
}

TEST(Ladder, LoweringDimensionThree) {
  const auto a = lowering_matrix(3);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      cplx expected = 0.0;
      if (r == 0 && c == 1) expected = 1.0;
      if (r == 1 && c == 2) expected = std::sqrt(2.0);
      EXPECT_EQ(a(r, c), expected) << r << "," << c;
    }
  }
}

TEST(Ladder, RaisingIsAdjointOfLowering) {
  for (std::size_t n : {1u, 2u, 5u, 17u}) {
    EXPECT_EQ(raising_matrix(n).matrix(), lowering_matrix(n).matrix().adjoint());
  }
  const auto ad = raising_matrix(2);
  EXPECT_EQ(ad(1, 0), cplx(1.0));
  EXPECT_EQ(ad(0, 1), cplx(0.0));
  EXPECT_EQ(ad(0, 0), cplx(0.0));
  EXPECT_EQ(ad(1, 1), cplx(0.0));
}

TEST(Ladder, StructureOfLoweringMatrix) {
  for (std::size_t n = 1; n <= 40; ++n) {
    const auto a = lowering_matrix(n);
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (a(r, c) != cplx(0.0)) {
          ++nonzero;
          EXPECT_EQ(c, r + 1);
          EXPECT_GT(a(r, c).real(), 0.0);
          EXPECT_EQ(a(r, c).imag(), 0.0);
        }
      }
    }
    EXPECT_EQ(nonzero, n - 1);
  }
}

TEST(Ladder, NumberOperatorSpectrumIsExact) {
  const std::size_t n = 30;
  const auto num = raising_matrix(n) * lowering_matrix(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r == c) EXPECT_NEAR(num(r, c).real(), static_cast<double>(r), 1e-13);
      else EXPECT_EQ(num(r, c), cplx(0.0));
    }
  }
}

// [a, a^dagger] = diag(1, ..., 1, -(N-1)) on a truncated space; worked out
// by hand for N = 4: a a^dag = diag(1,2,3,0), a^dag a = diag(0,1,2,3).
TEST(Ladder, CommutatorIsIdentityBelowTruncationEdge) {
  const std::size_t n = 4;
  const auto a = lowering_matrix(n);
  const auto comm = a * a.adjoint() - a.adjoint() * a;
  const double expected[] = {1.0, 1.0, 1.0, -3.0};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      EXPECT_NEAR(std::abs(comm(r, c) - (r == c ? expected[r] : 0.0)), 0.0, 1e-14);
    }
  }
}

TEST(Ladder, AdjointIsInvolution) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const FockOperator m(random_matrix(rng, 1 + trial));
    EXPECT_EQ(m.adjoint().adjoint().matrix(), m.matrix());
  }
}

TEST(Apply, IdentityLeavesStateUnchanged) {
  const auto s = coherent_state({0.3, -0.7}, 24);
  const auto out = apply(FockOperator::identity(24), s);
  EXPECT_EQ(out.amplitudes(), s.amplitudes());
}

TEST(Apply, LoweringKillsVacuum) {
  const auto out = apply(lowering_matrix(4), number_state(0, 4));
  EXPECT_EQ(out.norm(), 0.0);
}

TEST(Apply, LoweringOnCoherentStateScalesByAlpha) {
  const Alpha alpha{1.2, 0.4};
  const auto s = coherent_state(alpha);
  const auto out = apply(lowering_matrix(s.dim()), s);
  const double resid = (out.amplitudes() - alpha * s.amplitudes()).norm();
  EXPECT_LE(resid, 1e-8);
}

TEST(Apply, DimensionMismatchThrows) {
  EXPECT_THROW(apply(lowering_matrix(3), number_state(0, 4)), std::invalid_argument);
}

TEST(InnerProduct, VacuumOverlapWithCoherentState) {
  for (Alpha alpha : {Alpha{1.0, 0.0}, Alpha{0.5, -1.5}, Alpha{0.0, 2.0}}) {
    const auto s = coherent_state(alpha);
    const cplx ov = inner_product(number_state(0, s.dim()), s);
    EXPECT_NEAR(ov.real(), std::exp(-0.5 * std::norm(alpha)), 1e-15);
    EXPECT_NEAR(ov.imag(), 0.0, 1e-15);
  }
}

TEST(InnerProduct, ConjugateSymmetric) {
  const auto s1 = coherent_state({0.4, 0.9}, 30);
  const auto s2 = coherent_state({-1.1, 0.2}, 30);
  const cplx a = inner_product(s1, s2);
  const cplx b = inner_product(s2, s1);
  EXPECT_DOUBLE_EQ(a.real(), b.real());
  EXPECT_DOUBLE_EQ(a.imag(), -b.imag());
}

TEST(InnerProduct, ConstructorsAreNormalized) {
  const Tolerances tol;
  for (Alpha alpha : {Alpha{0.5, 0.0}, Alpha{2.0, 0.0}, Alpha{1.0, 1.0}, Alpha{0.0, 3.0}}) {
    const auto s = coherent_state(alpha);
    EXPECT_NEAR(inner_product(s, s).real(), 1.0, tol.norm);
    const auto e = cat_state(alpha, Parity::even);
    EXPECT_NEAR(inner_product(e, e).real(), 1.0, tol.norm);
    const auto o = cat_state(alpha, Parity::odd);
    EXPECT_NEAR(inner_product(o, o).real(), 1.0, tol.norm);
  }
}

TEST(InnerProduct, EvenAndOddCatsAreExactlyOrthogonal) {
  const auto e = cat_state({2.0, 0.0}, Parity::even, 48);
  const auto o = cat_state({2.0, 0.0}, Parity::odd, 48);
  EXPECT_EQ(inner_product(e, o), cplx(0.0));
}

TEST(InnerProduct, DimensionMismatchThrows) {
  EXPECT_THROW(inner_product(number_state(0, 3), number_state(0, 4)), std::invalid_argument);
}

TEST(MatrixExponential, ZeroGivesIdentity) {
  for (Eigen::Index n : {1, 3, 16}) {
    const auto e = matrix_exponential(FockOperator(Matrix::Zero(n, n)));
    EXPECT_EQ(e.matrix(), Matrix::Identity(n, n));
  }
}

TEST(MatrixExponential, DiagonalPhases) {
  for (double theta : {0.1, 1.0, 2.5, -4.0}) {
    const Eigen::Index n = 12;
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) m(k, k) = cplx(0.0, theta * static_cast<double>(k));
    const auto e = matrix_exponential(FockOperator(m));
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const cplx expected = r == c ? std::polar(1.0, theta * static_cast<double>(r)) : cplx(0.0);
        EXPECT_LE(std::abs(e.matrix()(r, c) - expected), 1e-13) << theta << " " << r << "," << c;
      }
    }
  }
}

// Every Pade branch (orders 3..13 and squaring) against a closed form:
// exp of a 2x2 real rotation generator.
TEST(MatrixExponential, RotationGeneratorAcrossNormRanges) {
  for (double theta : {1e-3, 0.2, 0.9, 2.0, 5.0, 40.0, 300.0}) {
    Matrix m(2, 2);
    m << 0.0, -theta, theta, 0.0;
    const auto e = matrix_exponential(FockOperator(m)).matrix();
    EXPECT_NEAR(std::abs(e(0, 0) - std::cos(theta)), 0.0, 1e-13 * std::max(1.0, theta));
    EXPECT_NEAR(std::abs(e(0, 1) + std::sin(theta)), 0.0, 1e-13 * std::max(1.0, theta));
    EXPECT_NEAR(std::abs(e(1, 0) - std::sin(theta)), 0.0, 1e-13 * std::max(1.0, theta));
  }
}

TEST(MatrixExponential, NilpotentSeriesTerminates) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = 2.0;
  m(1, 2) = 3.0;
  // exp(N) = I + N + N^2/2 for N^3 = 0.
  Matrix expected = Matrix::Identity(3, 3) + m + 0.5 * m * m;
  const auto e = matrix_exponential(FockOperator(m));
  EXPECT_LE((e.matrix() - expected).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(MatrixExponential, DisplacementOfVacuumMatchesHighPrecisionAmplitudes) {
  const Tolerances tol;
  const Alpha alpha{1.0, 0.0};
  const std::size_t n = 64;
  const auto a = lowering_matrix(n + tol.pad);
  const auto u = matrix_exponential(alpha * a.adjoint() - std::conj(alpha) * a);
  const auto ref = oracle::coherent_amplitudes(alpha, static_cast<int>(n));
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_LE(std::abs(u(k, 0) - ref[k]), tol.eq) << k;
  }
}

TEST(MatrixExponential, SkewHermitianGivesUnitary) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g = random_matrix(rng, 20);
    Matrix skew = 0.5 * (g - g.adjoint());
    skew *= 10.0 / skew.operatorNorm();
    const auto u = matrix_exponential(FockOperator(skew));
    EXPECT_LE(unitarity_defect(u, u.dim()), Tolerances{}.op);
  }
}

// Property: exp(M) exp(-M) = I for matrices of norm <= 10 (skew-Hermitian,
// displacement generators, and general complex matrices).
TEST(MatrixExponential, InverseProperty) {
  const double eps_op = Tolerances{}.op;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> scale(0.01, 10.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 2 + trial % 15;
    Matrix m = random_matrix(rng, n);
    if (trial % 2 == 0) m = 0.5 * (m - m.adjoint().eval());
    m *= scale(rng) / m.operatorNorm();
    const auto e = matrix_exponential(FockOperator(m));
    const auto einv = matrix_exponential(FockOperator(-m));
    const double dev = ((e * einv).matrix() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    EXPECT_LE(dev, eps_op) << "trial " << trial << " n=" << n;
  }
  oracle::AlphaGen gen(3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Alpha alpha = gen();
    const auto a = lowering_matrix(40);
    const auto g = alpha * a.adjoint() - std::conj(alpha) * a;
    const auto prod = matrix_exponential(g) * matrix_exponential(-g);
    EXPECT_LE((prod.matrix() - Matrix::Identity(40, 40)).cwiseAbs().maxCoeff(), eps_op);
  }
}

TEST(MatrixExponential, RejectsNonFiniteAndHugeInput) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(matrix_exponential(FockOperator(m)), std::overflow_error);
  Matrix big = Matrix::Zero(2, 2);
  big(0, 0) = 1e4;
  EXPECT_THROW(matrix_exponential(FockOperator(big)), std::overflow_error);
}

TEST(Truncation, AutoDimensionLeavesNegligibleLastAmplitude) {
  const Tolerances tol;
  oracle::AlphaGen gen(4.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Alpha alpha = gen();
    const auto s = coherent_state(alpha);
    EXPECT_EQ(s.dim(), auto_dimension(alpha, tol));
    EXPECT_LE(std::norm(s[s.dim() - 1]), tol.norm);
    EXPECT_LT(coherent_tail(alpha, s.dim() - tol.pad), tol.norm);
  }
}

TEST(Truncation, MinimalDimensionIsMinimal) {
  const Tolerances tol;
  for (double r : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0}) {
    const std::size_t n = coherent_min_dimension({r, 0.0}, tol);
    EXPECT_LT(coherent_tail({r, 0.0}, n), tol.norm);
    if (n > 1) {
      EXPECT_GE(coherent_tail({r, 0.0}, n - 1), tol.norm);
    }
  }
}

TEST(Tolerances, RejectNonPositive) {
  Tolerances t;
  t.norm = 0.0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t = {};
  t.pad = -1;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  EXPECT_NO_THROW(Tolerances{}.validate());
}

}  // namespace
