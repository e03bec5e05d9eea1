#include "spinlab/su2.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinlab/error.hpp"
#include "spinlab/numerics.hpp"
#include "test_util.hpp"

using namespace spinlab;
using namespace spinlab::su2;
using spinlab::testing::direction_at_angle;
using spinlab::testing::random_direction;

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

double commutator_error(const SpinOperators& s) {
  return std::max({(s.x * s.y - s.y * s.x - kI * s.z).cwiseAbs().maxCoeff(),
                   (s.y * s.z - s.z * s.y - kI * s.x).cwiseAbs().maxCoeff(),
                   (s.z * s.x - s.x * s.z - kI * s.y).cwiseAbs().maxCoeff()});
}

}  // namespace

TEST(HalfInt, Arithmetic) {
  const HalfInt h(3);
  EXPECT_EQ(h.value(), 1.5);
  EXPECT_FALSE(h.is_integer());
  EXPECT_EQ(h.multiplicity(), 4);
  EXPECT_EQ((h - HalfInt(1)).twice(), 2);
  EXPECT_EQ(h.str(), "3/2");
  EXPECT_EQ(HalfInt::integer(2).str(), "2");
  EXPECT_LT(HalfInt(1), HalfInt(2));
}

TEST(Direction, CartesianRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto d = random_direction(rng);
    const auto c = d.cartesian();
    EXPECT_NEAR(c[0] * c[0] + c[1] * c[1] + c[2] * c[2], 1.0, 1e-14);
    const auto back = Direction::from_cartesian(c[0], c[1], c[2]);
    EXPECT_NEAR(back.dot(d), 1.0, 1e-14);
  }
}

TEST(WignerSmallD, Examples) {
  const HalfInt half(1);
  EXPECT_NEAR(wigner_small_d(half, half, half, kPi / 3), std::cos(kPi / 6), 1e-15);
  EXPECT_NEAR(wigner_small_d(half, half, -half, 0.7), -std::sin(0.35), 1e-15);

  const HalfInt s32(3);
  const double d = wigner_small_d(s32, s32, s32, kPi / 2);
  EXPECT_NEAR(d * d, 0.125, 1e-15);
  for (double theta : {0.1, 1.0, 2.5}) {
    const double v = wigner_small_d(s32, s32, s32, theta);
    EXPECT_NEAR(v * v, std::pow(0.5 * (1.0 + std::cos(theta)), 3), 1e-14);
  }

  for (int tw = 0; tw <= 20; ++tw) {
    for (int m = -tw; m <= tw; m += 2) {
      EXPECT_NEAR(wigner_small_d(HalfInt(tw), HalfInt(m), HalfInt(m), 0.0), 1.0, 1e-14);
    }
  }
}

TEST(WignerSmallD, MatchesExponentialOfSy) {
  // Independent route: exp(-i theta S_y) from the Hermitian eigensolver.
  for (int tw = 1; tw <= 25; ++tw) {
    const HalfInt s(tw);
    const auto ops = spin_operators(s);
    for (double theta : {0.3, kPi / 2, 2.2, kPi}) {
      const Eigen::MatrixXcd ref = numerics::exp_i_hermitian(ops.y, -theta);
      const Eigen::MatrixXd d = wigner_small_d_matrix(s, theta);
      EXPECT_LT((ref - d.cast<std::complex<double>>()).cwiseAbs().maxCoeff(), 1e-11)
          << "S=" << s.str() << " theta=" << theta;
    }
  }
}

TEST(WignerSmallD, SymmetryUnderIndexSwap) {
  for (int tw = 0; tw <= 16; ++tw) {
    for (int m = -tw; m <= tw; m += 2) {
      for (int mp = -tw; mp <= tw; mp += 2) {
        const double theta = 0.37 + 0.1 * tw;
        const double sign = ((m - mp) / 2) % 2 == 0 ? 1.0 : -1.0;
        EXPECT_NEAR(wigner_small_d(HalfInt(tw), HalfInt(m), HalfInt(mp), theta),
                    sign * wigner_small_d(HalfInt(tw), HalfInt(mp), HalfInt(m), theta), 1e-12);
      }
    }
  }
}

TEST(WignerSmallD, RejectsInvalidProjections) {
  EXPECT_THROW(wigner_small_d(HalfInt(2), HalfInt(4), HalfInt(0), 0.1), ContractViolation);
  EXPECT_THROW(wigner_small_d(HalfInt(2), HalfInt(1), HalfInt(0), 0.1), ContractViolation);
}

TEST(WignerRotation, UnitaryUpToSpin25Over2) {
  std::mt19937_64 rng(11);
  for (int tw = 0; tw <= 25; ++tw) {
    const auto n = random_direction(rng);
    const Eigen::MatrixXcd d = wigner_rotation(HalfInt(tw), n.phi, n.theta);
    EXPECT_LT((d.adjoint() * d - Eigen::MatrixXcd::Identity(tw + 1, tw + 1)).cwiseAbs().maxCoeff(),
              1e-12)
        << "2S=" << tw;
  }
}

TEST(RotateTo, ZAxisGivesBasisVector) {
  for (int tw = 0; tw <= 6; ++tw) {
    for (int m = -tw; m <= tw; m += 2) {
      const auto ket = rotate_to(HalfInt(tw), HalfInt(m), Direction::z_axis());
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(tw + 1);
      e(basis_index(HalfInt(tw), HalfInt(m))) = 1.0;
      EXPECT_LT((ket.amps - e).norm(), 1e-15);
    }
  }
}

TEST(RotateTo, SpinHalfAlongX) {
  const HalfInt h(1);
  const auto ket = rotate_to(h, h, {kPi / 2, 0.0});
  EXPECT_NEAR(std::abs(ket.amps(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ket.amps(1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(RotateTo, EigenstateOfSpinAlongDirection) {
  std::mt19937_64 rng(5);
  for (int tw = 1; tw <= 12; ++tw) {
    const auto ops = spin_operators(HalfInt(tw));
    for (int trial = 0; trial < 5; ++trial) {
      const auto n = random_direction(rng);
      const Eigen::MatrixXcd sn = ops.along(n);
      for (int m = -tw; m <= tw; m += 2) {
        const auto ket = rotate_to(HalfInt(tw), HalfInt(m), n);
        EXPECT_NEAR(ket.amps.norm(), 1.0, 1e-12);
        EXPECT_LT((sn * ket.amps - 0.5 * m * ket.amps).norm(), 1e-12);
      }
    }
  }
}

TEST(RotateTo, OverlapDependsOnlyOnDotProduct) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int tw = 1; tw <= 8; ++tw) {
    for (int m = tw % 2; m <= tw; m += 2) {
      const double angle = kPi * u(rng);
      double first = -1.0;
      for (int trial = 0; trial < 4; ++trial) {
        const auto n = random_direction(rng);
        const auto mm = direction_at_angle(n, angle, 2 * kPi * u(rng));
        const double ov = std::norm(rotate_to(HalfInt(tw), HalfInt(m), n)
                                        .amps.dot(rotate_to(HalfInt(tw), HalfInt(m), mm).amps));
        if (first < 0.0) {
          first = ov;
        } else {
          EXPECT_NEAR(ov, first, 1e-12);
        }
      }
    }
  }
}

TEST(SpinOperators, SpinHalfIsPauliOverTwo) {
  const auto ops = spin_operators(HalfInt(1));
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 0.5, 0.5, 0;
  sy << 0, -0.5 * kI, 0.5 * kI, 0;
  sz << 0.5, 0, 0, -0.5;
  EXPECT_LT((ops.x - sx).norm(), 1e-16);
  EXPECT_LT((ops.y - sy).norm(), 1e-16);
  EXPECT_LT((ops.z - sz).norm(), 1e-16);
}

TEST(SpinOperators, AlgebraAndCasimir) {
  for (int tw = 0; tw <= 25; ++tw) {
    const auto ops = spin_operators(HalfInt(tw));
    const double j = 0.5 * tw;
    EXPECT_LT(commutator_error(ops), 1e-13) << "2S=" << tw;
    EXPECT_LT((ops.casimir() - j * (j + 1) * Eigen::MatrixXcd::Identity(tw + 1, tw + 1))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
  }
}

TEST(Peres, SpectrumAlgebraCasimir) {
  const auto g = peres_generators();
  const auto spectrum = numerics::hermitian_eigensystem(g.z).values;
  const std::vector<double> expect{-1.5, -0.5, 0.5, 1.5};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(spectrum[i], expect[i], 1e-15);
  EXPECT_LT(commutator_error(g), 1e-14);
  EXPECT_LT((g.casimir() - 3.75 * Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Entanglement, ReferenceStates) {
  EXPECT_NEAR(entanglement_entropy(Eigen::Vector4cd(1, 0, 0, 0)), 0.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(entanglement_entropy(Eigen::Vector4cd(0, r, -r, 0)), 1.0, 1e-14);
  EXPECT_THROW(entanglement_entropy(Eigen::Vector4cd(1, 1, 0, 0)), ContractViolation);
}

TEST(Entanglement, PeresRotationOfUpUp) {
  const auto g = peres_generators();
  const Eigen::Vector4cd up_up(1, 0, 0, 0);
  const Eigen::Vector4cd at_pi = numerics::exp_i_hermitian(g.y, kPi) * up_up;
  const Eigen::Vector4cd at_half = numerics::exp_i_hermitian(g.y, kPi / 2) * up_up;
  EXPECT_LT(entanglement_entropy(at_pi), 1e-10);
  EXPECT_GT(entanglement_entropy(at_half), 0.01);
  // At pi the state is |dd> up to phase: the S_z = -3/2 eigenvector.
  EXPECT_NEAR(std::abs(at_pi(3)), 1.0, 1e-12);
}

TEST(Overlap32, ClosedFormExamples) {
  EXPECT_DOUBLE_EQ(overlap_sq_32(1.0, Projection32::three_halves), 1.0);
  EXPECT_DOUBLE_EQ(overlap_sq_32(-1.0, Projection32::three_halves), 0.0);
  EXPECT_DOUBLE_EQ(overlap_sq_32(-1.0, Projection32::one_half), 0.0);
  EXPECT_NEAR(overlap_sq_32(1.0 / 3.0, Projection32::one_half), 0.0, 1e-16);
  EXPECT_THROW(overlap_sq_32(1.5, Projection32::one_half), ContractViolation);
}

TEST(Overlap32, MonotonicityCriterion) {
  const int grid = 1000;
  double prev = -1.0;
  for (int i = 0; i <= grid; ++i) {
    const double c = -1.0 + 2.0 * i / grid;
    const double v = overlap_sq_32(c, Projection32::three_halves);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_EQ(overlap_sq_32(-1.0, Projection32::three_halves), 0.0);
  EXPECT_EQ(overlap_sq_32(1.0, Projection32::three_halves), 1.0);

  int direction_changes = 0;
  double last = overlap_sq_32(-1.0, Projection32::one_half);
  int sign = 0;
  for (int i = 1; i <= grid; ++i) {
    const double v = overlap_sq_32(-1.0 + 2.0 * i / grid, Projection32::one_half);
    const int s = v > last ? 1 : (v < last ? -1 : 0);
    if (s != 0 && sign != 0 && s != sign) ++direction_changes;
    if (s != 0) sign = s;
    last = v;
  }
  EXPECT_GE(direction_changes, 1);
}

TEST(Overlap32, MatchesWignerD) {
  const HalfInt s(3), h(1);
  for (int i = 0; i <= 100; ++i) {
    const double theta = kPi * i / 100;
    const double d11 = wigner_small_d(s, h, h, theta);
    const double d33 = wigner_small_d(s, s, s, theta);
    EXPECT_NEAR(d11 * d11, overlap_sq_32(std::cos(theta), Projection32::one_half), 1e-12);
    EXPECT_NEAR(d33 * d33, overlap_sq_32(std::cos(theta), Projection32::three_halves), 1e-12);
  }
}
