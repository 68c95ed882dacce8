#include "globalctl/unitary.hpp"

#include <gtest/gtest.h>

namespace globalctl {
namespace {

constexpr double kTol = 1e-12;

TEST(Unitary1, PauliAlgebra) {
  const auto x = Unitary1::pauli_x();
  const auto y = Unitary1::pauli_y();
  const auto z = Unitary1::pauli_z();
  EXPECT_TRUE(approx_equal(x * x, Unitary1::identity(), kTol));
  EXPECT_TRUE(approx_equal(y * y, Unitary1::identity(), kTol));
  EXPECT_TRUE(approx_equal(z * z, Unitary1::identity(), kTol));
  // xy = iz
  EXPECT_TRUE(approx_equal(x * y, z.scaled(cplx{0, 1}), kTol));
}

TEST(Unitary1, HadamardConjugatesXZ) {
  const auto h = Unitary1::hadamard();
  EXPECT_TRUE(approx_equal(h * h, Unitary1::identity(), kTol));
  EXPECT_TRUE(
      approx_equal(h * Unitary1::pauli_x() * h, Unitary1::pauli_z(), kTol));
  EXPECT_TRUE(
      approx_equal(h * Unitary1::pauli_z() * h, Unitary1::pauli_x(), kTol));
}

TEST(Unitary1, RotationsAreUnitaryWithUnitDet) {
  for (double a : {0.0, 0.3, kPi / 2, kPi, 2.7, 2 * kPi}) {
    for (auto u : {Unitary1::rx(a), Unitary1::ry(a), Unitary1::rz(a)}) {
      EXPECT_TRUE(approx_equal(u * u.adjoint(), Unitary1::identity(), kTol));
      EXPECT_NEAR(std::abs(u.det() - cplx{1, 0}), 0.0, kTol);
    }
  }
}

TEST(Unitary1, AxisAnglePiMatchesPaulisUpToPhase) {
  EXPECT_TRUE(approx_equal_up_to_phase(Unitary1::axis_angle("x", kPi),
                                       Unitary1::pauli_x(), kTol));
  EXPECT_TRUE(approx_equal_up_to_phase(Unitary1::axis_angle("y", kPi),
                                       Unitary1::pauli_y(), kTol));
  EXPECT_TRUE(approx_equal_up_to_phase(Unitary1::axis_angle("z", kPi),
                                       Unitary1::pauli_z(), kTol));
  EXPECT_TRUE(approx_equal_up_to_phase(Unitary1::axis_angle("h", kPi),
                                       Unitary1::hadamard(), kTol));
}

TEST(Unitary1, EulerZyzComposition) {
  const double b = 0.4, g = 1.1, d = -0.7;
  const auto u = Unitary1::euler_zyz(b, g, d);
  const auto v = Unitary1::rz(d) * Unitary1::ry(g) * Unitary1::rz(b);
  EXPECT_TRUE(approx_equal(u, v, kTol));
}

TEST(Unitary1, PermutationClassification) {
  EXPECT_TRUE(Unitary1::identity().is_permutation());
  EXPECT_TRUE(Unitary1::identity().is_identity_up_to_phase());
  EXPECT_TRUE(Unitary1::pauli_x().is_permutation());
  EXPECT_TRUE(Unitary1::pauli_x().is_antidiagonal());
  EXPECT_TRUE(Unitary1::rz(0.71).is_diagonal());
  EXPECT_FALSE(Unitary1::rz(0.71).is_identity_up_to_phase());
  EXPECT_FALSE(Unitary1::hadamard().is_permutation());
  EXPECT_TRUE(Unitary1::identity().scaled(std::polar(1.0, 0.3))
                  .is_identity_up_to_phase());
}

TEST(Unitary1, DistanceUpToPhaseIgnoresGlobalPhase) {
  const auto u = Unitary1::euler_zyz(0.2, 0.9, 1.4);
  const auto v = u.scaled(std::polar(1.0, 2.2));
  EXPECT_NEAR(distance_up_to_phase(u, v), 0.0, kTol);
  EXPECT_GT(distance_up_to_phase(u, Unitary1::pauli_x()), 0.1);
}

TEST(Unitary1, PhaseGate) {
  const auto p = Unitary1::phase(kPi);
  EXPECT_TRUE(approx_equal(p, Unitary1::pauli_z(), kTol));
  EXPECT_TRUE(approx_equal_up_to_phase(Unitary1::phase(kPi / 2) *
                                           Unitary1::phase(kPi / 2),
                                       Unitary1::pauli_z(), kTol));
}

}  // namespace
}  // namespace globalctl
