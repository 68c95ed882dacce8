#include "globalctl/chain_state.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace globalctl {
namespace {

constexpr double kTol = 1e-12;

TEST(RngStream, SplitmixReferenceVector) {
  // First output of the reference splitmix64 sequence seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFull);
  EXPECT_NE(splitmix64(1), splitmix64(2));
}

TEST(RngStream, UniformRangeAndCounting) {
  RngStream rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(rng.draw_count(), 1000u);
}

TEST(RngStream, ForcedValuesAreReturnedInOrderAndCounted) {
  RngStream rng(0);
  rng.force_next(0.25);
  rng.force_next(0.75);
  EXPECT_DOUBLE_EQ(rng.uniform(), 0.25);
  EXPECT_DOUBLE_EQ(rng.uniform(), 0.75);
  EXPECT_EQ(rng.draw_count(), 2u);
  EXPECT_THROW(rng.force_next(1.0), std::invalid_argument);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(7), b(7);
  for (int i = 0; i < 100; ++i) ASSERT_DOUBLE_EQ(a.uniform(), b.uniform());
}

TEST(ChainState, InitAllZeroAndFromBits) {
  ChainState s(5);
  EXPECT_TRUE(s.all_classical());
  for (int i = 0; i < 5; ++i) EXPECT_EQ(s.classical_bit(i), 0);

  auto t = ChainState::from_bits({1, 0, 1, 1});
  EXPECT_EQ(t.classical_bit(0), 1);
  EXPECT_EQ(t.classical_bit(1), 0);
  EXPECT_EQ(t.classical_bit(2), 1);
  EXPECT_EQ(t.classical_bit(3), 1);
  EXPECT_THROW(ChainState::from_bits({0, 2}), std::invalid_argument);
}

TEST(ChainState, ClassicalPermutationFastPathStaysClassical) {
  ChainState s(3);
  s.apply_unitary1(1, Unitary1::pauli_x());
  EXPECT_TRUE(s.all_classical());
  EXPECT_EQ(s.classical_bit(1), 1);
  EXPECT_NEAR(std::abs(s.global_phase() - cplx{1, 0}), 0.0, kTol);

  s.apply_unitary1(1, Unitary1::pauli_z());
  EXPECT_TRUE(s.all_classical());
  EXPECT_EQ(s.classical_bit(1), 1);
  EXPECT_NEAR(std::abs(s.global_phase() - cplx{-1, 0}), 0.0, kTol);
}

TEST(ChainState, HadamardPromotesAndSecondHadamardDemotes) {
  ChainState s(2);
  s.apply_unitary1(0, Unitary1::hadamard());
  EXPECT_FALSE(s.all_classical());
  EXPECT_EQ(s.quantum_cells(), std::vector<int>{0});
  EXPECT_EQ(s.cell(0).kind, CellKind::Pure);

  s.apply_unitary1(0, Unitary1::hadamard());
  EXPECT_TRUE(s.all_classical());
  EXPECT_EQ(s.classical_bit(0), 0);
  EXPECT_NEAR(std::abs(s.global_phase() - cplx{1, 0}), 0.0, kTol);
}

TEST(ChainState, CphaseClassicalFastPaths) {
  // Control 0: exact no-op even on a quantum partner.
  ChainState s(2);
  s.apply_unitary1(1, Unitary1::hadamard());
  s.apply_cphase(0, 1, 1.234);
  EXPECT_EQ(s.cell(1).kind, CellKind::Pure);
  EXPECT_EQ(s.register_width(), 0);

  // Control 1: becomes a phase gate on the partner.
  ChainState t = ChainState::from_bits({1, 0});
  t.apply_unitary1(1, Unitary1::hadamard());
  t.apply_cphase(0, 1, kPi);
  // |+> picked up Z: now |->; H gives |1>.
  t.apply_unitary1(1, Unitary1::hadamard());
  EXPECT_TRUE(t.all_classical());
  EXPECT_EQ(t.classical_bit(1), 1);

  // Both classical 1: pure global phase.
  ChainState u = ChainState::from_bits({1, 1});
  u.apply_cphase(0, 1, kPi / 2);
  EXPECT_TRUE(u.all_classical());
  EXPECT_NEAR(std::abs(u.global_phase() - cplx{0, 1}), 0.0, kTol);
}

TEST(ChainState, EntangleAndBellPartnerDemotesOnMeasure) {
  ChainState s(4);
  // Bell pair on cells (1, 3) via H, H, CZ, H: |00>+|11>.
  s.apply_unitary1(1, Unitary1::hadamard());
  s.apply_unitary1(3, Unitary1::hadamard());
  s.apply_cphase(1, 3, kPi);
  s.apply_unitary1(3, Unitary1::hadamard());
  EXPECT_EQ(s.register_width(), 2);
  EXPECT_EQ(s.quantum_cells(), (std::vector<int>{1, 3}));

  RngStream rng(5);
  const auto before = rng.draw_count();
  const int m1 = s.measure(1, rng);
  EXPECT_EQ(rng.draw_count(), before + 1);  // genuine 50/50 draw

  // Partner collapses to the same bit with no further draw.
  EXPECT_TRUE(s.all_classical());
  const int m3 = s.measure(3, rng);
  EXPECT_EQ(rng.draw_count(), before + 1);
  EXPECT_EQ(m1, m3);
}

TEST(ChainState, MeasureDrawContract) {
  RngStream rng(1);

  // Classical cell: no draw.
  ChainState s = ChainState::from_bits({1});
  EXPECT_EQ(s.measure(0, rng), 1);
  EXPECT_EQ(rng.draw_count(), 0u);

  // Deterministic-by-tolerance superposition: no draw.
  ChainState t(1);
  t.apply_unitary1(0, Unitary1::ry(1e-6));  // p1 ~ 2.5e-13 < 1e-9
  EXPECT_EQ(t.measure(0, rng), 0);
  EXPECT_EQ(rng.draw_count(), 0u);

  // Genuine superposition: exactly one draw.
  ChainState u(1);
  u.apply_unitary1(0, Unitary1::hadamard());
  u.measure(0, rng);
  EXPECT_EQ(rng.draw_count(), 1u);
}

TEST(ChainState, ForcedDrawDecidesOutcome) {
  // p1 = 0.5; u = 0.3 < 0.5 means outcome 1.
  ChainState s(1);
  s.apply_unitary1(0, Unitary1::hadamard());
  RngStream rng(0);
  rng.force_next(0.3);
  EXPECT_EQ(s.measure(0, rng), 1);

  ChainState t(1);
  t.apply_unitary1(0, Unitary1::hadamard());
  RngStream rng2(0);
  rng2.force_next(0.7);
  EXPECT_EQ(t.measure(0, rng2), 0);
}

TEST(ChainState, ResetSemantics) {
  RngStream rng(3);
  ChainState s = ChainState::from_bits({1, 0});
  s.reset(0, rng);
  EXPECT_EQ(s.classical_bit(0), 0);
  EXPECT_EQ(rng.draw_count(), 0u);

  ChainState t(1);
  t.apply_unitary1(0, Unitary1::hadamard());
  t.reset(0, rng);
  EXPECT_EQ(t.classical_bit(0), 0);
  EXPECT_EQ(rng.draw_count(), 1u);
}

TEST(ChainState, CphaseInverseDisentanglesExactly) {
  ChainState s(2);
  s.apply_unitary1(0, Unitary1::hadamard());
  s.apply_unitary1(1, Unitary1::hadamard());
  s.apply_cphase(0, 1, 0.9);
  EXPECT_EQ(s.register_width(), 2);
  s.apply_cphase(0, 1, -0.9);
  EXPECT_EQ(s.register_width(), 0);
  s.apply_unitary1(0, Unitary1::hadamard());
  s.apply_unitary1(1, Unitary1::hadamard());
  EXPECT_TRUE(s.all_classical());
  EXPECT_EQ(s.classical_bit(0), 0);
  EXPECT_EQ(s.classical_bit(1), 0);
}

TEST(ChainState, GhzMiddleMeasurementKeepsOuterPairEntangled) {
  ChainState s(3);
  // GHZ via H on 0, then CNOT-like CZ sandwiches onto 1 and 2.
  s.apply_unitary1(0, Unitary1::hadamard());
  s.apply_unitary1(1, Unitary1::hadamard());
  s.apply_cphase(0, 1, kPi);
  s.apply_unitary1(1, Unitary1::hadamard());
  s.apply_unitary1(2, Unitary1::hadamard());
  s.apply_cphase(1, 2, kPi);
  s.apply_unitary1(2, Unitary1::hadamard());
  EXPECT_EQ(s.register_width(), 3);

  // X-basis measurement of the middle keeps 0 and 2 entangled.
  RngStream rng(11);
  s.apply_unitary1(1, Unitary1::hadamard());
  s.measure(1, rng);
  EXPECT_EQ(s.register_width(), 2);
  EXPECT_EQ(s.quantum_cells(), (std::vector<int>{0, 2}));
}

TEST(ChainState, DenseEmbeddingMatchesHandComputedState) {
  ChainState s(2);
  s.apply_unitary1(0, Unitary1::hadamard());
  s.apply_unitary1(1, Unitary1::pauli_x());
  // State: |+>_0 |1>_1 = (|01_idx2> + |11_idx3>)/sqrt2 with bit i = cell i.
  const auto v = s.to_dense();
  const double r = 1.0 / std::sqrt(2.0);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_NEAR(std::abs(v[0]), 0.0, kTol);
  EXPECT_NEAR(std::abs(v[1]), 0.0, kTol);
  EXPECT_NEAR(std::abs(v[2] - cplx{r, 0}), 0.0, kTol);
  EXPECT_NEAR(std::abs(v[3] - cplx{r, 0}), 0.0, kTol);
}

TEST(ChainState, DenseDistanceUpToPhase) {
  ChainState s(2), t(2);
  s.apply_unitary1(0, Unitary1::hadamard());
  t.apply_unitary1(0, Unitary1::hadamard());
  // Put a pure global phase on t only.
  t.apply_unitary1(1, Unitary1::rz(1.1));
  EXPECT_NEAR(dense_distance_up_to_phase(s.to_dense(), t.to_dense()), 0.0,
              kTol);
}

TEST(ChainState, SetBitRules) {
  ChainState s(2);
  s.set_bit(1, 1);
  EXPECT_EQ(s.classical_bit(1), 1);
  s.apply_unitary1(0, Unitary1::hadamard());
  EXPECT_THROW(s.set_bit(0, 1), std::logic_error);
  EXPECT_THROW(s.classical_bit(0), std::logic_error);
}

TEST(ChainState, PeakTrackingSeesEntangledCluster) {
  ChainState s(6);
  for (int i : {0, 2, 4}) s.apply_unitary1(i, Unitary1::hadamard());
  s.apply_cphase(0, 2, kPi);
  s.apply_cphase(2, 4, kPi);
  EXPECT_EQ(s.max_register_width(), 3);
  EXPECT_GE(s.max_quantum_cells(), 3);
}

TEST(ChainState, SublatticeClassicalQuery) {
  ChainState s(6);
  EXPECT_TRUE(s.sublattice_classical(0));
  EXPECT_TRUE(s.sublattice_classical(1));
  s.apply_unitary1(3, Unitary1::hadamard());
  EXPECT_TRUE(s.sublattice_classical(0));
  EXPECT_FALSE(s.sublattice_classical(1));
}

}  // namespace
}  // namespace globalctl
