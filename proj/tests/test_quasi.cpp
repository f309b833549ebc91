// Copyright 2026 The weakquasi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakquasi/quasi.hpp"

#include <gtest/gtest.h>

#include "support/test_support.hpp"
#include "weakquasi/shots.hpp"

using namespace weakquasi;

namespace {

const Observable Z = Observable::pauli_z();
const Observable X = Observable::pauli_x();

DensityOperator rotated_state() { return qubit_scenario(10.6).rho; }
const wqtest::QubitFormulas F = wqtest::QubitFormulas::from_theta0(10.6);

JointDistribution half_table(const DensityOperator &rho) {
  return weak_sequential_closed(rho, Z, X, 0.5);
}

double max_diff(const RealMatrix &a, const RealMatrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

struct Instance {
  DensityOperator rho;
  Observable A;
  Observable B;
};

Instance random_instance(int d, std::mt19937_64 &rng) {
  return {wqtest::random_density(d, rng), wqtest::random_observable(d, rng, "A"),
          wqtest::random_observable(d, rng, "B")};
}

TEST(quasi, mhq_rotated_values) {
  const QuasiDistribution q = mhq(rotated_state(), Z, X);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      EXPECT_NEAR(q.values(a, b), F.q_mh(a, b), 1e-14);
      EXPECT_NEAR(q.values(a, b),
                  wqtest::brute_force_mhq(rotated_state().matrix(), Z.eigenvector(a), X.eigenvector(b)),
                  1e-14);
    }
  }
  EXPECT_NEAR(q.values(0, 0), 0.603189, 1e-6);
  EXPECT_NEAR(q.values(1, 0), 0.233962, 1e-6);
  EXPECT_NEAR(q.values(0, 1), 0.266038, 1e-6);
  EXPECT_NEAR(q.values(1, 1), -0.103189, 1e-6);
}

TEST(quasi, mhq_matches_brute_force_on_random_instances) {
  std::mt19937_64 rng(2);
  for (int d = 2; d <= 4; ++d) {
    const Instance in = random_instance(d, rng);
    const QuasiDistribution q = mhq(in.rho, in.A, in.B);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        EXPECT_NEAR(q.values(a, b),
                    wqtest::brute_force_mhq(in.rho.matrix(), in.A.eigenvector(a), in.B.eigenvector(b)),
                    1e-13);
      }
    }
  }
}

TEST(quasi, commuting_state_reduces_to_tpm) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.7;
  m(1, 1) = 0.3;
  const DensityOperator rho = DensityOperator::from_matrix(m);
  const RealMatrix p = tpm_joint(rho, Z, X).values;
  EXPECT_LE(max_diff(cq(rho, Z, X).values, p), 1e-15);
  EXPECT_LE(max_diff(mhq(rho, Z, X).values, p), 1e-15);
  EXPECT_LE(max_diff(mhq_from_weak_tpm(rho, Z, X).values, p), 1e-15);
  const ThresholdReport t = threshold_K(rho, Z, X);
  EXPECT_FALSE(t.global.has_value());
  for (const auto &cell : t.cells) EXPECT_FALSE(cell.has_value());
}

TEST(quasi, maximally_mixed_has_no_negativity) {
  std::mt19937_64 rng(4);
  for (int d = 2; d <= 4; ++d) {
    const Observable A = wqtest::random_observable(d, rng, "A");
    const Observable B = wqtest::random_observable(d, rng, "B");
    const DensityOperator rho = DensityOperator::maximally_mixed(d);
    const QuasiDistribution q = mhq(rho, A, B);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        EXPECT_NEAR(q.values(a, b), std::norm(B.eigenvector(b).dot(A.eigenvector(a))) / d, 1e-14);
      }
    }
    EXPECT_EQ(negativity(q), 0.0);
  }
  const QuasiDistribution c = cq(DensityOperator::maximally_mixed(2), Z, X);
  EXPECT_LE((c.values.array() - 0.25).abs().maxCoeff(), 1e-15);
}

TEST(quasi, cq_rotated_equals_mhq_for_qubits) {
  const QuasiDistribution c = cq(rotated_state(), Z, X);
  EXPECT_NEAR(c.values(1, 1), F.q_mh(1, 1), 1e-14);
  EXPECT_LE(max_diff(c.values, mhq(rotated_state(), Z, X).values), 1e-14);
}

TEST(quasi, weak_cq_from_data_examples) {
  const DensityOperator rho = rotated_state();
  const Marginals m = marginals(rho, Z, X);
  const QuasiDistribution k1 = weak_cq_from_data(weak_sequential_closed(rho, Z, X, 1.0), m.p_fin, 2);
  EXPECT_LE(max_diff(k1.values, cq(rho, Z, X).values), 1e-14);

  const QuasiDistribution k0 = weak_cq_from_data(weak_sequential_closed(rho, Z, X, 0.0), m.p_fin, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) EXPECT_NEAR(k0.values(a, b), m.p_fin(b) / 2.0, 1e-15);
  }

  const QuasiDistribution half =
      weak_cq_from_data(weak_sequential_closed(rho, Z, X, 0.5), m.p_fin, 2);
  const double expected = 0.5 * F.q_mh(1, 1) + 0.25 * F.p_fin(1);
  EXPECT_NEAR(half.values(1, 1), expected, 1e-14);
  EXPECT_NEAR(half.values(1, 1), -0.010883, 1e-6);
  EXPECT_LE(max_diff(half.values, weak_cq_closed(rho, Z, X, 0.5).values), 1e-12);

  EXPECT_THROW(weak_cq_from_data(half_table(rho), RealVector::Zero(3), 2), Error);
}

TEST(quasi, weak_mhq_examples) {
  const DensityOperator rho = rotated_state();
  EXPECT_LE(max_diff(weak_mhq(rho, Z, X, 1.0).values, mhq(rho, Z, X).values), 1e-15);
  const QuasiDistribution k0 = weak_mhq(rho, Z, X, 0.0);
  for (int b = 0; b < 2; ++b) EXPECT_NEAR(k0.values(0, b), F.p_fin(b) / 2.0, 1e-15);
  const QuasiDistribution k4 = weak_mhq(rho, Z, X, 0.4);
  EXPECT_NEAR(k4.values(1, 1), 0.4 * F.q_mh(1, 1) + 0.3 * F.p_fin(1), 1e-14);
  EXPECT_NEAR(k4.values(1, 1), 0.007579, 1e-6);
  EXPECT_GT(k4.values(1, 1), 0.0);
  EXPECT_EQ(negativity(k4), 0.0);
  EXPECT_THROW(weak_mhq(rho, Z, X, -0.01), Error);
}

TEST(quasi, coherence_term_examples) {
  const DensityOperator rho = rotated_state();
  const Marginals m = marginals(rho, Z, X);
  const JointDistribution p = tpm_joint(rho, Z, X);
  for (double K : {0.0, 1.0}) {
    const RealMatrix c = coherence_term(weak_sequential_closed(rho, Z, X, K), p, m.p_fin,
                                        WeakStrength::from_K(K, 2));
    EXPECT_LE(c.cwiseAbs().maxCoeff(), 1e-15) << "K=" << K;
  }
  const WeakStrength s = WeakStrength::from_K(0.5, 2);
  const RealMatrix c = coherence_term(weak_sequential_closed(rho, Z, X, 0.5), p, m.p_fin, s);
  EXPECT_NEAR(c(1, 1), s.coherence_weight() * F.q_mh(1, 1), 1e-14);
  EXPECT_NEAR(c(1, 1), -0.037770, 1e-6);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.6;
  diag(1, 1) = 0.4;
  const DensityOperator commuting = DensityOperator::from_matrix(diag);
  const JointDistribution pc = tpm_joint(commuting, Z, X);
  const Marginals mc = marginals(commuting, Z, X);
  const WeakStrength s3 = WeakStrength::from_K(0.3, 2);
  const RealMatrix cc = coherence_term(weak_sequential_closed(commuting, Z, X, 0.3), pc, mc.p_fin, s3);
  EXPECT_LE(max_diff(cc, s3.coherence_weight() * pc.values), 1e-14);
  EXPECT_GT(cc.minCoeff(), 0.0);
}

TEST(quasi, mhq_from_weak_round_trip) {
  const DensityOperator rho = rotated_state();
  const Marginals m = marginals(rho, Z, X);
  const JointDistribution p = tpm_joint(rho, Z, X);
  for (double K : {0.1, 0.5, 0.9}) {
    const WeakStrength s = WeakStrength::from_K(K, 2);
    const QuasiDistribution q = mhq_from_weak(weak_sequential_closed(rho, Z, X, K), p, m.p_fin, s);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) EXPECT_NEAR(q.values(a, b), F.q_mh(a, b), 1e-12) << "K=" << K;
    }
  }
  for (double K : {0.0, 1.0}) {
    try {
      mhq_from_weak(weak_sequential_closed(rho, Z, X, K), p, m.p_fin, WeakStrength::from_K(K, 2));
      FAIL();
    } catch (const Error &e) {
      EXPECT_EQ(e.kind(), ErrorKind::NonInvertibleStrength);
    }
  }
}

TEST(quasi, mhq_from_weak_tpm_examples) {
  EXPECT_NEAR(mhq_from_weak_tpm(rotated_state(), Z, X).values(1, 1), F.q_mh(1, 1), 1e-14);
  const QuasiDistribution mixed = mhq_from_weak_tpm(DensityOperator::maximally_mixed(2), Z, X);
  EXPECT_LE((mixed.values.array() - 0.25).abs().maxCoeff(), 1e-15);
}

TEST(quasi, threshold_examples) {
  const ThresholdReport t = threshold_K(rotated_state(), Z, X);
  ASSERT_TRUE(t.at(1, 1).has_value());
  EXPECT_NEAR(*t.at(1, 1), F.threshold_v_dperp(), 1e-12);
  EXPECT_NEAR(*t.at(1, 1), 0.4410526, 1e-6);
  EXPECT_FALSE(t.at(0, 0).has_value());
  EXPECT_FALSE(t.at(0, 1).has_value());
  EXPECT_FALSE(t.at(1, 0).has_value());
  ASSERT_TRUE(t.global.has_value());
  EXPECT_DOUBLE_EQ(*t.global, *t.at(1, 1));
}

TEST(quasi, threshold_zero_marginal_cases) {
  RealMatrix q(2, 2);
  q << 0.5, 0.0, 0.5, 0.0;
  RealVector p_fin(2);
  p_fin << 1.0, 0.0;
  const ThresholdReport t = threshold_K(q, p_fin);
  EXPECT_FALSE(t.at(0, 1).has_value());

  q(0, 1) = -0.01;
  q(0, 0) = 0.51;
  try {
    threshold_K(q, p_fin);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentInput);
  }
}

TEST(quasi, negativity_examples) {
  EXPECT_NEAR(negativity(mhq(rotated_state(), Z, X)), -F.q_mh(1, 1), 1e-15);
  EXPECT_NEAR(negativity(mhq(rotated_state(), Z, X)), 0.103189, 1e-6);
  EXPECT_EQ(negativity(weak_mhq(rotated_state(), Z, X, 0.4)), 0.0);
  EXPECT_EQ(negativity(tpm_joint(rotated_state(), Z, X).values), 0.0);
}

TEST(quasi, family_properties_on_random_instances) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3;
    const Instance in = random_instance(d, rng);
    const double K = std::uniform_real_distribution<double>(0, 1)(rng);
    const Marginals m = marginals(in.rho, in.A, in.B);
    const RealVector weak_row = K * m.p_in.array() + (1.0 - K) / d;

    const QuasiDistribution families[] = {cq(in.rho, in.A, in.B), mhq(in.rho, in.A, in.B),
                                          weak_cq_closed(in.rho, in.A, in.B, K),
                                          weak_mhq(in.rho, in.A, in.B, K)};
    for (const QuasiDistribution &q : families) {
      EXPECT_NEAR(q.total(), 1.0, 1e-10) << family_name(q.family);
      EXPECT_LE((q.sum_over_a() - m.p_fin).cwiseAbs().maxCoeff(), 1e-10) << family_name(q.family);
      const RealVector &row = q.strength ? weak_row : m.p_in;
      EXPECT_LE((q.sum_over_b() - row).cwiseAbs().maxCoeff(), 1e-10) << family_name(q.family);
    }
    // closed form vs operational definition
    const QuasiDistribution from_data =
        weak_cq_from_data(weak_sequential_closed(in.rho, in.A, in.B, K), m.p_fin, d);
    EXPECT_LE(max_diff(from_data.values, families[2].values), 1e-12);
  }
}

TEST(quasi, qubit_families_coincide_and_qutrits_separate) {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance in = random_instance(2, rng);
    for (int i = 0; i <= 10; ++i) {
      const double K = i / 10.0;
      EXPECT_LE(max_diff(weak_cq_closed(in.rho, in.A, in.B, K).values,
                         weak_mhq(in.rho, in.A, in.B, K).values),
                1e-12);
    }
    EXPECT_LE(max_diff(cq(in.rho, in.A, in.B).values, mhq(in.rho, in.A, in.B).values), 1e-12);
  }
  double largest = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Instance in = random_instance(3, rng);
    largest = std::max(largest, max_diff(weak_cq_closed(in.rho, in.A, in.B, 0.5).values,
                                         weak_mhq(in.rho, in.A, in.B, 0.5).values));
  }
  EXPECT_GT(largest, 1e-3);
}

TEST(quasi, weak_mhq_crosses_zero_at_threshold) {
  std::mt19937_64 rng(55);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance in = random_instance(2 + trial % 3, rng);
    const ThresholdReport t = threshold_K(in.rho, in.A, in.B);
    const int d = in.rho.dim();
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (!t.at(a, b)) continue;
        const double k_bar = *t.at(a, b);
        ASSERT_GT(k_bar, 0.0);
        ASSERT_LT(k_bar, 1.0);
        if (k_bar < 2e-6 || k_bar > 1.0 - 2e-6) continue;
        EXPECT_GT(weak_mhq(in.rho, in.A, in.B, k_bar - 1e-6).values(a, b), 0.0);
        EXPECT_LT(weak_mhq(in.rho, in.A, in.B, k_bar + 1e-6).values(a, b), 0.0);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(quasi, reconstruction_paths_agree) {
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const Instance in = random_instance(d, rng);
    const RealMatrix direct = mhq(in.rho, in.A, in.B).values;
    EXPECT_LE(max_diff(mhq_from_weak_tpm(in.rho, in.A, in.B).values, direct), 1e-10);
    const Marginals m = marginals(in.rho, in.A, in.B);
    const JointDistribution p = tpm_joint(in.rho, in.A, in.B);
    for (double K : {0.05, 0.3, 0.7, 0.95}) {
      const QuasiDistribution rec = mhq_from_weak(weak_sequential_closed(in.rho, in.A, in.B, K), p,
                                                  m.p_fin, WeakStrength::from_K(K, d));
      EXPECT_LE(max_diff(rec.values, direct), 1e-10) << "K=" << K;
    }
  }
}

}  // namespace
