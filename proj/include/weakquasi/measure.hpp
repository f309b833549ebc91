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

#pragma once

// Measurement schemes producing outcome tables over (a, b): the two-point
// projective scheme, the weak-sequential scheme (closed form and an explicit
// system-pointer simulation), and the weak-TPM scheme built on non-selective
// projective measurements.

#include <vector>

#include "weakquasi/qcore.hpp"

namespace weakquasi {

enum class DistributionKind { Probability, Quasiprobability };

/// Real table indexed by (a, b): rows are outcomes of A, columns of B.
struct JointDistribution {
  RealMatrix values;
  DistributionKind kind = DistributionKind::Probability;
  /// Set for weak-TPM tables, whose rows are separately normalized.
  bool row_normalized = false;

  int dim_a() const { return static_cast<int>(values.rows()); }
  int dim_b() const { return static_cast<int>(values.cols()); }
  double total() const { return values.sum(); }
  /// Sum over a, indexed by b.
  RealVector sum_over_a() const { return values.colwise().sum().transpose(); }
  /// Sum over b, indexed by a.
  RealVector sum_over_b() const { return values.rowwise().sum(); }
};

/// Clamps entries in [-kIdentityTol, 0) to zero and renormalizes; anything
/// more negative is an internal-consistency error.
JointDistribution make_probability_table(RealMatrix values);

struct Povm {
  int dim = 0;
  std::vector<Matrix> kraus;
  std::vector<Matrix> elements;
  WeakStrength strength;
};

struct Marginals {
  RealVector p_in;    ///< Tr[Pi_a rho]
  RealVector p_fin;   ///< Tr[Pi_b rho]
  RealVector p_post;  ///< sum_a p(a, b)
};

void check_dimensions(const DensityOperator &rho, const Observable &A, const Observable &B);

/// p(a,b) = Tr[Pi_b Pi_a rho Pi_a].
JointDistribution tpm_joint(const DensityOperator &rho, const Observable &A,
                            const Observable &B);

/// Kraus operators m_a = omega0 Pi_a + omega1 I / sqrt(d) and their elements
/// M_a = K Pi_a + (1 - K) I / d.
Povm weak_povm(const Observable &A, double K);

/// m_a rho m_a / Tr[M_a rho].
DensityOperator post_measurement_state(const DensityOperator &rho, const Povm &povm, int a);

/// omega0^2 p + (omega1^2 / d) p_fin + (2 omega0 omega1 / sqrt d) q_MH.
JointDistribution weak_sequential_closed(const DensityOperator &rho, const Observable &A,
                                         const Observable &B, double K);

/// rho (x) |mu><mu| on the d^2-dimensional system-pointer space.
DensityOperator pointer_input_state(const DensityOperator &rho, const PointerState &pointer);

/// Couples a system-pointer state with U = sum_a Pi_a (x) V^a, reads the
/// pointer in its computational basis and the system in B's eigenbasis.
JointDistribution weak_sequential_from_joint(const DensityOperator &joint, const Observable &A,
                                             const Observable &B);

/// Explicit pointer simulation; independent of weak_sequential_closed.
JointDistribution weak_sequential_oracle(const DensityOperator &rho, const Observable &A,
                                         const Observable &B, double K);

/// Pi_a rho Pi_a + (I - Pi_a) rho (I - Pi_a).
DensityOperator nonselective_state(const DensityOperator &rho, const Observable &A, int a);

/// w(a,b) = Tr[Pi_b rho_NS(a)]; row_normalized is set.
JointDistribution weak_tpm_joint(const DensityOperator &rho, const Observable &A,
                                 const Observable &B);

Marginals marginals(const DensityOperator &rho, const Observable &A, const Observable &B);

}  // namespace weakquasi
