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

// Quasiprobability families over two-time outcome pairs (a, b): commensurate
// (CQ) and Margenau-Hill (MHQ) distributions, their weak-measurement
// variants, the coherent cross-term C(a,b), and the negativity threshold in
// the measurement strength K.

#include <optional>
#include <vector>

#include "weakquasi/measure.hpp"

namespace weakquasi {

enum class QuasiFamily { CQ, MHQ, WeakCQ, WeakMHQ };

const char *family_name(QuasiFamily family);

struct QuasiDistribution {
  RealMatrix values;
  QuasiFamily family = QuasiFamily::MHQ;
  std::optional<WeakStrength> strength;

  int dim_a() const { return static_cast<int>(values.rows()); }
  int dim_b() const { return static_cast<int>(values.cols()); }
  double total() const { return values.sum(); }
  RealVector sum_over_a() const { return values.colwise().sum().transpose(); }
  RealVector sum_over_b() const { return values.rowwise().sum(); }
};

/// Per-cell strength below which the weak-MHQ cell stops being negative.
/// Cells whose MHQ is nonnegative hold std::nullopt ("never negative").
struct ThresholdReport {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<std::optional<double>> cells;  // row-major over (a, b)
  /// Minimum over the negative cells; nullopt when no cell is negative.
  std::optional<double> global;

  const std::optional<double> &at(int a, int b) const { return cells[a * dim_b + b]; }
};

/// q_C = p(a,b) + (p_fin(b) - p_post(b)) / d.
QuasiDistribution cq(const DensityOperator &rho, const Observable &A, const Observable &B);

/// q_MH = Re Tr[Pi_b Pi_a rho].
QuasiDistribution mhq(const DensityOperator &rho, const Observable &A, const Observable &B);

/// p_weak(a,b) + (p_fin(b) - sum_a p_weak(a,b)) / d on measured or exact
/// tables. Inputs are used as given; no renormalization.
QuasiDistribution weak_cq_from_data(const JointDistribution &p_weak, const RealVector &p_fin,
                                    int d, std::optional<WeakStrength> strength = std::nullopt);

/// CQ evaluated from a projective (K = 1) table and the unmeasured marginal.
QuasiDistribution cq_from_data(const JointDistribution &p_tpm, const RealVector &p_fin, int d);

/// omega0^2 q_C + (omega1^2 / d) p_fin + (2 omega0 omega1 / sqrt d) q_MH.
QuasiDistribution weak_cq_closed(const DensityOperator &rho, const Observable &A,
                                 const Observable &B, double K);

/// K q_MH + (1 - K) p_fin / d.
QuasiDistribution weak_mhq(const DensityOperator &rho, const Observable &A, const Observable &B,
                           double K);

/// Same combination from an estimated MHQ table and marginal.
QuasiDistribution weak_mhq_from_data(const RealMatrix &q_mh, const RealVector &p_fin,
                                     const WeakStrength &strength);

/// C(a,b) = p_weak(a,b) - omega0^2 p(a,b) - (omega1^2 / d) p_fin(b).
RealMatrix coherence_term(const JointDistribution &p_weak, const JointDistribution &p_tpm,
                          const RealVector &p_fin, const WeakStrength &strength);

/// Inverts the weak-sequential decomposition for q_MH; needs 0 < K < 1.
QuasiDistribution mhq_from_weak(const JointDistribution &p_weak, const JointDistribution &p_tpm,
                                const RealVector &p_fin, const WeakStrength &strength);

/// q_MH = p(a,b) + (p_fin(b) - w(a,b)) / 2 from the weak-TPM scheme.
QuasiDistribution mhq_from_weak_tpm(const DensityOperator &rho, const Observable &A,
                                    const Observable &B);

ThresholdReport threshold_K(const DensityOperator &rho, const Observable &A,
                            const Observable &B);
/// Threshold from an MHQ table and the marginal p_fin; d is the table size.
ThresholdReport threshold_K(const RealMatrix &q_mh, const RealVector &p_fin);

/// Total negative mass sum max(0, -q).
double negativity(const QuasiDistribution &q);
double negativity(const RealMatrix &values);

}  // namespace weakquasi
