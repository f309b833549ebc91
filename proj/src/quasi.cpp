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

#include <algorithm>
#include <cmath>
#include <string>

namespace weakquasi {

namespace {

void require_table_dims(const RealMatrix &table, const RealVector &p_fin, int d,
                        const char *what) {
  if (d < 2 || table.rows() != d || table.cols() != d || p_fin.size() != d) {
    fail(ErrorKind::DimensionMismatch, std::string(what) + ": inconsistent table dimensions");
  }
}

void require_interior(const WeakStrength &s) {
  if (!(s.omega0 * s.omega1 > 0.0)) {
    fail(ErrorKind::NonInvertibleStrength,
         "MHQ reconstruction needs 0 < K < 1 (got K = " + std::to_string(s.K) + ")");
  }
}

RealVector p_fin_of(const DensityOperator &rho, const Observable &B) {
  RealVector p(B.dim());
  for (int b = 0; b < B.dim(); ++b) p(b) = born_probability(rho, B.projector(b));
  return p;
}

}  // namespace

const char *family_name(QuasiFamily family) {
  switch (family) {
    case QuasiFamily::CQ: return "cq";
    case QuasiFamily::MHQ: return "mhq";
    case QuasiFamily::WeakCQ: return "weak_cq";
    case QuasiFamily::WeakMHQ: return "weak_mhq";
  }
  return "unknown";
}

QuasiDistribution cq(const DensityOperator &rho, const Observable &A, const Observable &B) {
  check_dimensions(rho, A, B);
  return cq_from_data(tpm_joint(rho, A, B), p_fin_of(rho, B), rho.dim());
}

QuasiDistribution mhq(const DensityOperator &rho, const Observable &A, const Observable &B) {
  check_dimensions(rho, A, B);
  const int d = rho.dim();
  RealMatrix q(d, d);
  for (int a = 0; a < d; ++a) {
    const Matrix pa_rho = A.projector(a) * rho.matrix();
    for (int b = 0; b < d; ++b) q(a, b) = (B.projector(b) * pa_rho).trace().real();
  }
  return QuasiDistribution{std::move(q), QuasiFamily::MHQ, std::nullopt};
}

QuasiDistribution weak_cq_from_data(const JointDistribution &p_weak, const RealVector &p_fin,
                                    int d, std::optional<WeakStrength> strength) {
  require_table_dims(p_weak.values, p_fin, d, "weak_cq_from_data");
  const RealVector disturbance = p_fin - p_weak.sum_over_a();
  RealMatrix q = p_weak.values;
  q.rowwise() += disturbance.transpose() / static_cast<double>(d);
  return QuasiDistribution{std::move(q), QuasiFamily::WeakCQ, strength};
}

QuasiDistribution cq_from_data(const JointDistribution &p_tpm, const RealVector &p_fin, int d) {
  QuasiDistribution q = weak_cq_from_data(p_tpm, p_fin, d);
  q.family = QuasiFamily::CQ;
  return q;
}

QuasiDistribution weak_cq_closed(const DensityOperator &rho, const Observable &A,
                                 const Observable &B, double K) {
  check_dimensions(rho, A, B);
  const WeakStrength s = WeakStrength::from_K(K, rho.dim());
  const QuasiDistribution strong_cq = cq(rho, A, B);
  const QuasiDistribution strong_mhq = mhq(rho, A, B);
  const RealVector p_fin = p_fin_of(rho, B);
  RealMatrix q = s.omega0 * s.omega0 * strong_cq.values + s.coherence_weight() * strong_mhq.values;
  q.rowwise() += (s.omega1 * s.omega1 / rho.dim()) * p_fin.transpose();
  return QuasiDistribution{std::move(q), QuasiFamily::WeakCQ, s};
}

QuasiDistribution weak_mhq(const DensityOperator &rho, const Observable &A, const Observable &B,
                           double K) {
  check_dimensions(rho, A, B);
  const WeakStrength s = WeakStrength::from_K(K, rho.dim());
  return weak_mhq_from_data(mhq(rho, A, B).values, p_fin_of(rho, B), s);
}

QuasiDistribution weak_mhq_from_data(const RealMatrix &q_mh, const RealVector &p_fin,
                                     const WeakStrength &strength) {
  require_table_dims(q_mh, p_fin, strength.dim, "weak_mhq_from_data");
  RealMatrix q = strength.K * q_mh;
  q.rowwise() += ((1.0 - strength.K) / strength.dim) * p_fin.transpose();
  return QuasiDistribution{std::move(q), QuasiFamily::WeakMHQ, strength};
}

RealMatrix coherence_term(const JointDistribution &p_weak, const JointDistribution &p_tpm,
                          const RealVector &p_fin, const WeakStrength &strength) {
  const int d = strength.dim;
  require_table_dims(p_weak.values, p_fin, d, "coherence_term");
  require_table_dims(p_tpm.values, p_fin, d, "coherence_term");
  RealMatrix c = p_weak.values - strength.omega0 * strength.omega0 * p_tpm.values;
  c.rowwise() -= (strength.omega1 * strength.omega1 / d) * p_fin.transpose();
  return c;
}

QuasiDistribution mhq_from_weak(const JointDistribution &p_weak, const JointDistribution &p_tpm,
                                const RealVector &p_fin, const WeakStrength &strength) {
  require_interior(strength);
  RealMatrix q = coherence_term(p_weak, p_tpm, p_fin, strength) / strength.coherence_weight();
  return QuasiDistribution{std::move(q), QuasiFamily::MHQ, strength};
}

QuasiDistribution mhq_from_weak_tpm(const DensityOperator &rho, const Observable &A,
                                    const Observable &B) {
  check_dimensions(rho, A, B);
  const JointDistribution p = tpm_joint(rho, A, B);
  const JointDistribution w = weak_tpm_joint(rho, A, B);
  const RealVector p_fin = p_fin_of(rho, B);
  RealMatrix q = p.values - 0.5 * w.values;
  q.rowwise() += 0.5 * p_fin.transpose();
  return QuasiDistribution{std::move(q), QuasiFamily::MHQ, std::nullopt};
}

ThresholdReport threshold_K(const DensityOperator &rho, const Observable &A,
                            const Observable &B) {
  return threshold_K(mhq(rho, A, B).values, p_fin_of(rho, B));
}

ThresholdReport threshold_K(const RealMatrix &q_mh, const RealVector &p_fin) {
  const int d = static_cast<int>(p_fin.size());
  require_table_dims(q_mh, p_fin, d, "threshold_K");
  ThresholdReport report;
  report.dim_a = d;
  report.dim_b = d;
  report.cells.resize(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double q = q_mh(a, b);
      const double pf = p_fin(b);
      std::optional<double> cell;
      if (pf <= kIdentityTol) {
        if (std::abs(q) > kIdentityTol) {
          fail(ErrorKind::InconsistentInput, "p_fin(" + std::to_string(b) +
                                                 ") vanishes while q_MH(" + std::to_string(a) +
                                                 "," + std::to_string(b) + ") does not");
        }
      } else if (q < -kIdentityTol) {
        cell = 1.0 / (1.0 - d * q / pf);
        report.global = report.global ? std::min(*report.global, *cell) : *cell;
      }
      report.cells[static_cast<std::size_t>(a) * d + b] = cell;
    }
  }
  return report;
}

double negativity(const RealMatrix &values) {
  return (-values.array()).max(0.0).sum();
}

double negativity(const QuasiDistribution &q) { return negativity(q.values); }

}  // namespace weakquasi
