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

#include "weakquasi/measure.hpp"

#include <cmath>
#include <string>

namespace weakquasi {

namespace {

bool clamp_dust(RealMatrix &values) {
  bool clamped = false;
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      double &v = values(i, j);
      if (!std::isfinite(v)) {
        fail(ErrorKind::InternalConsistency, "non-finite probability at cell (" +
                                                 std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (v < 0.0) {
        if (v < -kIdentityTol) {
          fail(ErrorKind::InternalConsistency,
               "negative probability " + std::to_string(v) + " at cell (" + std::to_string(i) +
                   "," + std::to_string(j) + ")");
        }
        v = 0.0;
        clamped = true;
      }
    }
  }
  return clamped;
}

void require_same_dim(const DensityOperator &rho, const Observable &A) {
  if (rho.dim() != A.dim()) {
    fail(ErrorKind::DimensionMismatch, "state has dimension " + std::to_string(rho.dim()) +
                                           " but observable '" + A.name() + "' has " +
                                           std::to_string(A.dim()));
  }
}

// Re Tr[Pi_b Pi_a rho] = Re(<b|a><a|rho|b>).
RealMatrix margenau_hill_values(const DensityOperator &rho, const Observable &A,
                                const Observable &B) {
  const int d = rho.dim();
  RealMatrix q(d, d);
  for (int a = 0; a < d; ++a) {
    const Vector va = A.eigenvector(a);
    const Vector rho_a = rho.matrix().adjoint() * va;  // rho^dagger |a> = rho |a>
    for (int b = 0; b < d; ++b) {
      const Vector vb = B.eigenvector(b);
      const cplx ba = vb.dot(va);        // <b|a>
      const cplx a_rho_b = rho_a.dot(vb);  // <a|rho|b>
      q(a, b) = (ba * a_rho_b).real();
    }
  }
  return q;
}

}  // namespace

JointDistribution make_probability_table(RealMatrix values) {
  const bool clamped = clamp_dust(values);
  const double total = values.sum();
  if (std::abs(total - 1.0) > kValidationTol) {
    fail(ErrorKind::InternalConsistency,
         "probability table sums to " + std::to_string(total) + " instead of 1");
  }
  if (clamped) values /= total;
  return JointDistribution{std::move(values), DistributionKind::Probability, false};
}

void check_dimensions(const DensityOperator &rho, const Observable &A, const Observable &B) {
  require_same_dim(rho, A);
  require_same_dim(rho, B);
}

JointDistribution tpm_joint(const DensityOperator &rho, const Observable &A,
                            const Observable &B) {
  check_dimensions(rho, A, B);
  const int d = rho.dim();
  RealMatrix p(d, d);
  for (int a = 0; a < d; ++a) {
    const Vector va = A.eigenvector(a);
    const double p_in = va.dot(rho.matrix() * va).real();
    for (int b = 0; b < d; ++b) {
      p(a, b) = p_in * std::norm(B.eigenvector(b).dot(va));
    }
  }
  return make_probability_table(std::move(p));
}

Povm weak_povm(const Observable &A, double K) {
  const int d = A.dim();
  const WeakStrength strength = WeakStrength::from_K(K, d);
  Povm povm;
  povm.dim = d;
  povm.strength = strength;
  const Matrix identity = Matrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Matrix m = strength.omega0 * A.projector(a) +
               (strength.omega1 / std::sqrt(static_cast<double>(d))) * identity;
    povm.elements.push_back(m.adjoint() * m);
    povm.kraus.push_back(std::move(m));
  }
  return povm;
}

DensityOperator post_measurement_state(const DensityOperator &rho, const Povm &povm, int a) {
  if (rho.dim() != povm.dim) fail(ErrorKind::DimensionMismatch, "POVM and state dimensions differ");
  if (a < 0 || a >= povm.dim) fail(ErrorKind::InvalidInput, "outcome index out of range");
  const double p = (povm.elements[a] * rho.matrix()).trace().real();
  if (!(p > kIdentityTol)) {
    fail(ErrorKind::UndefinedConditionalState,
         "outcome " + std::to_string(a) + " has vanishing probability");
  }
  const Matrix &m = povm.kraus[a];
  Matrix out = m * rho.matrix() * m.adjoint() / p;
  out = 0.5 * (out + out.adjoint());
  return DensityOperator::from_matrix(std::move(out));
}

JointDistribution weak_sequential_closed(const DensityOperator &rho, const Observable &A,
                                         const Observable &B, double K) {
  check_dimensions(rho, A, B);
  const int d = rho.dim();
  const WeakStrength s = WeakStrength::from_K(K, d);
  const JointDistribution p = tpm_joint(rho, A, B);
  const RealMatrix q = margenau_hill_values(rho, A, B);
  RealMatrix out(d, d);
  for (int b = 0; b < d; ++b) {
    const double p_fin = born_probability(rho, B.projector(b));
    for (int a = 0; a < d; ++a) {
      out(a, b) = s.omega0 * s.omega0 * p.values(a, b) + s.omega1 * s.omega1 / d * p_fin +
                  s.coherence_weight() * q(a, b);
    }
  }
  return make_probability_table(std::move(out));
}

DensityOperator pointer_input_state(const DensityOperator &rho, const PointerState &pointer) {
  if (pointer.dim() != rho.dim()) {
    fail(ErrorKind::DimensionMismatch, "pointer and system dimensions differ");
  }
  const Matrix mu = pointer.amplitudes * pointer.amplitudes.adjoint();
  return DensityOperator::from_matrix(kron(rho.matrix(), mu));
}

JointDistribution weak_sequential_from_joint(const DensityOperator &joint, const Observable &A,
                                             const Observable &B) {
  if (A.dim() != B.dim()) fail(ErrorKind::DimensionMismatch, "observable dimensions differ");
  const int d = A.dim();
  if (joint.dim() != d * d) {
    fail(ErrorKind::DimensionMismatch, "joint state must have dimension d^2");
  }
  const Matrix u = coupling_unitary(A);
  const Matrix evolved = u * joint.matrix() * u.adjoint();
  RealMatrix out(d, d);
  for (int b = 0; b < d; ++b) {
    const Vector vb = B.eigenvector(b);
    for (int a = 0; a < d; ++a) {
      // |b>_system (x) |a>_pointer
      Vector ket = Vector::Zero(d * d);
      for (int s = 0; s < d; ++s) ket(s * d + a) = vb(s);
      out(a, b) = ket.dot(evolved * ket).real();
    }
  }
  return make_probability_table(std::move(out));
}

JointDistribution weak_sequential_oracle(const DensityOperator &rho, const Observable &A,
                                         const Observable &B, double K) {
  check_dimensions(rho, A, B);
  const auto [pointer, strength] = pointer_for_strength(K, rho.dim());
  return weak_sequential_from_joint(pointer_input_state(rho, pointer), A, B);
}

DensityOperator nonselective_state(const DensityOperator &rho, const Observable &A, int a) {
  require_same_dim(rho, A);
  if (a < 0 || a >= A.dim()) fail(ErrorKind::InvalidInput, "outcome index out of range");
  const Matrix pi = A.projector(a);
  const Matrix complement = Matrix::Identity(A.dim(), A.dim()) - pi;
  Matrix out = pi * rho.matrix() * pi + complement * rho.matrix() * complement;
  out = 0.5 * (out + out.adjoint());
  return DensityOperator::from_matrix(std::move(out));
}

JointDistribution weak_tpm_joint(const DensityOperator &rho, const Observable &A,
                                 const Observable &B) {
  check_dimensions(rho, A, B);
  const int d = rho.dim();
  RealMatrix w(d, d);
  for (int a = 0; a < d; ++a) {
    const DensityOperator ns = nonselective_state(rho, A, a);
    for (int b = 0; b < d; ++b) w(a, b) = born_probability(ns, B.projector(b));
  }
  clamp_dust(w);
  return JointDistribution{std::move(w), DistributionKind::Probability, true};
}

Marginals marginals(const DensityOperator &rho, const Observable &A, const Observable &B) {
  check_dimensions(rho, A, B);
  const int d = rho.dim();
  Marginals m;
  m.p_in.resize(d);
  m.p_fin.resize(d);
  for (int k = 0; k < d; ++k) {
    m.p_in(k) = born_probability(rho, A.projector(k));
    m.p_fin(k) = born_probability(rho, B.projector(k));
  }
  m.p_post = tpm_joint(rho, A, B).sum_over_a();
  return m;
}

}  // namespace weakquasi
