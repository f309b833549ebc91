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

#include "weakquasi/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace weakquasi {

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Range: return "range";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::UndefinedConditionalState: return "undefined-conditional-state";
    case ErrorKind::NonInvertibleStrength: return "non-invertible-strength";
    case ErrorKind::InconsistentInput: return "inconsistent-input";
    case ErrorKind::InvalidKind: return "invalid-kind";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::Config: return "config";
    case ErrorKind::SchemaMismatch: return "schema-mismatch";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

double max_abs(const Matrix &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix &m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix &m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

double min_eigenvalue_hermitian(const Matrix &m) {
  // Symmetrize so dust in the anti-Hermitian part cannot leak in.
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator DensityOperator::from_matrix(Matrix m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    fail(ErrorKind::InvalidInput, "density operator must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    fail(ErrorKind::InvalidInput, "density operator has non-finite entries");
  }
  if (!is_hermitian(m)) {
    fail(ErrorKind::InvalidInput, "density operator is not Hermitian");
  }
  if (std::abs(m.trace() - cplx(1.0)) > kValidationTol) {
    fail(ErrorKind::InvalidInput, "density operator trace differs from 1");
  }
  if (min_eigenvalue_hermitian(m) < -kValidationTol) {
    fail(ErrorKind::InvalidInput, "density operator is not positive semidefinite");
  }
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  if (dim < 1) fail(ErrorKind::InvalidInput, "dimension must be positive");
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator make_pure_state(const Vector &amplitudes) {
  if (amplitudes.size() == 0) {
    fail(ErrorKind::InvalidInput, "empty amplitude vector");
  }
  const double norm = amplitudes.norm();
  if (!std::isfinite(norm) || norm == 0.0) {
    fail(ErrorKind::InvalidInput, "amplitude vector is zero or non-finite");
  }
  const Vector psi = amplitudes / norm;
  return DensityOperator::from_matrix(psi * psi.adjoint());
}

DensityOperator make_pure_state(std::span<const cplx> amplitudes) {
  Vector v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<Eigen::Index>(i)) = amplitudes[i];
  return make_pure_state(v);
}

// ---------------------------------------------------------------------------
// Observable

Observable Observable::from_eigenbasis(Matrix eigenvectors,
                                       std::vector<double> eigenvalues,
                                       std::string name,
                                       std::vector<std::string> labels) {
  const auto d = eigenvectors.cols();
  if (d == 0 || eigenvectors.rows() != d) {
    fail(ErrorKind::InvalidInput, "observable '" + name + "' needs d column vectors of length d");
  }
  if (static_cast<Eigen::Index>(eigenvalues.size()) != d) {
    fail(ErrorKind::InvalidInput, "observable '" + name + "' needs one eigenvalue per eigenvector");
  }
  if (!eigenvectors.allFinite()) {
    fail(ErrorKind::InvalidInput, "observable '" + name + "' has non-finite entries");
  }
  const Matrix gram = eigenvectors.adjoint() * eigenvectors;
  if (max_abs(gram - Matrix::Identity(d, d)) > kValidationTol) {
    fail(ErrorKind::InvalidInput, "observable '" + name + "' eigenvectors are not orthonormal");
  }
  if (labels.empty()) {
    for (Eigen::Index k = 0; k < d; ++k) labels.push_back(std::to_string(k));
  }
  if (static_cast<Eigen::Index>(labels.size()) != d) {
    fail(ErrorKind::InvalidInput, "observable '" + name + "' needs one label per outcome");
  }
  return Observable(std::move(eigenvectors), std::move(eigenvalues), std::move(name),
                    std::move(labels));
}

Observable Observable::computational(int dim, std::string name) {
  if (dim < 1) fail(ErrorKind::InvalidInput, "dimension must be positive");
  std::vector<double> values;
  std::vector<std::string> labels;
  if (dim == 2) {
    values = {1.0, -1.0};
    labels = {"H", "V"};
  } else {
    for (int k = 0; k < dim; ++k) values.push_back(k);
  }
  return from_eigenbasis(Matrix::Identity(dim, dim), std::move(values), std::move(name),
                         std::move(labels));
}

Observable Observable::fourier(int dim, std::string name) {
  if (dim < 1) fail(ErrorKind::InvalidInput, "dimension must be positive");
  Matrix f(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      // Reduce j*k mod d so d = 2 produces exact +-1 entries.
      const double angle = 2.0 * std::numbers::pi * ((j * k) % dim) / dim;
      f(j, k) = scale * (((j * k) % dim) == 0 ? cplx(1.0) : std::polar(1.0, angle));
    }
  }
  if (dim == 2) f(1, 1) = -scale;
  std::vector<double> values;
  std::vector<std::string> labels;
  if (dim == 2) {
    values = {1.0, -1.0};
    labels = {"D", "Dperp"};
  } else {
    for (int k = 0; k < dim; ++k) values.push_back(k);
  }
  return from_eigenbasis(std::move(f), std::move(values), std::move(name), std::move(labels));
}

Matrix Observable::projector(int k) const {
  if (k < 0 || k >= dim()) fail(ErrorKind::InvalidInput, "outcome index out of range");
  const Vector v = vectors_.col(k);
  return v * v.adjoint();
}

namespace {

Matrix heisenberg_propagator(const Matrix &hamiltonian, double dt) {
  if (!is_hermitian(hamiltonian)) {
    fail(ErrorKind::InvalidInput, "Hamiltonian is not Hermitian");
  }
  const Matrix h = 0.5 * (hamiltonian + hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Matrix &w = solver.eigenvectors();
  Vector phases(w.cols());
  for (Eigen::Index k = 0; k < w.cols(); ++k) {
    phases(k) = std::polar(1.0, solver.eigenvalues()(k) * dt);
  }
  return w * phases.asDiagonal() * w.adjoint();
}

}  // namespace

Observable Observable::evolved(const Matrix &hamiltonian, double dt) const {
  if (hamiltonian.rows() != dim() || hamiltonian.cols() != dim()) {
    fail(ErrorKind::DimensionMismatch, "Hamiltonian dimension does not match observable");
  }
  const Matrix u = heisenberg_propagator(hamiltonian, dt);
  return Observable(u * vectors_, values_, name_, labels_);
}

// ---------------------------------------------------------------------------
// Strength and pointer

WeakStrength WeakStrength::from_K(double K, int dim) {
  if (!(K >= 0.0 && K <= 1.0)) {
    fail(ErrorKind::Range, "measurement strength K must lie in [0,1]");
  }
  if (dim < 2) fail(ErrorKind::InvalidInput, "dimension must be at least 2");
  const double d = dim;
  const double omega1 = std::sqrt(1.0 - K);
  const double disc = std::max(0.0, 1.0 - omega1 * omega1 * (d - 1.0) / d);
  // K = 0 pins omega0 to zero exactly; the root formula leaves rounding dust.
  const double omega0 =
      K == 0.0 ? 0.0 : std::max(0.0, -omega1 / std::sqrt(d) + std::sqrt(disc));
  return WeakStrength{K, omega0, omega1, dim};
}

double WeakStrength::coherence_weight() const {
  return 2.0 * omega0 * omega1 / std::sqrt(static_cast<double>(dim));
}

double WeakStrength::normalization_residual() const {
  return omega0 * omega0 + omega1 * omega1 + coherence_weight() - 1.0;
}

std::pair<PointerState, WeakStrength> pointer_for_strength(double K, int dim) {
  const WeakStrength strength = WeakStrength::from_K(K, dim);
  const double d = dim;
  PointerState pointer;
  pointer.u1 = strength.omega1 * std::sqrt((d - 1.0) / d);
  pointer.u0 = strength.omega0 + pointer.u1 / std::sqrt(d - 1.0);
  pointer.amplitudes = Vector::Constant(dim, cplx(pointer.u1 / std::sqrt(d - 1.0)));
  pointer.amplitudes(0) = pointer.u0;
  return {pointer, strength};
}

Matrix shift_operator(int dim) {
  if (dim < 2) fail(ErrorKind::InvalidInput, "shift operator needs d >= 2");
  Matrix v = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) v((a + 1) % dim, a) = 1.0;
  return v;
}

Matrix coupling_unitary(int dim) {
  if (dim < 2) fail(ErrorKind::InvalidInput, "coupling unitary needs d >= 2");
  return coupling_unitary(Observable::computational(dim));
}

Matrix coupling_unitary(const Observable &control) {
  const int d = control.dim();
  if (d < 2) fail(ErrorKind::InvalidInput, "coupling unitary needs d >= 2");
  const Matrix v = shift_operator(d);
  Matrix power = Matrix::Identity(d, d);
  Matrix u = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a) {
    u += kron(control.projector(a), power);
    power = v * power;
  }
  return u;
}

Matrix evolve_projector(const Matrix &projector, const Matrix &hamiltonian, double dt) {
  if (projector.rows() != projector.cols() || hamiltonian.rows() != projector.rows() ||
      hamiltonian.cols() != projector.cols()) {
    fail(ErrorKind::DimensionMismatch, "projector and Hamiltonian dimensions differ");
  }
  if (!is_hermitian(projector) || max_abs(projector * projector - projector) > kValidationTol) {
    fail(ErrorKind::InvalidInput, "operator is not an orthogonal projector");
  }
  const Matrix u = heisenberg_propagator(hamiltonian, dt);
  return u * projector * u.adjoint();
}

double born_probability(const DensityOperator &rho, const Matrix &projector) {
  if (projector.rows() != rho.dim() || projector.cols() != rho.dim()) {
    fail(ErrorKind::DimensionMismatch, "projector and state dimensions differ");
  }
  double p = (projector * rho.matrix()).trace().real();
  if (p < 0.0 && p > -kValidationTol) p = 0.0;
  if (p > 1.0 && p < 1.0 + kValidationTol) p = 1.0;
  return p;
}

}  // namespace weakquasi
