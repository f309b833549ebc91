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

// Finite-dimensional Hilbert-space primitives: density operators, rank-1
// observables, the system-pointer coupling and Heisenberg evolution.

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "weakquasi/error.hpp"

namespace weakquasi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tolerance for validating states, projectors and normalizations.
inline constexpr double kValidationTol = 1e-10;
/// Tolerance for exact algebraic identities.
inline constexpr double kIdentityTol = 1e-12;

double max_abs(const Matrix &m);
bool is_hermitian(const Matrix &m, double tol = kValidationTol);
bool is_unitary(const Matrix &m, double tol = kIdentityTol);
double min_eigenvalue_hermitian(const Matrix &m);

/// Kronecker product, first factor major: (a (x) b)[i*nb + k, j*nb + l].
Matrix kron(const Matrix &a, const Matrix &b);

class DensityOperator {
 public:
  /// Validates hermiticity, unit trace and positivity at kValidationTol.
  static DensityOperator from_matrix(Matrix m);
  static DensityOperator maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix &matrix() const { return matrix_; }

 private:
  explicit DensityOperator(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

/// |psi><psi| for the normalized amplitude vector.
DensityOperator make_pure_state(std::span<const cplx> amplitudes);
DensityOperator make_pure_state(const Vector &amplitudes);

/// Rank-1 spectral decomposition: d orthonormal eigenvectors with real
/// eigenvalue labels. Outcomes are addressed by index 0..d-1.
class Observable {
 public:
  static Observable from_eigenbasis(Matrix eigenvectors,
                                    std::vector<double> eigenvalues,
                                    std::string name,
                                    std::vector<std::string> labels = {});
  /// Computational basis; for d = 2 the labels are H, V.
  static Observable computational(int dim, std::string name = "Z");
  /// Discrete Fourier basis; for d = 2 this is the X eigenbasis D, Dperp.
  static Observable fourier(int dim, std::string name = "X");
  static Observable pauli_z() { return computational(2, "Z"); }
  static Observable pauli_x() { return fourier(2, "X"); }

  int dim() const { return static_cast<int>(vectors_.cols()); }
  const std::string &name() const { return name_; }
  const Matrix &eigenvectors() const { return vectors_; }
  Vector eigenvector(int k) const { return vectors_.col(k); }
  const std::vector<double> &eigenvalues() const { return values_; }
  const std::vector<std::string> &labels() const { return labels_; }
  Matrix projector(int k) const;

  /// Observable with every projector mapped to e^{iH dt} P e^{-iH dt}.
  Observable evolved(const Matrix &hamiltonian, double dt) const;

 private:
  Observable(Matrix vectors, std::vector<double> values, std::string name,
             std::vector<std::string> labels)
      : vectors_(std::move(vectors)), values_(std::move(values)),
        name_(std::move(name)), labels_(std::move(labels)) {}

  Matrix vectors_;
  std::vector<double> values_;
  std::string name_;
  std::vector<std::string> labels_;
};

/// Measurement strength K in [0,1] with K = 1 - omega1^2 and omega0 the
/// nonnegative root of omega0^2 + omega1^2 + 2 omega0 omega1 / sqrt(d) = 1.
struct WeakStrength {
  double K = 1.0;
  double omega0 = 1.0;
  double omega1 = 0.0;
  int dim = 2;

  static WeakStrength from_K(double K, int dim);

  /// 2 omega0 omega1 / sqrt(d), the weight of the coherent term.
  double coherence_weight() const;
  double normalization_residual() const;
};

struct PointerState {
  Vector amplitudes;
  double u0 = 1.0;
  double u1 = 0.0;

  int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// Pointer u0|0> + u1/sqrt(d-1) sum_{a!=0} |a> realizing strength K.
std::pair<PointerState, WeakStrength> pointer_for_strength(double K, int dim);

/// Cyclic shift V|a> = |a+1 mod d>.
Matrix shift_operator(int dim);

/// U = sum_a |a><a| (x) V^a on system (x) pointer.
Matrix coupling_unitary(int dim);
/// Same coupling with the control projectors taken in the eigenbasis of
/// `control`: U = sum_a Pi_a (x) V^a.
Matrix coupling_unitary(const Observable &control);

/// e^{iH dt} P e^{-iH dt} with hbar = 1.
Matrix evolve_projector(const Matrix &projector, const Matrix &hamiltonian,
                        double dt);

/// Tr[P rho], clamped into [0,1] when within kValidationTol of a bound.
double born_probability(const DensityOperator &rho, const Matrix &projector);

}  // namespace weakquasi
