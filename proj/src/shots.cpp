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

#include "weakquasi/shots.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <vector>

#include <omp.h>

namespace weakquasi {

std::uint64_t Rng::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t draw_poisson(std::mt19937_64 &engine, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    fail(ErrorKind::InvalidInput, "Poisson mean must be finite and nonnegative");
  }
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(engine);
}

RealMatrix CountTable::frequencies() const {
  const std::int64_t n = total();
  if (n <= 0) return RealMatrix::Zero(counts.rows(), counts.cols());
  return counts.cast<double>() / static_cast<double>(n);
}

void NoiseModel::validate() const {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    fail(ErrorKind::Range, "gate visibility must lie in [0,1]");
  }
}

CountTable sample_counts(const JointDistribution &dist, std::int64_t shots, const Rng &rng,
                         MeasurementSetting setting) {
  if (dist.kind != DistributionKind::Probability) {
    fail(ErrorKind::InvalidKind, "counts can only be sampled from a probability table");
  }
  if (shots < 1) fail(ErrorKind::InvalidInput, "shot count must be at least 1");
  std::mt19937_64 engine = rng.engine();
  CountTable table;
  table.counts.resize(dist.values.rows(), dist.values.cols());
  for (Eigen::Index a = 0; a < dist.values.rows(); ++a) {
    for (Eigen::Index b = 0; b < dist.values.cols(); ++b) {
      table.counts(a, b) = draw_poisson(engine, static_cast<double>(shots) * dist.values(a, b));
    }
  }
  table.shots_target = static_cast<double>(shots);
  table.seed = rng.key();
  table.setting = std::move(setting);
  return table;
}

CountTable sample_counts(const JointDistribution &dist, std::int64_t shots, std::uint64_t seed,
                         MeasurementSetting setting) {
  CountTable table = sample_counts(dist, shots, Rng(seed), std::move(setting));
  table.seed = seed;
  return table;
}

CountMatrix resample_counts(const CountMatrix &observed, std::mt19937_64 &engine) {
  CountMatrix out(observed.rows(), observed.cols());
  for (Eigen::Index a = 0; a < observed.rows(); ++a) {
    for (Eigen::Index b = 0; b < observed.cols(); ++b) {
      out(a, b) = draw_poisson(engine, static_cast<double>(observed(a, b)));
    }
  }
  return out;
}

namespace {

void check_estimate_inputs(const CountTable &counts, int resamples) {
  if (counts.total() <= 0) fail(ErrorKind::InvalidInput, "count table is empty");
  if (resamples < 100) fail(ErrorKind::InvalidInput, "at least 100 resamples are required");
  if ((counts.counts.array() < 0).any()) {
    fail(ErrorKind::InvalidInput, "count table has negative entries");
  }
}

RealMatrix resampled_frequencies(const CountTable &counts, const Rng &root, int r) {
  std::mt19937_64 engine = root.split(static_cast<std::uint64_t>(r)).engine();
  const CountMatrix drawn = resample_counts(counts.counts, engine);
  const std::int64_t n = drawn.sum();
  if (n <= 0) return RealMatrix::Zero(drawn.rows(), drawn.cols());
  return drawn.cast<double>() / static_cast<double>(n);
}

Estimate finish_estimate(const CountTable &counts, const std::vector<RealMatrix> &draws) {
  const RealMatrix point = counts.frequencies();
  RealMatrix mean = RealMatrix::Zero(point.rows(), point.cols());
  for (const auto &d : draws) mean += d;
  mean /= static_cast<double>(draws.size());
  RealMatrix var = RealMatrix::Zero(point.rows(), point.cols());
  for (const auto &d : draws) var += (d - mean).array().square().matrix();
  var /= static_cast<double>(draws.size() - 1);
  return Estimate{JointDistribution{point, DistributionKind::Probability, false},
                  var.array().sqrt().matrix()};
}

}  // namespace

Estimate estimate_with_errors(const CountTable &counts, int resamples, std::uint64_t seed) {
  check_estimate_inputs(counts, resamples);
  const Rng root(seed);
  std::vector<RealMatrix> draws(static_cast<std::size_t>(resamples));
#pragma omp parallel for schedule(static)
  for (int r = 0; r < resamples; ++r) {
    draws[static_cast<std::size_t>(r)] = resampled_frequencies(counts, root, r);
  }
  return finish_estimate(counts, draws);
}

Estimate estimate_with_errors_serial(const CountTable &counts, int resamples,
                                     std::uint64_t seed) {
  check_estimate_inputs(counts, resamples);
  const Rng root(seed);
  std::vector<RealMatrix> draws(static_cast<std::size_t>(resamples));
  for (int r = 0; r < resamples; ++r) {
    draws[static_cast<std::size_t>(r)] = resampled_frequencies(counts, root, r);
  }
  return finish_estimate(counts, draws);
}

DensityOperator apply_gate_noise(const DensityOperator &joint, const NoiseModel &model) {
  model.validate();
  const int n = joint.dim();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) fail(ErrorKind::DimensionMismatch, "joint state dimension is not a square");
  if (model.visibility == 1.0) return joint;
  Matrix out = joint.matrix();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i % d != j % d) out(i, j) *= model.visibility;
    }
  }
  return DensityOperator::from_matrix(std::move(out));
}

JointDistribution weak_sequential_noisy(const DensityOperator &rho, const Observable &A,
                                        const Observable &B, double K, const NoiseModel &model) {
  check_dimensions(rho, A, B);
  const auto [pointer, strength] = pointer_for_strength(K, rho.dim());
  const DensityOperator joint = apply_gate_noise(pointer_input_state(rho, pointer), model);
  return weak_sequential_from_joint(joint, A, B);
}

Scenario qubit_scenario(double theta0_deg) {
  if (!std::isfinite(theta0_deg)) fail(ErrorKind::InvalidInput, "theta0 must be finite");
  const double angle = 2.0 * theta0_deg * std::numbers::pi / 180.0;
  Vector psi(2);
  psi << std::cos(angle), std::sin(angle);
  return Scenario{make_pure_state(psi), Observable::pauli_z(), Observable::pauli_x(),
                  "qubit theta0=" + std::to_string(theta0_deg)};
}

double strength_from_phi(double phi_deg) {
  if (!(phi_deg >= 0.0 && phi_deg <= 22.5)) {
    fail(ErrorKind::Range, "pointer angle phi must lie in [0, 22.5] degrees");
  }
  const double c = std::cos(2.0 * phi_deg * std::numbers::pi / 180.0);
  return std::clamp(2.0 * c * c - 1.0, 0.0, 1.0);
}

}  // namespace weakquasi
