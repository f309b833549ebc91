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

// Finite-statistics model of the photonic experiment: Poisson coincidence
// counts, count-table estimators with Monte Carlo error bars, and a
// gate-visibility noise model acting on the system-pointer state.

#include <cstdint>
#include <random>
#include <string>

#include "weakquasi/measure.hpp"

namespace weakquasi {

/// Counter-based splittable seed. Children are derived by hashing the parent
/// key with a tag, so a stream depends only on its path from the root seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  Rng split(std::uint64_t tag) const { return Rng(key_, tag); }
  std::uint64_t key() const { return key_; }
  std::mt19937_64 engine() const { return std::mt19937_64(mix(key_)); }

  static std::uint64_t mix(std::uint64_t x);

 private:
  Rng(std::uint64_t parent, std::uint64_t tag)
      : key_(mix(parent + 0x9e3779b97f4a7c15ULL * (tag + 1))) {}
  std::uint64_t key_;
};

/// Poisson(mean) draw; mean == 0 yields 0.
std::int64_t draw_poisson(std::mt19937_64 &engine, double mean);

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct MeasurementSetting {
  double K = 1.0;
  std::string scenario;
};

struct CountTable {
  CountMatrix counts;
  double shots_target = 0.0;
  std::uint64_t seed = 0;
  MeasurementSetting setting;

  std::int64_t total() const { return counts.sum(); }
  /// counts / total; zero table when empty.
  RealMatrix frequencies() const;
};

struct NoiseModel {
  /// Gate interference visibility; 1 is the ideal gate.
  double visibility = 1.0;

  static NoiseModel ideal() { return {}; }
  void validate() const;
};

/// Each cell drawn independently as Poisson(N p(a,b)).
CountTable sample_counts(const JointDistribution &dist, std::int64_t shots, std::uint64_t seed,
                         MeasurementSetting setting = {});
CountTable sample_counts(const JointDistribution &dist, std::int64_t shots, const Rng &rng,
                         MeasurementSetting setting = {});

struct Estimate {
  JointDistribution dist;
  RealMatrix std_error;
};

/// Point estimate counts / total with the standard deviation of the same
/// estimator over Poisson re-draws centred on the observed counts.
/// Resamples run in parallel; each resample owns its own RNG stream.
Estimate estimate_with_errors(const CountTable &counts, int resamples, std::uint64_t seed);
/// Serial reference for estimate_with_errors; identical output.
Estimate estimate_with_errors_serial(const CountTable &counts, int resamples, std::uint64_t seed);

/// Poisson re-draw of every cell with mean equal to the observed count.
CountMatrix resample_counts(const CountMatrix &observed, std::mt19937_64 &engine);

/// visibility * sigma + (1 - visibility) * D(sigma), D dephasing the pointer
/// (second tensor factor) in its computational basis.
DensityOperator apply_gate_noise(const DensityOperator &joint, const NoiseModel &model);

/// Weak-sequential statistics with the noise applied to the system-pointer
/// state entering the coupling gate.
JointDistribution weak_sequential_noisy(const DensityOperator &rho, const Observable &A,
                                        const Observable &B, double K, const NoiseModel &model);

struct Scenario {
  DensityOperator rho;
  Observable A;
  Observable B;
  std::string id;
};

/// cos(2 theta0)|H> + sin(2 theta0)|V> with A = Z and B = X; degrees.
Scenario qubit_scenario(double theta0_deg);

/// K = 2 cos^2(2 phi) - 1 for the pointer waveplate angle phi in [0, 22.5] deg.
double strength_from_phi(double phi_deg);

}  // namespace weakquasi
