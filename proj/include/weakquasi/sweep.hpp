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

// K-sweep over the weak-sequential experiment: for every strength the weak
// table, the two reference runs at K = 1 and K = 0, and every quantity
// derived from them. The OpenMP kernel parallelizes over K; the serial
// kernel is the reference it is tested against.

#include <cstdint>
#include <optional>
#include <vector>

#include "weakquasi/quasi.hpp"
#include "weakquasi/shots.hpp"

namespace weakquasi {

enum class Engine { Closed, Oracle };

struct SweepOptions {
  std::vector<double> K_grid;
  /// Poisson-sampled counts per setting; nullopt selects exact tables.
  std::optional<std::int64_t> shots;
  NoiseModel noise;
  int resamples = 200;
  std::uint64_t seed = 0;
  Engine engine = Engine::Closed;
};

/// A derived table and its Monte Carlo standard error (zero in exact mode).
struct Estimated {
  RealMatrix value;
  RealMatrix std_error;
};

struct SweepRecord {
  double K = 0.0;
  WeakStrength strength;
  Estimated p_weak;
  Estimated weak_cq;
  /// Absent at K = 1, where no weak data constrains the MHQ.
  std::optional<Estimated> weak_mhq;
  Estimated coherence;
  /// Absent at K in {0, 1}.
  std::optional<Estimated> mhq_reconstructed;
  std::optional<CountTable> counts;
};

struct SweepResult {
  Estimated p_tpm;   ///< K = 1 reference run
  Estimated p_fin;   ///< column vector, from the K = 0 reference run
  Estimated cq;      ///< CQ from the two reference runs
  RealMatrix mhq;    ///< exact MHQ of the prepared state
  ThresholdReport thresholds;
  std::vector<SweepRecord> records;  ///< in K_grid order
};

/// Exact weak-sequential table for strength K under the chosen engine.
JointDistribution exact_weak_table(const Scenario &scenario, double K, const SweepOptions &options);

/// Derived quantities from three (estimated or exact) tables.
struct DerivedTables {
  RealMatrix weak_cq;
  std::optional<RealMatrix> weak_mhq;
  RealMatrix coherence;
  std::optional<RealMatrix> mhq_reconstructed;
};
DerivedTables derive_tables(const JointDistribution &p_weak, const JointDistribution &p_tpm,
                            const RealVector &p_fin, const WeakStrength &strength);

SweepResult run_scenario(const Scenario &scenario, const SweepOptions &options);
SweepResult run_scenario_serial(const Scenario &scenario, const SweepOptions &options);

}  // namespace weakquasi
