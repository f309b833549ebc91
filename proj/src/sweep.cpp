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

#include "weakquasi/sweep.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <string>

#include <omp.h>

namespace weakquasi {

namespace {

// Root stream tags.
constexpr std::uint64_t kStreamReferenceOne = 1;
constexpr std::uint64_t kStreamReferenceZero = 2;
constexpr std::uint64_t kStreamMain = 3;
constexpr std::uint64_t kStreamResample = 4;
constexpr std::uint64_t kStreamReferenceResample = 5;

class StdAccumulator {
 public:
  void add(const RealMatrix &x) { samples_.push_back(x); }

  RealMatrix std_error() const {
    if (samples_.size() < 2) return RealMatrix();
    RealMatrix mean = RealMatrix::Zero(samples_[0].rows(), samples_[0].cols());
    for (const auto &s : samples_) mean += s;
    mean /= static_cast<double>(samples_.size());
    RealMatrix var = RealMatrix::Zero(mean.rows(), mean.cols());
    for (const auto &s : samples_) var += (s - mean).array().square().matrix();
    var /= static_cast<double>(samples_.size() - 1);
    return var.array().sqrt().matrix();
  }

 private:
  std::vector<RealMatrix> samples_;
};

JointDistribution frequencies_table(const CountMatrix &counts) {
  const std::int64_t n = counts.sum();
  RealMatrix f = n > 0 ? RealMatrix(counts.cast<double>() / static_cast<double>(n))
                       : RealMatrix::Zero(counts.rows(), counts.cols());
  return JointDistribution{std::move(f), DistributionKind::Probability, false};
}

Estimated exact(RealMatrix value) {
  RealMatrix zero = RealMatrix::Zero(value.rows(), value.cols());
  return Estimated{std::move(value), std::move(zero)};
}

struct Context {
  const Scenario &scenario;
  const SweepOptions &options;
  int dim;
  JointDistribution reference_one;   // exact or estimated p(a,b)
  JointDistribution reference_zero;  // exact or estimated K = 0 table
  std::optional<CountTable> counts_one;
  std::optional<CountTable> counts_zero;
  Rng root;
};

void validate(const Scenario &scenario, const SweepOptions &options) {
  check_dimensions(scenario.rho, scenario.A, scenario.B);
  if (options.K_grid.empty()) fail(ErrorKind::InvalidInput, "K grid is empty");
  for (double K : options.K_grid) {
    if (!(K >= 0.0 && K <= 1.0)) {
      fail(ErrorKind::Range, "K = " + std::to_string(K) + " lies outside [0,1]");
    }
  }
  options.noise.validate();
  if (options.shots) {
    if (*options.shots < 1) fail(ErrorKind::InvalidInput, "shot count must be at least 1");
    if (options.resamples < 100) {
      fail(ErrorKind::InvalidInput, "at least 100 resamples are required");
    }
  }
}

Context make_context(const Scenario &scenario, const SweepOptions &options) {
  validate(scenario, options);
  Context ctx{scenario,
              options,
              scenario.rho.dim(),
              exact_weak_table(scenario, 1.0, options),
              exact_weak_table(scenario, 0.0, options),
              std::nullopt,
              std::nullopt,
              Rng(options.seed)};
  if (options.shots) {
    ctx.counts_one = sample_counts(ctx.reference_one, *options.shots,
                                   ctx.root.split(kStreamReferenceOne), {1.0, scenario.id});
    ctx.counts_zero = sample_counts(ctx.reference_zero, *options.shots,
                                    ctx.root.split(kStreamReferenceZero), {0.0, scenario.id});
    ctx.reference_one = frequencies_table(ctx.counts_one->counts);
    ctx.reference_zero = frequencies_table(ctx.counts_zero->counts);
  }
  return ctx;
}

SweepRecord evaluate_point(const Context &ctx, std::size_t index) {
  const double K = ctx.options.K_grid[index];
  SweepRecord record;
  record.K = K;
  record.strength = WeakStrength::from_K(K, ctx.dim);

  const JointDistribution exact_table = exact_weak_table(ctx.scenario, K, ctx.options);
  JointDistribution p_weak = exact_table;
  if (ctx.options.shots) {
    record.counts = sample_counts(exact_table, *ctx.options.shots,
                                  ctx.root.split(kStreamMain).split(index), {K, ctx.scenario.id});
    p_weak = frequencies_table(record.counts->counts);
  }
  const RealVector p_fin = ctx.reference_zero.sum_over_a();
  const DerivedTables point = derive_tables(p_weak, ctx.reference_one, p_fin, record.strength);

  if (!ctx.options.shots) {
    record.p_weak = exact(p_weak.values);
    record.weak_cq = exact(point.weak_cq);
    record.coherence = exact(point.coherence);
    if (point.weak_mhq) record.weak_mhq = exact(*point.weak_mhq);
    if (point.mhq_reconstructed) record.mhq_reconstructed = exact(*point.mhq_reconstructed);
    return record;
  }

  StdAccumulator acc_weak, acc_cq, acc_mhq, acc_c, acc_rec;
  const Rng resample_root = ctx.root.split(kStreamResample).split(index);
  for (int r = 0; r < ctx.options.resamples; ++r) {
    std::mt19937_64 engine = resample_root.split(static_cast<std::uint64_t>(r)).engine();
    const JointDistribution w = frequencies_table(resample_counts(record.counts->counts, engine));
    const JointDistribution one = frequencies_table(resample_counts(ctx.counts_one->counts, engine));
    const JointDistribution zero =
        frequencies_table(resample_counts(ctx.counts_zero->counts, engine));
    const DerivedTables d = derive_tables(w, one, zero.sum_over_a(), record.strength);
    acc_weak.add(w.values);
    acc_cq.add(d.weak_cq);
    acc_c.add(d.coherence);
    if (d.weak_mhq) acc_mhq.add(*d.weak_mhq);
    if (d.mhq_reconstructed) acc_rec.add(*d.mhq_reconstructed);
  }
  record.p_weak = Estimated{p_weak.values, acc_weak.std_error()};
  record.weak_cq = Estimated{point.weak_cq, acc_cq.std_error()};
  record.coherence = Estimated{point.coherence, acc_c.std_error()};
  if (point.weak_mhq) record.weak_mhq = Estimated{*point.weak_mhq, acc_mhq.std_error()};
  if (point.mhq_reconstructed) {
    record.mhq_reconstructed = Estimated{*point.mhq_reconstructed, acc_rec.std_error()};
  }
  return record;
}

void fill_references(const Context &ctx, SweepResult &result) {
  const RealVector p_fin = ctx.reference_zero.sum_over_a();
  const RealMatrix cq_value = cq_from_data(ctx.reference_one, p_fin, ctx.dim).values;
  result.mhq = mhq(ctx.scenario.rho, ctx.scenario.A, ctx.scenario.B).values;
  result.thresholds = threshold_K(ctx.scenario.rho, ctx.scenario.A, ctx.scenario.B);
  if (!ctx.options.shots) {
    result.p_tpm = exact(ctx.reference_one.values);
    result.p_fin = exact(p_fin);
    result.cq = exact(cq_value);
    return;
  }
  StdAccumulator acc_one, acc_fin, acc_cq;
  const Rng resample_root = ctx.root.split(kStreamReferenceResample);
  for (int r = 0; r < ctx.options.resamples; ++r) {
    std::mt19937_64 engine = resample_root.split(static_cast<std::uint64_t>(r)).engine();
    const JointDistribution one = frequencies_table(resample_counts(ctx.counts_one->counts, engine));
    const JointDistribution zero =
        frequencies_table(resample_counts(ctx.counts_zero->counts, engine));
    const RealVector fin = zero.sum_over_a();
    acc_one.add(one.values);
    acc_fin.add(fin);
    acc_cq.add(cq_from_data(one, fin, ctx.dim).values);
  }
  result.p_tpm = Estimated{ctx.reference_one.values, acc_one.std_error()};
  result.p_fin = Estimated{p_fin, acc_fin.std_error()};
  result.cq = Estimated{cq_value, acc_cq.std_error()};
}

std::string with_K(const std::exception &e, double K) {
  std::ostringstream msg;
  msg << "at K = " << K << ": " << e.what();
  return msg.str();
}

}  // namespace

JointDistribution exact_weak_table(const Scenario &scenario, double K,
                                   const SweepOptions &options) {
  if (options.noise.visibility != 1.0) {
    return weak_sequential_noisy(scenario.rho, scenario.A, scenario.B, K, options.noise);
  }
  if (options.engine == Engine::Oracle) {
    return weak_sequential_oracle(scenario.rho, scenario.A, scenario.B, K);
  }
  return weak_sequential_closed(scenario.rho, scenario.A, scenario.B, K);
}

DerivedTables derive_tables(const JointDistribution &p_weak, const JointDistribution &p_tpm,
                            const RealVector &p_fin, const WeakStrength &strength) {
  const int d = strength.dim;
  DerivedTables out;
  out.weak_cq = weak_cq_from_data(p_weak, p_fin, d, strength).values;
  out.coherence = coherence_term(p_weak, p_tpm, p_fin, strength);
  if (strength.omega0 * strength.omega1 > 0.0) {
    RealMatrix q = mhq_from_weak(p_weak, p_tpm, p_fin, strength).values;
    out.weak_mhq = weak_mhq_from_data(q, p_fin, strength).values;
    out.mhq_reconstructed = std::move(q);
  } else if (strength.K < 1.0) {
    // K = 0: the MHQ term carries zero weight.
    out.weak_mhq = weak_mhq_from_data(RealMatrix::Zero(d, d), p_fin, strength).values;
  }
  return out;
}

SweepResult run_scenario(const Scenario &scenario, const SweepOptions &options) {
  const Context ctx = make_context(scenario, options);
  SweepResult result;
  fill_references(ctx, result);
  const std::size_t n = options.K_grid.size();
  result.records.resize(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < n; ++k) {
    try {
      result.records[k] = evaluate_point(ctx, k);
    } catch (const Error &e) {
      errors[k] = std::make_exception_ptr(Error(e.kind(), with_K(e, options.K_grid[k])));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

SweepResult run_scenario_serial(const Scenario &scenario, const SweepOptions &options) {
  const Context ctx = make_context(scenario, options);
  SweepResult result;
  fill_references(ctx, result);
  for (std::size_t k = 0; k < options.K_grid.size(); ++k) {
    try {
      result.records.push_back(evaluate_point(ctx, k));
    } catch (const Error &e) {
      throw Error(e.kind(), with_K(e, options.K_grid[k]));
    }
  }
  return result;
}

}  // namespace weakquasi
