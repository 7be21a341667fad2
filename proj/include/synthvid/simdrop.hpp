// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synthvid/flowlab.hpp"

namespace synthvid {

/// Weights and prompts of the guided velocity
///   v* = gen(l, t) - alpha (ref(l, t_hat) - ref(l, n_hat)) + beta (gen(l, t) - gen(l, n)).
/// Defaults: the unconditional prompt for gen, the tagged synthetic label as
/// its negative, and the reference model's own training label against null.
struct GuidanceParams {
  double alpha = 0.0;
  double beta = 0.3;
  int t = kNullCondition;
  int n = kSyntheticLabel;
  int t_hat = kReferenceLabel;
  int n_hat = kNullCondition;
  bool operator==(const GuidanceParams&) const = default;
};

using GuidedSamplerState = FlowState;

/// model(l, t_cond) - model(l, n_cond) at the state's integration time.
Eigen::MatrixXd guidance_delta(const VelocityModel& model, const Eigen::MatrixXd& l, double time,
                               int t_cond, int n_cond);

/// The guided velocity v*; gen(l, t) is evaluated once and shared.
Eigen::MatrixXd simdrop_velocity(const VelocityModel& gen, const VelocityModel& ref,
                                 const GuidedSamplerState& state, const GuidanceParams& params);

/// Classifier-free guidance alone: gen(l, t) + beta (gen(l, t) - gen(l, n)).
Eigen::MatrixXd cfg_velocity(const VelocityModel& gen, const GuidedSamplerState& state, int t, int n,
                             double beta);

/// One Euler step with v*, same convention as flowlab's sampler.
GuidedSamplerState simdrop_step(const VelocityModel& gen, const VelocityModel& ref,
                                const GuidedSamplerState& state, const GuidanceParams& params);
GuidedSamplerState cfg_step(const VelocityModel& gen, const GuidedSamplerState& state, int t, int n,
                            double beta);

/// Full guided integration of `count` chains from t = 1 to t = 0.
Eigen::MatrixXd simdrop_sample(const VelocityModel& gen, const VelocityModel& ref,
                               const GuidanceParams& params, int n_steps, std::uint64_t seed,
                               std::size_t count);

/// The three toy models of a transfer experiment. `base` is pretrained on
/// the real half circle; `gen` continues from it on the 50/50 mixture; `ref`
/// continues from it on synthetic points under the reference label only,
/// without condition dropout, so its null branch keeps the real prior.
struct ToyModels {
  VelocityModel base;
  VelocityModel gen;
  VelocityModel ref;
};

struct ToyTrainingPlan {
  std::size_t dataset_size = 20000;
  int base_steps = 5000;
  int gen_steps = 5000;
  int ref_steps = 2000;
  double learning_rate = 0.01;
  int batch_size = 256;
  double cond_dropout = 0.1;
};

ToyModels train_toy_models(std::uint64_t seed, const ToyTrainingPlan& plan = {});

inline constexpr int kAngleBins = 36;

struct ExperimentReport {
  std::size_t n_samples = 0;
  int covered_bins = 0;
  double angular_coverage = 0.0;  ///< covered_bins / 36
  /// Undefined (empty) when there are no samples.
  std::optional<double> artifact_mean;
  std::optional<double> artifact_abs_mean;
};

/// Coverage of 36 equal bins of atan2(y, x) over [0, 360) and statistics of
/// the z coordinate, for 3D samples stored one per column.
ExperimentReport summarize_samples(const Eigen::MatrixXd& samples);

inline constexpr int kDefaultGuidedSteps = 100;

ExperimentReport run_simdrop_experiment(const VelocityModel& gen, const VelocityModel& ref,
                                        const GuidanceParams& params, std::size_t n_samples,
                                        std::uint64_t seed, int n_steps = kDefaultGuidedSteps);

/// JSON object with n_samples, covered_bins, angular_coverage and the two
/// artifact means (null when undefined).
std::string report_to_json(const ExperimentReport& report);

}  // namespace synthvid
