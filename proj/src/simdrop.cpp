// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/simdrop.hpp"

#include <cmath>
#include <numbers>

#include "synthvid/json_io.hpp"
#include "synthvid/random.hpp"

namespace synthvid {

Eigen::MatrixXd guidance_delta(const VelocityModel& model, const Eigen::MatrixXd& l, double time,
                               int t_cond, int n_cond) {
  return evaluate(model, l, time, t_cond) - evaluate(model, l, time, n_cond);
}

Eigen::MatrixXd simdrop_velocity(const VelocityModel& gen, const VelocityModel& ref,
                                 const GuidedSamplerState& state, const GuidanceParams& params) {
  if (gen.data_dim != ref.data_dim) throw PreconditionError("simdrop: gen and ref data dimensions differ");
  const double time = state.time();
  const Eigen::MatrixXd positive = evaluate(gen, state.points, time, params.t);
  const Eigen::MatrixXd negative = evaluate(gen, state.points, time, params.n);
  const Eigen::MatrixXd ref_delta = guidance_delta(ref, state.points, time, params.t_hat, params.n_hat);
  return positive - params.alpha * ref_delta + params.beta * (positive - negative);
}

Eigen::MatrixXd cfg_velocity(const VelocityModel& gen, const GuidedSamplerState& state, int t, int n,
                             double beta) {
  const double time = state.time();
  const Eigen::MatrixXd positive = evaluate(gen, state.points, time, t);
  const Eigen::MatrixXd negative = evaluate(gen, state.points, time, n);
  return positive + beta * (positive - negative);
}

GuidedSamplerState simdrop_step(const VelocityModel& gen, const VelocityModel& ref,
                                const GuidedSamplerState& state, const GuidanceParams& params) {
  return advance(state, simdrop_velocity(gen, ref, state, params));
}

GuidedSamplerState cfg_step(const VelocityModel& gen, const GuidedSamplerState& state, int t, int n,
                            double beta) {
  return advance(state, cfg_velocity(gen, state, t, n, beta));
}

Eigen::MatrixXd simdrop_sample(const VelocityModel& gen, const VelocityModel& ref,
                               const GuidanceParams& params, int n_steps, std::uint64_t seed,
                               std::size_t count) {
  GuidedSamplerState s = initial_state(gen.data_dim, count, n_steps, seed);
  while (s.step < s.n_steps) s = simdrop_step(gen, ref, s, params);
  return s.points;
}

ToyModels train_toy_models(std::uint64_t seed, const ToyTrainingPlan& plan) {
  TrainConfig cfg;
  cfg.learning_rate = plan.learning_rate;
  cfg.batch_size = plan.batch_size;
  cfg.cond_dropout = plan.cond_dropout;

  ToyModels m;
  cfg.steps = plan.base_steps;
  cfg.seed = derive_seed(seed, 1);
  m.base = train(make_model(3, kToyCondDim, derive_seed(seed, 0)), toy_real(plan.dataset_size, derive_seed(seed, 2)),
                 cfg)
               .model;
  cfg.steps = plan.gen_steps;
  cfg.seed = derive_seed(seed, 3);
  m.gen = train(m.base, toy_mixed(plan.dataset_size, 0.5, derive_seed(seed, 4)), cfg).model;
  cfg.steps = plan.ref_steps;
  cfg.seed = derive_seed(seed, 5);
  cfg.cond_dropout = 0.0;
  m.ref = train(m.base, toy_synthetic(plan.dataset_size, derive_seed(seed, 6), kReferenceLabel), cfg).model;
  return m;
}

ExperimentReport summarize_samples(const Eigen::MatrixXd& samples) {
  ExperimentReport r;
  r.n_samples = static_cast<std::size_t>(samples.cols());
  if (samples.cols() == 0) return r;
  if (samples.rows() != 3) throw PreconditionError("summarize_samples: expected 3D samples");
  std::array<bool, kAngleBins> hit{};
  double z_sum = 0.0, z_abs = 0.0;
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    double deg = std::atan2(samples(1, j), samples(0, j)) * 180.0 / std::numbers::pi;
    if (deg < 0.0) deg += 360.0;
    const int bin = std::min(kAngleBins - 1, static_cast<int>(deg / (360.0 / kAngleBins)));
    hit[static_cast<std::size_t>(bin)] = true;
    z_sum += samples(2, j);
    z_abs += std::abs(samples(2, j));
  }
  for (bool h : hit) r.covered_bins += h;
  r.angular_coverage = static_cast<double>(r.covered_bins) / kAngleBins;
  r.artifact_mean = z_sum / static_cast<double>(samples.cols());
  r.artifact_abs_mean = z_abs / static_cast<double>(samples.cols());
  return r;
}

ExperimentReport run_simdrop_experiment(const VelocityModel& gen, const VelocityModel& ref,
                                        const GuidanceParams& params, std::size_t n_samples,
                                        std::uint64_t seed, int n_steps) {
  if (n_samples == 0) return ExperimentReport{};
  return summarize_samples(simdrop_sample(gen, ref, params, n_steps, seed, n_samples));
}

std::string report_to_json(const ExperimentReport& report) {
  json_io::json j;
  j["n_samples"] = report.n_samples;
  j["covered_bins"] = report.covered_bins;
  j["angular_coverage"] = report.angular_coverage;
  j["artifact_mean"] = report.artifact_mean ? json_io::json(*report.artifact_mean) : json_io::json(nullptr);
  j["artifact_abs_mean"] =
      report.artifact_abs_mean ? json_io::json(*report.artifact_abs_mean) : json_io::json(nullptr);
  return j.dump(2);
}

}  // namespace synthvid
