// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/flowlab.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>

#include "synthvid/json_io.hpp"
#include "synthvid/random.hpp"

namespace synthvid {

using json_io::json;

VelocityModel make_model(int data_dim, int cond_dim, std::uint64_t seed) {
  if (data_dim < 1 || cond_dim < 0) throw PreconditionError("make_model: invalid dimensions");
  VelocityModel m = VelocityModel::zeros(data_dim, cond_dim);
  Rng rng(seed);
  auto init = [&](Eigen::MatrixXd& w) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(w.cols()));
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = scale * rng.normal();
    }
  };
  init(m.w1);
  init(m.w2);
  init(m.w3);
  return m;
}

ToyDataset gaussian_mixture_2d(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ToyDataset d;
  d.points.resize(2, static_cast<Eigen::Index>(n));
  d.labels.assign(n, kNullCondition);
  for (Eigen::Index j = 0; j < d.points.cols(); ++j) {
    const auto c = rng.index(4);
    const double cx = (c & 1) ? 1.0 : -1.0;
    const double cy = (c & 2) ? 1.0 : -1.0;
    d.points(0, j) = rng.normal(cx, 0.35);
    d.points(1, j) = rng.normal(cy, 0.35);
  }
  return d;
}

namespace {

void circle_point(Rng& rng, double max_deg, double z_mean, Eigen::Ref<Eigen::VectorXd> out) {
  const double a = rng.uniform(0.0, max_deg) * std::numbers::pi / 180.0;
  out[0] = std::cos(a);
  out[1] = std::sin(a);
  out[2] = rng.normal(z_mean, 0.1);
}

}  // namespace

ToyDataset toy_real(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ToyDataset d;
  d.cond_dim = kToyCondDim;
  d.points.resize(3, static_cast<Eigen::Index>(n));
  d.labels.assign(n, kRealLabel);
  for (Eigen::Index j = 0; j < d.points.cols(); ++j) circle_point(rng, 180.0, 0.0, d.points.col(j));
  return d;
}

ToyDataset toy_synthetic(std::size_t n, std::uint64_t seed, int label) {
  Rng rng(seed);
  ToyDataset d;
  d.cond_dim = kToyCondDim;
  d.points.resize(3, static_cast<Eigen::Index>(n));
  d.labels.assign(n, label);
  for (Eigen::Index j = 0; j < d.points.cols(); ++j) circle_point(rng, 360.0, 2.0, d.points.col(j));
  return d;
}

ToyDataset toy_mixed(std::size_t n, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw PreconditionError("toy_mixed: ratio must lie in [0, 1]");
  Rng rng(seed);
  ToyDataset d;
  d.cond_dim = kToyCondDim;
  d.points.resize(3, static_cast<Eigen::Index>(n));
  d.labels.resize(n);
  for (Eigen::Index j = 0; j < d.points.cols(); ++j) {
    const bool syn = rng.uniform01() < ratio;
    circle_point(rng, syn ? 360.0 : 180.0, syn ? 2.0 : 0.0, d.points.col(j));
    d.labels[static_cast<std::size_t>(j)] = syn ? kSyntheticLabel : kRealLabel;
  }
  return d;
}

TrainResult train(const VelocityModel& model, const ToyDataset& dataset, const TrainConfig& cfg) {
  if (dataset.points.cols() == 0) throw PreconditionError("train: dataset is empty");
  if (dataset.points.rows() != model.data_dim || dataset.cond_dim > model.cond_dim) {
    throw PreconditionError("train: dataset dimensions do not match the model");
  }
  if (static_cast<Eigen::Index>(dataset.labels.size()) != dataset.points.cols()) {
    throw PreconditionError("train: one label per point required");
  }
  if (!(cfg.learning_rate > 0.0) || cfg.steps < 0 || cfg.batch_size < 1 ||
      !(cfg.cond_dropout >= 0.0 && cfg.cond_dropout < 1.0) || !(cfg.momentum >= 0.0 && cfg.momentum < 1.0) ||
      !(cfg.final_lr_fraction >= 0.0 && cfg.final_lr_fraction <= 1.0)) {
    throw PreconditionError("train: invalid training configuration");
  }

  TrainResult out;
  out.model = model;
  out.loss_trace.reserve(static_cast<std::size_t>(cfg.steps));
  Eigen::VectorXd params = model.flatten();
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(params.size());

  Rng rng(cfg.seed);
  const auto n = static_cast<std::uint64_t>(dataset.points.cols());
  const Eigen::Index batch = cfg.batch_size;
  Eigen::MatrixXd x0(model.data_dim, batch), x1(model.data_dim, batch);
  Eigen::VectorXd t(batch);
  std::vector<int> cond(static_cast<std::size_t>(batch));
  for (int step = 0; step < cfg.steps; ++step) {
    for (Eigen::Index j = 0; j < batch; ++j) {
      const auto idx = static_cast<Eigen::Index>(rng.index(n));
      x0.col(j) = dataset.points.col(idx);
      for (Eigen::Index i = 0; i < x1.rows(); ++i) x1(i, j) = rng.normal();
      t[j] = rng.uniform01();
      const bool drop = rng.uniform01() < cfg.cond_dropout;
      cond[static_cast<std::size_t>(j)] = drop ? kNullCondition : dataset.labels[static_cast<std::size_t>(idx)];
    }
    const LossGradient lg = flow_match_loss(out.model, x0, x1, t, cond);
    if (!std::isfinite(lg.loss)) {
      throw NumericalError("train: loss became non-finite at step " + std::to_string(step));
    }
    out.loss_trace.push_back(lg.loss);
    velocity = cfg.momentum * velocity + lg.gradient.flatten();
    const double progress = static_cast<double>(step) / cfg.steps;
    const double decay = cfg.final_lr_fraction +
                         (1.0 - cfg.final_lr_fraction) * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
    params -= cfg.learning_rate * decay * velocity;
    out.model.unflatten(params);
  }
  return out;
}

FlowState initial_state(int data_dim, std::size_t count, int n_steps, std::uint64_t seed) {
  if (n_steps < 1) throw PreconditionError("sampler: n_steps must be >= 1");
  FlowState s;
  s.n_steps = n_steps;
  s.points.resize(data_dim, static_cast<Eigen::Index>(count));
  for (Eigen::Index j = 0; j < s.points.cols(); ++j) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
    for (Eigen::Index i = 0; i < data_dim; ++i) s.points(i, j) = rng.normal();
  }
  return s;
}

FlowState advance(const FlowState& state, const Eigen::MatrixXd& velocity) {
  FlowState next = state;
  next.points = state.points - state.dt() * velocity;
  next.step = state.step + 1;
  if (!next.points.allFinite()) throw NumericalError("sampler: state became non-finite");
  return next;
}

FlowState euler_step(const VelocityModel& model, const FlowState& state, int cond) {
  return advance(state, evaluate(model, state.points, state.time(), cond));
}

Eigen::MatrixXd sample_many(const VelocityModel& model, int cond, int n_steps, std::uint64_t seed,
                            std::size_t count) {
  FlowState s = initial_state(model.data_dim, count, n_steps, seed);
  while (s.step < s.n_steps) s = euler_step(model, s, cond);
  return s.points;
}

Eigen::VectorXd sample(const VelocityModel& model, int cond, int n_steps, std::uint64_t seed) {
  return sample_many(model, cond, n_steps, seed, 1).col(0);
}

namespace {

double mean_pairwise(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    total += (a.colwise() - b.col(j)).colwise().norm().sum();
  }
  return total / (static_cast<double>(a.cols()) * static_cast<double>(b.cols()));
}

}  // namespace

double energy_distance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() == 0 || y.cols() == 0 || x.rows() != y.rows()) {
    throw PreconditionError("energy_distance: need nonempty samples of equal dimension");
  }
  return 2.0 * mean_pairwise(x, y) - mean_pairwise(x, x) - mean_pairwise(y, y);
}

static_assert(std::endian::native == std::endian::little, "checkpoints assume a little-endian host");

void save_checkpoint(const VelocityModel& model, const CheckpointHeader& header, const std::string& path) {
  json h;
  h["format"] = "synthvid-flow";
  h["schema"] = 1;
  h["data_dim"] = model.data_dim;
  h["cond_dim"] = model.cond_dim;
  h["hidden"] = kHiddenWidth;
  h["seed"] = header.seed;
  h["steps"] = header.steps;
  h["n_params"] = model.parameter_count();
  const Eigen::VectorXd flat = model.flatten();
  std::string bytes = h.dump() + "\n";
  const std::size_t offset = bytes.size();
  bytes.resize(offset + sizeof(double) * static_cast<std::size_t>(flat.size()));
  std::memcpy(bytes.data() + offset, flat.data(), sizeof(double) * static_cast<std::size_t>(flat.size()));
  json_io::write_file(path, bytes);
}

VelocityModel load_checkpoint(const std::string& path, CheckpointHeader* header) {
  using namespace json_io;
  const std::string bytes = read_file(path);
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw ParseError(path, "missing checkpoint header");
  const json h = parse(std::string_view(bytes).substr(0, nl));
  const std::string root;
  expect_keys(h, root, {"format", "schema", "data_dim", "cond_dim", "hidden", "seed", "steps", "n_params"});
  if (as_string(require(h, root, "format"), "/format") != "synthvid-flow" ||
      as_int(require(h, root, "schema"), "/schema") != 1 ||
      as_int(require(h, root, "hidden"), "/hidden") != kHiddenWidth) {
    throw ParseError(path, "unsupported checkpoint format");
  }
  const auto data_dim = as_int(require(h, root, "data_dim"), "/data_dim");
  const auto cond_dim = as_int(require(h, root, "cond_dim"), "/cond_dim");
  if (data_dim < 1 || data_dim > 1024 || cond_dim < 0 || cond_dim > 1024) {
    throw ParseError("/data_dim", "dimensions out of range");
  }
  VelocityModel m = VelocityModel::zeros(static_cast<int>(data_dim), static_cast<int>(cond_dim));
  const auto n_params = as_int(require(h, root, "n_params"), "/n_params");
  if (n_params != m.parameter_count() ||
      bytes.size() - nl - 1 != sizeof(double) * static_cast<std::size_t>(n_params)) {
    throw ParseError(path, "parameter block size does not match the header");
  }
  Eigen::VectorXd flat(n_params);
  std::memcpy(flat.data(), bytes.data() + nl + 1, sizeof(double) * static_cast<std::size_t>(n_params));
  if (!flat.allFinite()) throw ParseError(path, "non-finite parameters");
  m.unflatten(flat);
  if (header) {
    header->data_dim = m.data_dim;
    header->cond_dim = m.cond_dim;
    header->seed = as_u64(require(h, root, "seed"), "/seed");
    header->steps = as_int(require(h, root, "steps"), "/steps");
  }
  return m;
}

}  // namespace synthvid
