// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

// Toy conditional flow matching. Data x0 sits at t = 0 and standard normal
// noise x1 at t = 1; the model regresses the constant velocity x1 - x0 along
// the straight path x_t = (1 - t) x0 + t x1.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "synthvid/error.hpp"

namespace synthvid {

inline constexpr int kNullCondition = -1;
inline constexpr int kHiddenWidth = 64;

/// Dense network [x, t, onehot(cond or null)] -> tanh(64) -> tanh(64) -> v.
/// The null token occupies the last one-hot slot.
template <typename Scalar>
struct BasicVelocityModel {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int data_dim = 0;
  int cond_dim = 0;
  Matrix w1, w2, w3;
  Vector b1, b2, b3;

  int input_dim() const { return data_dim + 1 + cond_dim + 1; }

  /// Zero-valued parameters with the right shapes.
  static BasicVelocityModel zeros(int data_dim, int cond_dim) {
    BasicVelocityModel m;
    m.data_dim = data_dim;
    m.cond_dim = cond_dim;
    m.w1 = Matrix::Zero(kHiddenWidth, m.input_dim());
    m.b1 = Vector::Zero(kHiddenWidth);
    m.w2 = Matrix::Zero(kHiddenWidth, kHiddenWidth);
    m.b2 = Vector::Zero(kHiddenWidth);
    m.w3 = Matrix::Zero(data_dim, kHiddenWidth);
    m.b3 = Vector::Zero(data_dim);
    return m;
  }

  Eigen::Index parameter_count() const {
    return w1.size() + b1.size() + w2.size() + b2.size() + w3.size() + b3.size();
  }

  /// Applies fn to every parameter block in checkpoint order.
  template <typename Fn>
  void for_each_block(Fn&& fn) {
    fn(w1), fn(b1), fn(w2), fn(b2), fn(w3), fn(b3);
  }
  template <typename Fn>
  void for_each_block(Fn&& fn) const {
    fn(w1), fn(b1), fn(w2), fn(b2), fn(w3), fn(b3);
  }

  Vector flatten() const {
    Vector out(parameter_count());
    Eigen::Index at = 0;
    for_each_block([&](const auto& b) {
      out.segment(at, b.size()) = b.reshaped();
      at += b.size();
    });
    return out;
  }

  void unflatten(const Vector& flat) {
    if (flat.size() != parameter_count()) throw PreconditionError("unflatten: parameter count mismatch");
    Eigen::Index at = 0;
    for_each_block([&](auto& b) {
      b.reshaped() = flat.segment(at, b.size());
      at += b.size();
    });
  }

  bool operator==(const BasicVelocityModel&) const = default;
};

using VelocityModel = BasicVelocityModel<double>;

/// Network input columns for a batch: x (data_dim x B), t and cond per column.
template <typename Scalar>
typename BasicVelocityModel<Scalar>::Matrix encode_inputs(
    const BasicVelocityModel<Scalar>& model,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& t, const std::vector<int>& cond) {
  const Eigen::Index batch = x.cols();
  if (x.rows() != model.data_dim || t.size() != batch || static_cast<Eigen::Index>(cond.size()) != batch) {
    throw PreconditionError("velocity model: input dimensions do not match the model");
  }
  typename BasicVelocityModel<Scalar>::Matrix in =
      BasicVelocityModel<Scalar>::Matrix::Zero(model.input_dim(), batch);
  in.topRows(model.data_dim) = x;
  in.row(model.data_dim) = t.transpose();
  for (Eigen::Index j = 0; j < batch; ++j) {
    const int c = cond[j];
    if (c != kNullCondition && (c < 0 || c >= model.cond_dim)) {
      throw PreconditionError("velocity model: condition label out of range");
    }
    in(model.data_dim + 1 + (c == kNullCondition ? model.cond_dim : c), j) = Scalar(1);
  }
  return in;
}

/// Batched forward pass; column j is the velocity at (x.col(j), t[j], cond[j]).
template <typename Scalar>
typename BasicVelocityModel<Scalar>::Matrix evaluate(
    const BasicVelocityModel<Scalar>& model,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& t, const std::vector<int>& cond) {
  using Matrix = typename BasicVelocityModel<Scalar>::Matrix;
  const Matrix in = encode_inputs(model, x, t, cond);
  const Matrix a1 = ((model.w1 * in).colwise() + model.b1).array().tanh().matrix();
  const Matrix a2 = ((model.w2 * a1).colwise() + model.b2).array().tanh().matrix();
  return (model.w3 * a2).colwise() + model.b3;
}

/// Velocity at one point at a uniform time and condition.
template <typename Scalar>
typename BasicVelocityModel<Scalar>::Matrix evaluate(
    const BasicVelocityModel<Scalar>& model,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x, Scalar t, int cond) {
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> times =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Constant(x.cols(), t);
  return evaluate(model, x, times, std::vector<int>(static_cast<std::size_t>(x.cols()), cond));
}

template <typename Scalar>
struct BasicLossGradient {
  Scalar loss = Scalar(0);
  BasicVelocityModel<Scalar> gradient;
};

/// Mean over columns of ||model(x_t, t, cond) - (x1 - x0)||^2 and its exact
/// gradient, with x_t = (1 - t) x0 + t x1 per column.
template <typename Scalar>
BasicLossGradient<Scalar> flow_match_loss(
    const BasicVelocityModel<Scalar>& model,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x0,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& x1,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& t, const std::vector<int>& cond) {
  using Matrix = typename BasicVelocityModel<Scalar>::Matrix;
  if (x0.rows() != x1.rows() || x0.cols() != x1.cols() || x0.cols() == 0) {
    throw PreconditionError("flow_match_loss: x0 and x1 must have equal nonempty shapes");
  }
  const Eigen::Index batch = x0.cols();
  const Matrix xt = x0 * (Scalar(1) - t.array()).matrix().asDiagonal() + x1 * t.asDiagonal();
  const Matrix target = x1 - x0;

  const Matrix in = encode_inputs(model, xt, t, cond);
  const Matrix a1 = ((model.w1 * in).colwise() + model.b1).array().tanh().matrix();
  const Matrix a2 = ((model.w2 * a1).colwise() + model.b2).array().tanh().matrix();
  const Matrix residual = ((model.w3 * a2).colwise() + model.b3) - target;

  BasicLossGradient<Scalar> out;
  out.loss = residual.squaredNorm() / Scalar(batch);
  auto& g = out.gradient;
  g.data_dim = model.data_dim;
  g.cond_dim = model.cond_dim;

  const Matrix dy = residual * (Scalar(2) / Scalar(batch));
  g.w3 = dy * a2.transpose();
  g.b3 = dy.rowwise().sum();
  const Matrix dz2 = ((model.w3.transpose() * dy).array() * (Scalar(1) - a2.array().square())).matrix();
  g.w2 = dz2 * a1.transpose();
  g.b2 = dz2.rowwise().sum();
  const Matrix dz1 = ((model.w2.transpose() * dz2).array() * (Scalar(1) - a1.array().square())).matrix();
  g.w1 = dz1 * in.transpose();
  g.b1 = dz1.rowwise().sum();
  return out;
}

using LossGradient = BasicLossGradient<double>;

/// Gaussian init with standard deviation 1/sqrt(fan_in); zero biases.
VelocityModel make_model(int data_dim, int cond_dim, std::uint64_t seed);

/// Labelled points, one per column.
struct ToyDataset {
  Eigen::MatrixXd points;
  std::vector<int> labels;
  int cond_dim = 0;
};

/// Caption labels of the circle datasets.
enum ToyLabel : int { kRealLabel = 0, kSyntheticLabel = 1, kReferenceLabel = 2, kToyCondDim = 3 };

/// Four isotropic 2D Gaussians (std 0.35) centred on (+-1, +-1); unlabelled.
ToyDataset gaussian_mixture_2d(std::size_t n, std::uint64_t seed);
/// Half circle (angle in [0, 180] deg, radius 1) with z ~ N(0, 0.1^2).
ToyDataset toy_real(std::size_t n, std::uint64_t seed);
/// Full circle with z ~ N(2, 0.1^2), labelled `label`.
ToyDataset toy_synthetic(std::size_t n, std::uint64_t seed, int label = kSyntheticLabel);
/// Point k is synthetic with probability `ratio`, otherwise real.
ToyDataset toy_mixed(std::size_t n, double ratio, std::uint64_t seed);

struct TrainConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  /// Learning rate follows a cosine from learning_rate down to
  /// final_lr_fraction * learning_rate over the run.
  double final_lr_fraction = 0.0;
  int steps = 5000;
  int batch_size = 256;
  double cond_dropout = 0.1;
  std::uint64_t seed = 0;
};

struct TrainResult {
  VelocityModel model;
  std::vector<double> loss_trace;  ///< one batch loss per step
};

/// SGD with heavy-ball momentum and a cosine learning-rate decay. Each step draws a batch with replacement,
/// fresh noise and times, and replaces each condition by the null token with
/// probability cond_dropout. Throws NumericalError on a non-finite loss.
TrainResult train(const VelocityModel& model, const ToyDataset& dataset, const TrainConfig& cfg);

/// A batch of independent Euler chains, one per column, integrating from
/// t = 1 (noise) to t = 0 (data).
struct FlowState {
  Eigen::MatrixXd points;
  int step = 0;
  int n_steps = 1;
  double time() const { return 1.0 - static_cast<double>(step) / n_steps; }
  double dt() const { return 1.0 / n_steps; }
};

/// Column i is standard normal noise drawn from derive_seed(seed, i).
FlowState initial_state(int data_dim, std::size_t count, int n_steps, std::uint64_t seed);

/// x <- x - dt * v. Throws NumericalError on a non-finite result.
FlowState advance(const FlowState& state, const Eigen::MatrixXd& velocity);

FlowState euler_step(const VelocityModel& model, const FlowState& state, int cond);

/// `count` samples, each from its own seeded chain.
Eigen::MatrixXd sample_many(const VelocityModel& model, int cond, int n_steps, std::uint64_t seed,
                            std::size_t count);
Eigen::VectorXd sample(const VelocityModel& model, int cond, int n_steps, std::uint64_t seed);

/// V-statistic 2 E|X-Y| - E|X-X'| - E|Y-Y'| over columns (all pairs).
double energy_distance(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

struct CheckpointHeader {
  int data_dim = 0;
  int cond_dim = 0;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
};

/// One JSON header line followed by the parameters as little-endian doubles.
void save_checkpoint(const VelocityModel& model, const CheckpointHeader& header, const std::string& path);
VelocityModel load_checkpoint(const std::string& path, CheckpointHeader* header = nullptr);

}  // namespace synthvid
