// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "synthvid/camera_rig.hpp"
#include "synthvid/param_sampler.hpp"
#include "synthvid/random.hpp"

using namespace synthvid;
using synthvid::testing::spin_config;

namespace {

double orthonormality_error(const Eigen::Matrix3d& r) {
  return (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

Vec3 random_point(Rng& rng, double scale) {
  return Vec3(rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale));
}

SceneConfig with_movement(MovementType type, double value, FocusType focus = FocusType::Fixed) {
  auto cfg = spin_config();
  cfg.camera.movement_type = type;
  cfg.camera.movement_value = value;
  cfg.camera.focus_type = focus;
  return cfg;
}

}  // namespace

TEST_CASE("look_at rejects a view direction parallel to up") {
  CHECK_THROWS_AS(look_at<double>(Vec3(0, 0, 5), Vec3::Zero(), Vec3::UnitZ()), DegenerateGeometryError);
  CHECK_THROWS_AS(look_at<double>(Vec3(1, 2, 3), Vec3(1, 2, 3), Vec3::UnitZ()), DegenerateGeometryError);
}

TEST_CASE("look_at along +y") {
  const Eigen::Matrix3d r = look_at<double>(Vec3(0, -5, 0), Vec3::Zero(), Vec3::UnitZ());
  PinholeCamera cam;
  cam.rotation = r;
  CHECK((cam.forward() - Vec3(0, 1, 0)).norm() <= 1e-12);
  CHECK((cam.right() - Vec3(1, 0, 0)).norm() <= 1e-12);
  CHECK((cam.up() - Vec3(0, 0, 1)).norm() <= 1e-12);
}

TEST_CASE("look_at is orthonormal with det +1 over random draws") {
  Rng rng(1234);
  int checked = 0;
  while (checked < 1000) {
    const Vec3 p = random_point(rng, 10.0), t = random_point(rng, 10.0);
    const Vec3 dir = (t - p).normalized();
    if (dir.cross(Vec3::UnitZ()).norm() < 1e-6) continue;
    const Eigen::Matrix3d r = look_at<double>(p, t, Vec3::UnitZ());
    CHECK(orthonormality_error(r) <= 1e-9);
    CHECK(std::abs(r.determinant() - 1.0) <= 1e-9);
    CHECK((r.row(2).transpose() - dir).norm() <= 1e-9);
    ++checked;
  }
}

TEST_CASE("look_at works for float scalars") {
  const Eigen::Matrix3f r = look_at<float>(Eigen::Vector3f(0, -5, 1), Eigen::Vector3f::Zero(), Eigen::Vector3f::UnitZ());
  CHECK(std::abs(r.determinant() - 1.0f) <= 1e-5f);
}

TEST_CASE("focal_from_coverage worked values") {
  CHECK(focal_from_coverage(1.0, 10.0, 0.5) == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(focal_from_coverage(2.0, 4.0, 0.8) == doctest::Approx(19.2).epsilon(1e-12));
  CHECK_THROWS_AS(focal_from_coverage(1.0, 10.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(focal_from_coverage(1.0, 10.0, 1.01), PreconditionError);
  CHECK_THROWS_AS(focal_from_coverage(1.0, 0.5, 0.5), PreconditionError);
  CHECK_THROWS_AS(focal_from_coverage(0.0, 5.0, 0.5), PreconditionError);
}

TEST_CASE("focal_from_coverage is monotone in coverage and distance") {
  double prev = 0.0;
  for (double c = 0.05; c <= 1.0; c += 0.05) {
    const double f = focal_from_coverage(1.0, 6.0, c);
    CHECK(f > prev);
    prev = f;
  }
  prev = 0.0;
  for (double d = 1.5; d <= 20.0; d += 0.5) {
    const double f = focal_from_coverage(1.0, d, 0.5);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("project_point basics") {
  PinholeCamera cam;
  cam.position = Vec3(0, -5, 0);
  cam.rotation = look_at<double>(cam.position, Vec3::Zero(), Vec3::UnitZ());
  const auto on_axis = project_point(cam, Vec3(Vec3::Zero()), 64, 48);
  CHECK(std::abs(on_axis.pixel.x() - 32.0) <= 1e-9);
  CHECK(std::abs(on_axis.pixel.y() - 24.0) <= 1e-9);
  CHECK_FALSE(on_axis.behind);
  CHECK(on_axis.depth == doctest::Approx(5.0));
  CHECK(project_point(cam, Vec3(0, -8, 0), 64, 48).behind);
}

TEST_CASE("coverage maps the bounding radius to c * height / 2 pixels") {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    const double r = rng.uniform(0.2, 3.0);
    const double d = rng.uniform(r * 1.5, r * 10.0);
    const double c = rng.uniform(0.05, 1.0);
    const int h = 48 + static_cast<int>(rng.index(400));
    PinholeCamera cam;
    cam.position = Vec3(0, -d, 0);
    cam.rotation = look_at<double>(cam.position, Vec3::Zero(), Vec3::UnitZ());
    cam.focal_mm = focal_from_coverage(r, d, c);
    const auto pr = project_point(cam, Vec3(r, 0, 0), 2 * h, h);
    CHECK(std::abs((pr.pixel.x() - h) - c * h / 2.0) <= 1e-6);
  }
}

TEST_CASE("Spin 360 closes the orbit at constant radius") {
  const auto cfg = spin_config();
  const auto traj = generate_trajectory(cfg, Vec3::Zero(), 1.0);
  REQUIRE(traj.frames.size() == 73);
  CHECK((traj.frames.back().position - traj.frames.front().position).norm() <= 1e-6);
  const double r0 = (traj.frames[0].position - traj.focus_history[0]).norm();
  for (std::size_t k = 0; k < traj.frames.size(); ++k) {
    CHECK(std::abs((traj.frames[k].position - traj.focus_history[k]).norm() - r0) <= 1e-9);
    CHECK(orthonormality_error(traj.frames[k].rotation) <= 1e-9);
  }
  // Uniform angular velocity: successive positions subtend 5 degrees.
  for (std::size_t k = 1; k < traj.frames.size(); ++k) {
    Vec3 a = traj.frames[k - 1].position - traj.focus_history[0];
    Vec3 b = traj.frames[k].position - traj.focus_history[0];
    a.z() = b.z() = 0.0;
    const double angle = std::atan2(a.cross(b).z(), a.dot(b)) * 180.0 / M_PI;
    CHECK(angle == doctest::Approx(5.0).epsilon(1e-9));
  }
}

TEST_CASE("Dolly translates along forward with a constant rotation") {
  const auto traj = generate_trajectory(with_movement(MovementType::Dolly, 2.0), Vec3::Zero(), 1.0);
  CHECK(std::abs((traj.frames.back().position - traj.frames.front().position).norm() - 2.0) <= 1e-9);
  for (const auto& f : traj.frames) CHECK((f.rotation - traj.frames[0].rotation).cwiseAbs().maxCoeff() <= 1e-12);
  const Vec3 step = traj.frames[1].position - traj.frames[0].position;
  CHECK((step.normalized() - traj.frames[0].forward()).norm() <= 1e-9);
}

TEST_CASE("Zoom interpolates the focal length linearly") {
  auto cfg = with_movement(MovementType::Zoom, 30.0);
  cfg.n_frames = 5;
  cfg.camera.coverage = 0.5;
  // 0.5 * 12 * d / 1 = 50 mm.
  cfg.camera.initial_position = Vec3(0.0, -50.0 / 6.0, 0.0);
  const auto traj = generate_trajectory(cfg, Vec3::Zero(), 1.0);
  const double expected[] = {50.0, 57.5, 65.0, 72.5, 80.0};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(traj.frames[k].focal_mm - expected[k]) <= 1e-9);
  for (const auto& f : traj.frames) CHECK(f.position == traj.frames[0].position);

  cfg.camera.movement_value = -200.0;
  CHECK_THROWS_AS(generate_trajectory(cfg, Vec3::Zero(), 1.0), PreconditionError);
}

TEST_CASE("Truck and Pedestal translate along right and world up") {
  const auto truck = generate_trajectory(with_movement(MovementType::Truck, 1.5), Vec3::Zero(), 1.0);
  const Vec3 dt = truck.frames.back().position - truck.frames.front().position;
  CHECK((dt - 1.5 * truck.frames[0].right()).norm() <= 1e-9);
  const auto ped = generate_trajectory(with_movement(MovementType::Pedestal, -0.7), Vec3::Zero(), 1.0);
  const Vec3 dp = ped.frames.back().position - ped.frames.front().position;
  CHECK((dp - Vec3(0, 0, -0.7)).norm() <= 1e-9);
}

TEST_CASE("Tilt and Pan rotate about camera right and up") {
  const auto tilt = generate_trajectory(with_movement(MovementType::Tilt, 20.0), Vec3::Zero(), 1.0);
  const auto pan = generate_trajectory(with_movement(MovementType::Pan, -30.0), Vec3::Zero(), 1.0);
  const auto& t0 = tilt.frames.front();
  const auto& t1 = tilt.frames.back();
  CHECK(t1.position == t0.position);
  CHECK(std::acos(std::clamp(t0.forward().dot(t1.forward()), -1.0, 1.0)) * 180.0 / M_PI ==
        doctest::Approx(20.0).epsilon(1e-9));
  CHECK((t1.right() - t0.right()).norm() <= 1e-9);
  const auto& p0 = pan.frames.front();
  const auto& p1 = pan.frames.back();
  CHECK(std::acos(std::clamp(p0.forward().dot(p1.forward()), -1.0, 1.0)) * 180.0 / M_PI ==
        doctest::Approx(30.0).epsilon(1e-9));
  CHECK((p1.up() - p0.up()).norm() <= 1e-9);
  for (const auto& f : tilt.frames) CHECK(orthonormality_error(f.rotation) <= 1e-9);
}

TEST_CASE("Tilt or Pan with Follow focus is a configuration conflict") {
  CHECK_THROWS_AS(generate_trajectory(with_movement(MovementType::Tilt, 10.0, FocusType::Follow), Vec3::Zero(), 1.0),
                  ConfigurationConflictError);
  CHECK_THROWS_AS(generate_trajectory(with_movement(MovementType::Pan, 10.0, FocusType::Follow), Vec3::Zero(), 1.0),
                  ConfigurationConflictError);
}

TEST_CASE("Following keeps the frame-0 offset to the object") {
  auto cfg = with_movement(MovementType::Following, 0.0, FocusType::Follow);
  cfg.object_animation.kind = AnimationKind::Translate;
  cfg.object_animation.velocity = Vec3(0.4, 0.1, 0.0);
  const auto traj = generate_trajectory(cfg, Vec3::Zero(), 1.0);
  const Vec3 offset0 = traj.frames[0].position - animated_center(cfg, Vec3::Zero(), 0);
  for (int k = 0; k < cfg.n_frames; ++k) {
    CHECK((traj.frames[k].position - animated_center(cfg, Vec3::Zero(), k) - offset0).norm() <= 1e-9);
  }
  cfg.object_animation = ObjectAnimation{};
  const auto still = generate_trajectory(cfg, Vec3::Zero(), 1.0);
  for (const auto& f : still.frames) CHECK(f.position == still.frames[0].position);
}

TEST_CASE("focus positions offset the target by 0.75 radius") {
  for (auto [pos, sign] : {std::pair{FocusPosition::Upper, 1.0}, {FocusPosition::Center, 0.0}, {FocusPosition::Lower, -1.0}}) {
    auto cfg = spin_config();
    cfg.camera.focus_position = pos;
    const Vec3 center(0.5, -0.25, 0.1);
    const auto traj = generate_trajectory(cfg, center, 2.0);
    CHECK((traj.focus_history[0] - (center + Vec3(0, 0, sign * 1.5))).norm() <= 1e-12);
    const double d = (traj.focus_history[0] - cfg.camera.initial_position).norm();
    CHECK(traj.frames[0].focal_mm == doctest::Approx(focal_from_coverage(2.0, d, cfg.camera.coverage)));
  }
}

TEST_CASE("Follow focus keeps the target on the principal point") {
  auto preset = random_preset();
  preset.focus_type = Constant<FocusType>{FocusType::Follow};
  int tested = 0;
  for (const auto& cfg : sample_batch(preset, 31, 400)) {
    if (cfg.camera.movement_type == MovementType::Tilt || cfg.camera.movement_type == MovementType::Pan) continue;
    const auto traj = generate_trajectory(cfg, Vec3::Zero(), 1.0);
    for (std::size_t k = 0; k < traj.frames.size(); ++k) {
      const auto pr = project_point(traj.frames[k], traj.focus_history[k], cfg.render.width, cfg.render.height);
      CHECK(std::abs(pr.pixel.x() - cfg.render.width / 2.0) <= 1e-6);
      CHECK(std::abs(pr.pixel.y() - cfg.render.height / 2.0) <= 1e-6);
    }
    ++tested;
  }
  CHECK(tested > 200);
}

TEST_CASE("all sampled trajectories have orthonormal rotations") {
  for (const auto& cfg : sample_batch(random_preset(), 12, 300)) {
    const auto traj = generate_trajectory(cfg, Vec3::Zero(), 1.0);
    REQUIRE(traj.frames.size() == static_cast<std::size_t>(cfg.n_frames));
    REQUIRE(traj.focus_history.size() == static_cast<std::size_t>(cfg.n_frames));
    for (const auto& f : traj.frames) {
      CHECK(orthonormality_error(f.rotation) <= 1e-9);
      CHECK(std::abs(f.rotation.determinant() - 1.0) <= 1e-9);
      CHECK(f.focal_mm > 0.0);
    }
  }
}

TEST_CASE("Truck time reversal") {
  // Running the shot backwards equals starting at the last pose with the
  // negated value; with Fixed focus the orientation is carried rigidly, so
  // the object centre moves with the new start to keep the same aim.
  auto cfg = with_movement(MovementType::Truck, 2.5);
  cfg.n_frames = 31;
  const auto fwd = generate_trajectory(cfg, Vec3::Zero(), 1.0);
  const Vec3 shift = fwd.frames.back().position - fwd.frames.front().position;

  auto rev_cfg = cfg;
  rev_cfg.camera.initial_position = fwd.frames.back().position;
  rev_cfg.camera.movement_value = -2.5;
  const auto rev = generate_trajectory(rev_cfg, shift, 1.0);
  for (int k = 0; k < cfg.n_frames; ++k) {
    const auto& a = fwd.frames[cfg.n_frames - 1 - k];
    const auto& b = rev.frames[k];
    CHECK((a.position - b.position).norm() <= 1e-9);
    CHECK((a.rotation - b.rotation).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::abs(a.focal_mm - b.focal_mm) <= 1e-9);
    CHECK((fwd.focus_history[cfg.n_frames - 1 - k] - rev.focus_history[k]).norm() <= 1e-9);
  }
}

TEST_CASE("invalid inputs are rejected") {
  auto cfg = spin_config();
  CHECK_THROWS_AS(generate_trajectory(cfg, Vec3::Zero(), 0.0), PreconditionError);
  cfg.n_frames = 1;
  CHECK_THROWS_AS(generate_trajectory(cfg, Vec3::Zero(), 1.0), PreconditionError);
}
