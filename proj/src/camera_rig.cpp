// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/camera_rig.hpp"

#include <cmath>
#include <numbers>

namespace synthvid {

namespace {

const Vec3 kWorldUp = Vec3::UnitZ();

double deg(double v) { return v * std::numbers::pi / 180.0; }

}  // namespace

Vec3 animated_center(const SceneConfig& cfg, const Vec3& center, int frame) {
  if (cfg.object_animation.kind != AnimationKind::Translate) return center;
  const double t = static_cast<double>(frame) / cfg.fps;
  return center + t * cfg.object_animation.velocity;
}

CameraTrajectory generate_trajectory(const SceneConfig& cfg, const Vec3& object_center,
                                     double object_radius) {
  if (const auto report = validate_config(cfg); !report.empty()) {
    throw PreconditionError("generate_trajectory: invalid config: " + report.front().path + " " +
                            report.front().message);
  }
  if (!(object_radius > 0.0)) throw PreconditionError("generate_trajectory: radius must be positive");

  const auto& cam = cfg.camera;
  const auto type = cam.movement_type;
  if ((type == MovementType::Tilt || type == MovementType::Pan) && cam.focus_type == FocusType::Follow) {
    throw ConfigurationConflictError(
        "Tilt/Pan requires Fixed focus: re-aiming every frame would cancel the rotation");
  }

  const Vec3 offset = focus_offset(cam.focus_position, object_radius) * kWorldUp;
  const Vec3 target0 = object_center + offset;
  const Vec3 p0 = cam.initial_position;
  const Eigen::Matrix3d r0 = look_at(p0, target0, kWorldUp);
  const double f0 = focal_from_coverage(object_radius, (target0 - p0).norm(), cam.coverage);
  const Vec3 right0 = r0.row(0).transpose();
  const Vec3 up0 = -r0.row(1).transpose();
  const Vec3 fwd0 = r0.row(2).transpose();
  const double value = cam.movement_value;
  const bool follow = cam.focus_type == FocusType::Follow;

  CameraTrajectory traj;
  traj.frames.reserve(cfg.n_frames);
  traj.focus_history.reserve(cfg.n_frames);
  for (int k = 0; k < cfg.n_frames; ++k) {
    const double s = static_cast<double>(k) / (cfg.n_frames - 1);
    const Vec3 target_k = animated_center(cfg, object_center, k) + offset;

    PinholeCamera frame;
    frame.position = p0;
    frame.rotation = r0;
    frame.focal_mm = f0;
    Vec3 focus = target0;

    switch (type) {
      case MovementType::Truck:
      case MovementType::Dolly:
      case MovementType::Pedestal: {
        const Vec3 axis = type == MovementType::Truck ? right0
                          : type == MovementType::Dolly ? fwd0
                                                        : kWorldUp;
        const Vec3 delta = s * value * axis;
        frame.position = p0 + delta;
        focus = target0 + delta;
        break;
      }
      case MovementType::Tilt:
      case MovementType::Pan: {
        const Vec3 axis = type == MovementType::Tilt ? right0 : up0;
        const Eigen::Matrix3d q = Eigen::AngleAxisd(deg(s * value), axis).toRotationMatrix();
        frame.rotation = r0 * q.transpose();
        focus = p0 + q * (target0 - p0);
        break;
      }
      case MovementType::Spin: {
        // Whole turns reduce to an exact identity so a closed orbit returns to p0.
        const double turned = std::fmod(s * value, 360.0);
        const Eigen::Matrix3d q = Eigen::AngleAxisd(deg(turned), kWorldUp).toRotationMatrix();
        const Vec3 pivot = follow ? target_k : target0;
        frame.position = p0 + (pivot - target0) + (q - Eigen::Matrix3d::Identity()) * (p0 - target0);
        frame.rotation = r0 * q.transpose();
        focus = pivot;
        break;
      }
      case MovementType::Following: {
        const Vec3 delta = animated_center(cfg, object_center, k) - object_center;
        frame.position = p0 + delta;
        focus = target0 + delta;
        break;
      }
      case MovementType::Zoom: {
        frame.focal_mm = f0 + s * value;
        if (!(frame.focal_mm > 0.0)) {
          throw PreconditionError("generate_trajectory: zoom drives the focal length to " +
                                  std::to_string(frame.focal_mm) + " mm");
        }
        break;
      }
    }

    if (follow) {
      frame.rotation = look_at(frame.position, target_k, kWorldUp);
      focus = target_k;
    }
    traj.frames.push_back(frame);
    traj.focus_history.push_back(focus);
  }
  return traj;
}

}  // namespace synthvid
