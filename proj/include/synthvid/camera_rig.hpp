// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "synthvid/error.hpp"
#include "synthvid/scene_config.hpp"

namespace synthvid {

inline constexpr double kSensorHeightMm = 24.0;

/// Pinhole camera. `rotation` maps world directions into the camera frame,
/// whose axes are x = right, y = down, z = forward. The principal point is
/// the image centre.
template <typename Scalar>
struct BasicPinholeCamera {
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

  Vector3 position = Vector3::Zero();
  Matrix3 rotation = Matrix3::Identity();
  Scalar focal_mm = Scalar(50);
  Scalar sensor_height_mm = Scalar(kSensorHeightMm);

  Vector3 right() const { return rotation.row(0).transpose(); }
  Vector3 up() const { return -rotation.row(1).transpose(); }
  Vector3 forward() const { return rotation.row(2).transpose(); }

  Scalar focal_px(int image_height) const {
    return focal_mm * Scalar(image_height) / sensor_height_mm;
  }

  Vector3 to_camera(const Vector3& world) const { return rotation * (world - position); }
};

using PinholeCamera = BasicPinholeCamera<double>;

/// Rotation whose forward row points from `position` to `target` and whose
/// right row is horizontal with respect to `up`.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> look_at(const Eigen::Matrix<Scalar, 3, 1>& position,
                                    const Eigen::Matrix<Scalar, 3, 1>& target,
                                    const Eigen::Matrix<Scalar, 3, 1>& up) {
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  const Vector3 dir = target - position;
  const Scalar len = dir.norm();
  if (!(len > Scalar(0))) throw DegenerateGeometryError("look_at: position equals target");
  const Vector3 forward = dir / len;
  const Vector3 side = forward.cross(up.normalized());
  const Scalar side_len = side.norm();
  if (!(side_len > Scalar(1e-12))) {
    throw DegenerateGeometryError("look_at: view direction is parallel to the up vector");
  }
  const Vector3 right = side / side_len;
  const Vector3 cam_up = right.cross(forward);
  Eigen::Matrix<Scalar, 3, 3> r;
  r.row(0) = right.transpose();
  r.row(1) = -cam_up.transpose();
  r.row(2) = forward.transpose();
  return r;
}

/// Focal length at which a sphere of `bounding_radius` seen at `distance`
/// spans `coverage` of the half-frame height (small-angle pinhole model).
template <typename Scalar>
Scalar focal_from_coverage(Scalar bounding_radius, Scalar distance, Scalar coverage,
                           Scalar sensor_height_mm = Scalar(kSensorHeightMm)) {
  if (!(coverage > Scalar(0) && coverage <= Scalar(1))) {
    throw PreconditionError("focal_from_coverage: coverage must lie in (0, 1]");
  }
  if (!(bounding_radius > Scalar(0))) {
    throw PreconditionError("focal_from_coverage: bounding radius must be positive");
  }
  if (!(distance > bounding_radius)) {
    throw PreconditionError("focal_from_coverage: camera must be outside the bounding sphere");
  }
  if (!(sensor_height_mm > Scalar(0))) {
    throw PreconditionError("focal_from_coverage: sensor height must be positive");
  }
  return coverage * (sensor_height_mm / Scalar(2)) * distance / bounding_radius;
}

template <typename Scalar>
struct BasicProjection {
  Eigen::Matrix<Scalar, 2, 1> pixel = Eigen::Matrix<Scalar, 2, 1>::Zero();
  Scalar depth = Scalar(0);  ///< camera-space z
  bool behind = false;       ///< depth <= 0
};

using Projection = BasicProjection<double>;

/// Continuous pixel coordinates: pixel (i, j) covers [i, i+1) x [j, j+1) and
/// the optical axis lands on (width/2, height/2).
template <typename Scalar>
BasicProjection<Scalar> project_point(const BasicPinholeCamera<Scalar>& camera,
                                      const Eigen::Matrix<Scalar, 3, 1>& p, int width,
                                      int height) {
  BasicProjection<Scalar> out;
  const auto pc = camera.to_camera(p);
  out.depth = pc.z();
  out.behind = !(pc.z() > Scalar(0));
  if (pc.z() == Scalar(0)) {
    out.pixel.setConstant(std::numeric_limits<Scalar>::quiet_NaN());
    return out;
  }
  const Scalar f = camera.focal_px(height);
  out.pixel.x() = f * pc.x() / pc.z() + Scalar(width) / Scalar(2);
  out.pixel.y() = f * pc.y() / pc.z() + Scalar(height) / Scalar(2);
  return out;
}

struct CameraTrajectory {
  std::vector<PinholeCamera> frames;
  std::vector<Vec3> focus_history;
};

/// Object centre at frame k for the config's animation (time k / fps).
Vec3 animated_center(const SceneConfig& cfg, const Vec3& center, int frame);

/// Realizes the camera spec as one pinhole camera per frame. Movement is
/// uniform over the clip with fraction s_k = k / (n_frames - 1).
///
/// Follow focus re-aims at the current focus target every frame. Fixed focus
/// keeps the frame-0 orientation carried along by the movement itself (the
/// orbit for Spin, the tilt/pan rotation for Tilt/Pan, no change otherwise),
/// so a Fixed Spin keeps aiming at the frame-0 target. Tilt or Pan with
/// Follow focus throws ConfigurationConflictError.
CameraTrajectory generate_trajectory(const SceneConfig& cfg, const Vec3& object_center,
                                     double object_radius);

}  // namespace synthvid
