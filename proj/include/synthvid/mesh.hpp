// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Geometry>

#include "synthvid/scene_config.hpp"

namespace synthvid {

/// Triangle mesh with one base colour per triangle. Front faces wind
/// counter-clockwise when seen from outside.
class Mesh {
 public:
  using Triangle = std::array<int, 3>;

  Mesh() = default;

  /// Checks indices and drops zero-area triangles.
  Mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles, std::vector<Rgb> colors);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Rgb>& colors() const { return colors_; }
  bool empty() const { return triangles_.empty(); }

  /// Centre of the axis-aligned bounding box.
  Vec3 center() const;
  /// Largest vertex distance from center().
  double bounding_radius() const;

  Vec3 face_normal(std::size_t tri) const;  ///< unnormalized
  Vec3 centroid(std::size_t tri) const;

  /// Applies p -> rotation * (p - pivot) + pivot + offset to every vertex.
  Mesh transformed(const Eigen::Matrix3d& rotation, const Vec3& pivot, const Vec3& offset) const;

  /// Recentred on the origin and scaled to unit bounding radius.
  Mesh normalized() const;

 private:
  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Rgb> colors_;
};

Mesh make_cube(const Rgb& color);
Mesh make_uv_sphere(int segments, int rings, const Rgb& color);
Mesh make_torus(int segments, int sides, double tube_ratio, const Rgb& color);
Mesh make_cylinder(int segments, const Rgb& color);

bool is_primitive(std::string_view name);
/// "cube", "sphere", "torus" or "cylinder", normalized to the unit sphere.
Mesh primitive_mesh(std::string_view name);

/// Wavefront OBJ subset: `v` and `f` records only (polygons are fan
/// triangulated; `v/vt/vn` and negative indices accepted). Everything else is
/// ignored. Throws ParseError("line N", ...) on malformed records.
Mesh parse_obj(std::string_view text, const Rgb& color = Rgb(0.7, 0.7, 0.7));
Mesh load_obj(const std::string& path, const Rgb& color = Rgb(0.7, 0.7, 0.7));

}  // namespace synthvid
