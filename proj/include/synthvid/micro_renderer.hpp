// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synthvid/camera_rig.hpp"
#include "synthvid/mesh.hpp"
#include "synthvid/scene_config.hpp"

namespace synthvid {

/// Row-major RGB8 image.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Frame() = default;
  Frame(int w, int h);

  std::uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x); }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }

  bool operator==(const Frame&) const = default;
};

/// Half extent of the room box on x and y, and its floor and ceiling heights.
inline constexpr double kRoomHalfWidth = 30.0;
inline constexpr double kRoomFloor = -3.0;
inline constexpr double kRoomCeiling = 30.0;

/// Lambertian response before clamping:
/// base * (ambient + sum_i intensity_i * max(0, n.l_i) * kelvin_rgb_i).
/// `normal` must be unit length.
Rgb shade_lambert(const Rgb& base, const Vec3& normal, const Vec3& point, const LightingSpec& lighting);

std::uint8_t to_byte(double channel);

Frame render_frame(const Mesh& mesh, const PinholeCamera& camera, const LightingSpec& lighting,
                   const EnvSpec& env, int width, int height);

/// Renders at the config's quality: High directly, Low at half resolution
/// followed by a nearest-neighbour upscale.
Frame render_at_quality(const Mesh& mesh, const PinholeCamera& camera, const LightingSpec& lighting,
                        const EnvSpec& env, int width, int height, RenderQuality quality);

/// Mesh posed for frame k of the config's object animation.
Mesh animate_mesh(const SceneConfig& cfg, const Mesh& mesh, int frame);

/// Frame k of a clip. Frames only read their inputs, so any subset may be
/// rendered concurrently.
Frame render_clip_frame(const SceneConfig& cfg, const Mesh& mesh, const CameraTrajectory& trajectory,
                        int frame);

std::vector<Frame> render_video(const SceneConfig& cfg, const Mesh& mesh);

/// The committed "golden-cube" scene: a spinning cube under a 90 degree orbit
/// in a Basic room. Its first frame hash is pinned by the test suite.
SceneConfig golden_cube_scene();

/// Primitive name or OBJ path; OBJ meshes are normalized to the unit sphere.
Mesh resolve_object(const std::string& object_ref);

/// FNV-1a 64 over width, height and the pixel bytes.
std::uint64_t frame_hash(const Frame& frame);
std::string hash_hex(std::uint64_t hash);

void write_ppm(const Frame& frame, const std::string& path);
Frame read_ppm(const std::string& path);

/// Writes `frame_00000.ppm`, `frame_00001.ppm`, ... into `dir` (created if needed).
void write_frames(const std::vector<Frame>& frames, const std::string& dir);

/// Blender Python script realizing the config, produced from a fixed template.
/// The script is emitted only, never executed.
std::string emit_engine_script(const SceneConfig& cfg);

}  // namespace synthvid
