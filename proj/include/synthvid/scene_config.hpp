// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace synthvid {

using Vec3 = Eigen::Vector3d;
using Rgb = Eigen::Vector3d;
using Rgba = Eigen::Vector4d;

enum class FocusType { Follow, Fixed };
enum class FocusPosition { Upper, Center, Lower };
enum class MovementType { Truck, Dolly, Pedestal, Tilt, Pan, Spin, Following, Zoom };
enum class AnimationKind { None, Spin, Translate };
enum class SceneType { Basic, Empty };
enum class RenderQuality { High, Low };
enum class EngineTarget { Internal, BlenderScript };

// Serialized names, indexed by enumerator value.
inline constexpr std::array<std::string_view, 2> kFocusTypeNames{"Follow", "Fixed"};
inline constexpr std::array<std::string_view, 3> kFocusPositionNames{"Upper", "Center", "Lower"};
inline constexpr std::array<std::string_view, 8> kMovementTypeNames{
    "Truck", "Dolly", "Pedestal", "Tilt", "Pan", "Spin", "Following", "Zoom"};
inline constexpr std::array<std::string_view, 3> kAnimationKindNames{"none", "spin", "translate"};
inline constexpr std::array<std::string_view, 2> kSceneTypeNames{"Basic", "Empty"};
inline constexpr std::array<std::string_view, 2> kRenderQualityNames{"High", "Low"};
inline constexpr std::array<std::string_view, 2> kEngineTargetNames{"Internal", "BlenderScript"};

/// How the object moves during the clip. `spin_deg_per_s` is used by Spin,
/// `velocity` (world units per second) by Translate.
struct ObjectAnimation {
  AnimationKind kind = AnimationKind::None;
  double spin_deg_per_s = 0.0;
  Vec3 velocity = Vec3::Zero();

  bool operator==(const ObjectAnimation&) const = default;
};

/// Camera parameters. `movement_value` is the total over the clip, in degrees
/// for Tilt/Pan/Spin, world units for Truck/Dolly/Pedestal, and focal-length
/// millimetres for Zoom. Following takes its motion from the object and
/// ignores the value.
struct CameraSpec {
  FocusType focus_type = FocusType::Follow;
  FocusPosition focus_position = FocusPosition::Center;
  MovementType movement_type = MovementType::Spin;
  double movement_value = 0.0;
  Vec3 initial_position = Vec3::Zero();
  /// Fraction of the half-frame height covered by the object's bounding radius.
  double coverage = 0.5;

  bool operator==(const CameraSpec&) const = default;
};

struct Light {
  Vec3 position = Vec3::Zero();
  double color_temp_k = 6500.0;
  double intensity = 1.0;

  bool operator==(const Light&) const = default;
};

struct LightingSpec {
  std::vector<Light> lights;
  double ambient_intensity = 0.0;

  bool operator==(const LightingSpec&) const = default;
};

/// Basic rooms carry `scene_color`, Empty scenes carry `background_color`.
struct EnvSpec {
  SceneType scene_type = SceneType::Empty;
  std::optional<Rgb> scene_color;
  std::optional<Rgba> background_color;

  bool operator==(const EnvSpec&) const = default;
};

struct RenderSpec {
  int width = 0;
  int height = 0;
  RenderQuality quality = RenderQuality::High;
  EngineTarget engine_target = EngineTarget::Internal;

  bool operator==(const RenderSpec&) const = default;
};

/// Everything needed to produce one synthetic clip.
struct SceneConfig {
  std::string object_ref;
  ObjectAnimation object_animation;
  CameraSpec camera;
  LightingSpec lighting;
  EnvSpec environment;
  RenderSpec render;
  std::uint64_t seed = 0;
  int n_frames = 2;
  int fps = 24;

  bool operator==(const SceneConfig&) const = default;
};

inline constexpr int kMaxLights = 2;
inline constexpr double kMinColorTempK = 1000.0;
inline constexpr double kMaxColorTempK = 12000.0;
inline constexpr long kMaxRenderPixels = 4'000'000;
inline constexpr int kMaxFps = 120;

/// Focus targets sit this many bounding radii above/below the object centre.
inline constexpr double kFocusOffsetRadii = 0.75;

struct Violation {
  std::string path;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Lists every violated invariant. Never throws on a well-typed record.
ValidationReport validate_config(const SceneConfig& cfg);

bool report_mentions(const ValidationReport& report, std::string_view path);

/// Canonical JSON text (schema 1). decode_config(encode_config(c)) == c.
std::string encode_config(const SceneConfig& cfg);

/// Strict decode: unknown keys, missing keys, wrong types and illegal enum
/// names throw ParseError carrying the JSON path (or byte offset for syntax).
SceneConfig decode_config(std::string_view text);

SceneConfig load_config(const std::string& path);
void save_config(const SceneConfig& cfg, const std::string& path);

/// Linear RGB tint in [0,1]^3 of a black-body light at `kelvin`, using the
/// piecewise fit published by Tanner Helland (valid 1000 K to 40000 K).
Rgb kelvin_to_rgb(double kelvin);

/// Vertical offset of the focus target from the object centre.
double focus_offset(FocusPosition position, double object_radius);

std::string_view to_string(FocusType v);
std::string_view to_string(FocusPosition v);
std::string_view to_string(MovementType v);
std::string_view to_string(AnimationKind v);
std::string_view to_string(SceneType v);
std::string_view to_string(RenderQuality v);
std::string_view to_string(EngineTarget v);

bool is_rotational(MovementType m);

}  // namespace synthvid
