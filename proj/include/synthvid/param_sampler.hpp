// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "synthvid/scene_config.hpp"

namespace synthvid {

template <typename T>
struct Constant {
  T value;
  bool operator==(const Constant&) const = default;
};

template <typename T>
struct Categorical {
  std::vector<T> values;
  std::vector<double> weights;
  bool operator==(const Categorical&) const = default;
};

struct Uniform {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Uniform&) const = default;
};

template <typename T>
using Discrete = std::variant<Constant<T>, Categorical<T>>;
using Continuous = std::variant<Constant<double>, Uniform>;

struct Resolution {
  int width = 0;
  int height = 0;
  bool operator==(const Resolution&) const = default;
};

/// One distribution per SceneConfig field. Positions are sampled in
/// spherical coordinates about the object centre (the origin); azimuth 0 is
/// +x, azimuth -90 degrees is the object's front (-y side).
struct DistributionPreset {
  std::string name;

  Discrete<std::string> object_ref;
  Discrete<AnimationKind> animation;
  Continuous spin_deg_per_s;
  Continuous translate_speed;  ///< heading is uniform in the ground plane

  Discrete<FocusType> focus_type;
  Discrete<FocusPosition> focus_position;
  Discrete<MovementType> movement_type;
  std::array<Continuous, 8> movement_value;  ///< indexed by MovementType
  Continuous camera_distance;
  Continuous camera_azimuth_deg;
  Continuous camera_elevation_deg;
  Continuous coverage;

  Discrete<int> light_count;
  Continuous light_distance;
  Continuous light_azimuth_deg;
  Continuous light_elevation_deg;
  Continuous color_temp_k;
  Continuous light_intensity;
  Continuous ambient_intensity;

  Discrete<SceneType> scene_type;
  Continuous scene_color_channel;
  Continuous background_channel;
  Continuous background_alpha;

  Discrete<Resolution> resolution;
  Discrete<RenderQuality> quality;
  Discrete<EngineTarget> engine_target;
  Discrete<int> n_frames;
  Discrete<int> fps;

  bool operator==(const DistributionPreset&) const = default;
};

/// Per-field draw streams. Every field draws from its own child stream
/// `derive_seed(seed, tag)`, so changing one field's distribution never
/// perturbs another field's draws. The numbering is part of the format.
enum class SampleField : std::uint64_t {
  ObjectRef = 1,
  Animation = 2,
  SpinRate = 3,
  TranslateVelocity = 4,
  FocusType = 5,
  FocusPosition = 6,
  MovementType = 7,
  MovementValue = 8,
  CameraPosition = 9,
  Coverage = 10,
  LightCount = 11,
  Lights = 12,
  Ambient = 13,
  SceneType = 14,
  SceneColor = 15,
  BackgroundColor = 16,
  Resolution = 17,
  Quality = 18,
  EngineTarget = 19,
  FrameCount = 20,
  Fps = 21,
};

/// Violations of the preset invariants (weights non-negative with positive
/// sum, non-empty ranges, camera outside the unit object, elevation below
/// the poles). Empty when valid.
std::vector<std::string> validate_preset(const DistributionPreset& preset);

/// Pure function of (preset, seed). Tilt and Pan always receive Fixed focus
/// because re-aiming would cancel the rotation.
SceneConfig sample_config(const DistributionPreset& preset, std::uint64_t seed);

/// Element i equals sample_config(preset, derive_seed(base_seed, i)).
std::vector<SceneConfig> sample_batch(const DistributionPreset& preset, std::uint64_t base_seed,
                                      std::size_t count);

/// Presets "random", "forward_only" and "forward_following". The weights
/// below are repository constants.
class PresetLibrary {
 public:
  PresetLibrary();

  const DistributionPreset& get(std::string_view name) const;
  bool contains(std::string_view name) const;
  void add(DistributionPreset preset);
  std::vector<std::string> names() const;

 private:
  std::map<std::string, DistributionPreset, std::less<>> presets_;
};

DistributionPreset random_preset();
DistributionPreset forward_only_preset();
/// Forward dolly and following shots, mixed by `following_weight`.
DistributionPreset forward_following_preset(double following_weight = 0.5);

/// JSON dialect shared with config files. Fields missing from a preset file
/// inherit the "random" preset; unknown keys are errors.
std::string encode_preset(const DistributionPreset& preset);
DistributionPreset decode_preset(std::string_view text);

}  // namespace synthvid
