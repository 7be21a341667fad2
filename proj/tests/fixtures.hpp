// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synthvid/scene_config.hpp"

namespace synthvid::testing {

// Frame-0 hash of data/golden_cube.json, frozen when the scene was committed.
inline constexpr std::uint64_t kGoldenCubeHash = 0x8445731a7130d2ceULL;

// A valid Fixed-focus 360 degree orbit around the unit sphere.
inline SceneConfig spin_config() {
  SceneConfig cfg;
  cfg.object_ref = "sphere";
  cfg.camera.focus_type = FocusType::Fixed;
  cfg.camera.focus_position = FocusPosition::Center;
  cfg.camera.movement_type = MovementType::Spin;
  cfg.camera.movement_value = 360.0;
  cfg.camera.initial_position = Vec3(0.0, -6.0, 1.5);
  cfg.camera.coverage = 0.5;
  cfg.lighting.lights.push_back(Light{Vec3(3.0, -4.0, 5.0), 6500.0, 0.9});
  cfg.lighting.ambient_intensity = 0.2;
  cfg.environment.scene_type = SceneType::Basic;
  cfg.environment.scene_color = Rgb(0.6, 0.55, 0.5);
  cfg.render = RenderSpec{64, 48, RenderQuality::High, EngineTarget::Internal};
  cfg.seed = 11;
  cfg.n_frames = 73;
  cfg.fps = 24;
  return cfg;
}

// Unanimated 3 objects x 2 scene types x 4 camera movements.
inline std::vector<SceneConfig> caption_grid_configs() {
  std::vector<SceneConfig> grid;
  for (const char* object : {"cube", "sphere", "torus"}) {
    for (SceneType scene : {SceneType::Basic, SceneType::Empty}) {
      for (MovementType move : {MovementType::Spin, MovementType::Pan, MovementType::Dolly, MovementType::Zoom}) {
        SceneConfig cfg = spin_config();
        cfg.object_ref = object;
        cfg.environment.scene_type = scene;
        cfg.camera.movement_type = move;
        grid.push_back(cfg);
      }
    }
  }
  return grid;
}

inline std::string data_path(const std::string& name) { return std::string(SYNTHVID_TEST_DATA) + "/" + name; }

}  // namespace synthvid::testing
