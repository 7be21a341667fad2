// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/scene_config.hpp"

#include <algorithm>
#include <cmath>

#include "synthvid/json_io.hpp"

namespace synthvid {

using json_io::json;

namespace {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

template <typename Derived>
bool in_unit_range(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite() && (v.array() >= 0.0).all() && (v.array() <= 1.0).all();
}

class Collector {
 public:
  void check(bool ok, std::string path, std::string message) {
    if (!ok) report_.push_back({std::move(path), std::move(message)});
  }
  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

}  // namespace

std::string_view to_string(FocusType v) { return kFocusTypeNames[static_cast<int>(v)]; }
std::string_view to_string(FocusPosition v) { return kFocusPositionNames[static_cast<int>(v)]; }
std::string_view to_string(MovementType v) { return kMovementTypeNames[static_cast<int>(v)]; }
std::string_view to_string(AnimationKind v) { return kAnimationKindNames[static_cast<int>(v)]; }
std::string_view to_string(SceneType v) { return kSceneTypeNames[static_cast<int>(v)]; }
std::string_view to_string(RenderQuality v) { return kRenderQualityNames[static_cast<int>(v)]; }
std::string_view to_string(EngineTarget v) { return kEngineTargetNames[static_cast<int>(v)]; }

bool is_rotational(MovementType m) {
  return m == MovementType::Tilt || m == MovementType::Pan || m == MovementType::Spin;
}

double focus_offset(FocusPosition position, double object_radius) {
  switch (position) {
    case FocusPosition::Upper: return kFocusOffsetRadii * object_radius;
    case FocusPosition::Lower: return -kFocusOffsetRadii * object_radius;
    case FocusPosition::Center: break;
  }
  return 0.0;
}

ValidationReport validate_config(const SceneConfig& cfg) {
  Collector c;
  c.check(!cfg.object_ref.empty(), "object_ref", "must be non-empty");
  c.check(cfg.n_frames >= 2, "n_frames", "must be at least 2");
  c.check(cfg.fps >= 1 && cfg.fps <= kMaxFps, "fps", "must be in [1, 120]");

  const auto& anim = cfg.object_animation;
  c.check(std::isfinite(anim.spin_deg_per_s), "object_animation.spin_deg_per_s", "must be finite");
  c.check(all_finite(anim.velocity), "object_animation.velocity", "must be finite");

  const auto& cam = cfg.camera;
  c.check(std::isfinite(cam.movement_value), "camera.movement_value", "must be finite");
  c.check(cam.movement_type == MovementType::Following || cam.movement_value != 0.0,
          "camera.movement_value", "must be non-zero for this movement type");
  c.check(all_finite(cam.initial_position), "camera.initial_position", "must be finite");
  // Objects are placed at the origin; the focus target of a unit-radius object
  // must not coincide with the camera.
  const Vec3 target(0.0, 0.0, focus_offset(cam.focus_position, 1.0));
  c.check((cam.initial_position - target).norm() > 0.0, "camera.initial_position",
          "must differ from the focus target");
  c.check(cam.coverage > 0.0 && cam.coverage <= 1.0, "camera.coverage", "must be in (0, 1]");

  const auto& lit = cfg.lighting;
  c.check(lit.lights.size() <= static_cast<std::size_t>(kMaxLights), "lighting.lights",
          "at most 2 lights");
  for (std::size_t i = 0; i < lit.lights.size(); ++i) {
    const auto& l = lit.lights[i];
    const std::string p = "lighting.lights[" + std::to_string(i) + "]";
    c.check(all_finite(l.position), p + ".position", "must be finite");
    c.check(l.color_temp_k >= kMinColorTempK && l.color_temp_k <= kMaxColorTempK,
            p + ".color_temp", "must be in [1000, 12000] K");
    c.check(std::isfinite(l.intensity) && l.intensity >= 0.0, p + ".intensity",
            "must be finite and non-negative");
  }
  c.check(std::isfinite(lit.ambient_intensity) && lit.ambient_intensity >= 0.0,
          "lighting.ambient_intensity", "must be finite and non-negative");
  c.check(!lit.lights.empty() || lit.ambient_intensity > 0.0, "lighting",
          "needs a light or positive ambient intensity");

  const auto& env = cfg.environment;
  if (env.scene_type == SceneType::Basic) {
    c.check(env.scene_color.has_value(), "environment.scene_color", "required for Basic scenes");
    c.check(!env.background_color.has_value(), "environment.background_color",
            "not allowed for Basic scenes");
  } else {
    c.check(env.background_color.has_value(), "environment.background_color",
            "required for Empty scenes");
    c.check(!env.scene_color.has_value(), "environment.scene_color",
            "not allowed for Empty scenes");
  }
  if (env.scene_color) {
    c.check(in_unit_range(*env.scene_color), "environment.scene_color", "must lie in [0,1]^3");
  }
  if (env.background_color) {
    c.check(in_unit_range(*env.background_color), "environment.background_color",
            "must lie in [0,1]^4");
  }

  const auto& r = cfg.render;
  c.check(r.width > 0, "render.width", "must be positive");
  c.check(r.height > 0, "render.height", "must be positive");
  c.check(static_cast<long>(r.width) * r.height <= kMaxRenderPixels, "render",
          "width*height must not exceed 4,000,000");
  return c.take();
}

bool report_mentions(const ValidationReport& report, std::string_view path) {
  return std::any_of(report.begin(), report.end(), [&](const Violation& v) {
    return v.path.find(path) != std::string::npos;
  });
}

std::string encode_config(const SceneConfig& cfg) {
  json j;
  j["schema"] = 1;
  j["object_ref"] = cfg.object_ref;

  json anim;
  anim["type"] = to_string(cfg.object_animation.kind);
  if (cfg.object_animation.kind == AnimationKind::Spin) {
    anim["deg_per_s"] = cfg.object_animation.spin_deg_per_s;
  } else if (cfg.object_animation.kind == AnimationKind::Translate) {
    anim["velocity"] = json_io::to_json_array(cfg.object_animation.velocity);
  }
  j["object_animation"] = anim;

  const auto& cam = cfg.camera;
  j["camera"] = {
      {"focus_type", to_string(cam.focus_type)},
      {"focus_position", to_string(cam.focus_position)},
      {"movement_type", to_string(cam.movement_type)},
      {"movement_value", cam.movement_value},
      {"initial_position", json_io::to_json_array(cam.initial_position)},
      {"coverage", cam.coverage},
  };

  json lights = json::array();
  for (const auto& l : cfg.lighting.lights) {
    lights.push_back({{"position", json_io::to_json_array(l.position)},
                      {"color_temp", l.color_temp_k},
                      {"intensity", l.intensity}});
  }
  j["lighting"] = {{"lights", lights}, {"ambient_intensity", cfg.lighting.ambient_intensity}};

  json env;
  env["scene_type"] = to_string(cfg.environment.scene_type);
  if (cfg.environment.scene_color) {
    env["scene_color"] = json_io::to_json_array(*cfg.environment.scene_color);
  }
  if (cfg.environment.background_color) {
    env["background_color"] = json_io::to_json_array(*cfg.environment.background_color);
  }
  j["environment"] = env;

  j["render"] = {{"width", cfg.render.width},
                 {"height", cfg.render.height},
                 {"quality", to_string(cfg.render.quality)},
                 {"engine_target", to_string(cfg.render.engine_target)}};
  j["seed"] = cfg.seed;
  j["n_frames"] = cfg.n_frames;
  j["fps"] = cfg.fps;
  return j.dump(2) + "\n";
}

namespace {

int as_int32(const json& j, const std::string& path) {
  const auto v = json_io::as_int(j, path);
  if (v < INT32_MIN || v > INT32_MAX) throw ParseError(path, "integer out of range");
  return static_cast<int>(v);
}

ObjectAnimation decode_animation(const json& j, const std::string& path) {
  using namespace json_io;
  ObjectAnimation a;
  a.kind = as_enum<AnimationKind>(require(j, path, "type"), child(path, "type"), kAnimationKindNames);
  switch (a.kind) {
    case AnimationKind::None:
      expect_keys(j, path, {"type"});
      break;
    case AnimationKind::Spin:
      expect_keys(j, path, {"type", "deg_per_s"});
      a.spin_deg_per_s = as_double(require(j, path, "deg_per_s"), child(path, "deg_per_s"));
      break;
    case AnimationKind::Translate:
      expect_keys(j, path, {"type", "velocity"});
      a.velocity = as_vec<3>(require(j, path, "velocity"), child(path, "velocity"));
      break;
  }
  return a;
}

CameraSpec decode_camera(const json& j, const std::string& path) {
  using namespace json_io;
  expect_keys(j, path, {"focus_type", "focus_position", "movement_type", "movement_value",
                        "initial_position", "coverage"});
  CameraSpec c;
  c.focus_type = as_enum<FocusType>(require(j, path, "focus_type"), child(path, "focus_type"),
                                    kFocusTypeNames);
  c.focus_position = as_enum<FocusPosition>(require(j, path, "focus_position"),
                                            child(path, "focus_position"), kFocusPositionNames);
  c.movement_type = as_enum<MovementType>(require(j, path, "movement_type"),
                                          child(path, "movement_type"), kMovementTypeNames);
  c.movement_value = as_double(require(j, path, "movement_value"), child(path, "movement_value"));
  c.initial_position =
      as_vec<3>(require(j, path, "initial_position"), child(path, "initial_position"));
  c.coverage = as_double(require(j, path, "coverage"), child(path, "coverage"));
  return c;
}

LightingSpec decode_lighting(const json& j, const std::string& path) {
  using namespace json_io;
  expect_keys(j, path, {"lights", "ambient_intensity"});
  LightingSpec s;
  const std::string lp = child(path, "lights");
  const json& lights = as_array(require(j, path, "lights"), lp);
  for (std::size_t i = 0; i < lights.size(); ++i) {
    const std::string p = child(lp, i);
    expect_keys(lights[i], p, {"position", "color_temp", "intensity"});
    Light l;
    l.position = as_vec<3>(require(lights[i], p, "position"), child(p, "position"));
    l.color_temp_k = as_double(require(lights[i], p, "color_temp"), child(p, "color_temp"));
    l.intensity = as_double(require(lights[i], p, "intensity"), child(p, "intensity"));
    s.lights.push_back(l);
  }
  s.ambient_intensity =
      as_double(require(j, path, "ambient_intensity"), child(path, "ambient_intensity"));
  return s;
}

EnvSpec decode_env(const json& j, const std::string& path) {
  using namespace json_io;
  expect_keys(j, path, {"scene_type", "scene_color", "background_color"});
  EnvSpec e;
  e.scene_type =
      as_enum<SceneType>(require(j, path, "scene_type"), child(path, "scene_type"), kSceneTypeNames);
  if (j.contains("scene_color")) {
    e.scene_color = as_vec<3>(j.at("scene_color"), child(path, "scene_color"));
  }
  if (j.contains("background_color")) {
    e.background_color = as_vec<4>(j.at("background_color"), child(path, "background_color"));
  }
  return e;
}

RenderSpec decode_render(const json& j, const std::string& path) {
  using namespace json_io;
  expect_keys(j, path, {"width", "height", "quality", "engine_target"});
  RenderSpec r;
  r.width = as_int32(require(j, path, "width"), child(path, "width"));
  r.height = as_int32(require(j, path, "height"), child(path, "height"));
  r.quality =
      as_enum<RenderQuality>(require(j, path, "quality"), child(path, "quality"), kRenderQualityNames);
  r.engine_target = as_enum<EngineTarget>(require(j, path, "engine_target"),
                                          child(path, "engine_target"), kEngineTargetNames);
  return r;
}

}  // namespace

SceneConfig decode_config(std::string_view text) {
  using namespace json_io;
  const json j = parse(text);
  const std::string root;
  expect_keys(j, root, {"schema", "object_ref", "object_animation", "camera", "lighting",
                        "environment", "render", "seed", "n_frames", "fps"});
  const auto schema = as_int(require(j, root, "schema"), "/schema");
  if (schema != 1) throw ParseError("/schema", "unsupported schema version " + std::to_string(schema));

  SceneConfig cfg;
  cfg.object_ref = as_string(require(j, root, "object_ref"), "/object_ref");
  cfg.object_animation = decode_animation(require(j, root, "object_animation"), "/object_animation");
  cfg.camera = decode_camera(require(j, root, "camera"), "/camera");
  cfg.lighting = decode_lighting(require(j, root, "lighting"), "/lighting");
  cfg.environment = decode_env(require(j, root, "environment"), "/environment");
  cfg.render = decode_render(require(j, root, "render"), "/render");
  cfg.seed = as_u64(require(j, root, "seed"), "/seed");
  cfg.n_frames = as_int32(require(j, root, "n_frames"), "/n_frames");
  cfg.fps = as_int32(require(j, root, "fps"), "/fps");
  return cfg;
}

SceneConfig load_config(const std::string& path) {
  return decode_config(json_io::read_file(path));
}

void save_config(const SceneConfig& cfg, const std::string& path) {
  json_io::write_file(path, encode_config(cfg));
}

Rgb kelvin_to_rgb(double kelvin) {
  const double t = kelvin / 100.0;
  double r, g, b;
  if (t <= 66.0) {
    r = 255.0;
    g = 99.4708025861 * std::log(t) - 161.1195681661;
  } else {
    r = 329.698727446 * std::pow(t - 60.0, -0.1332047592);
    g = 288.1221695283 * std::pow(t - 60.0, -0.0755148492);
  }
  if (t >= 66.0) {
    b = 255.0;
  } else if (t <= 19.0) {
    b = 0.0;
  } else {
    b = 138.5177312231 * std::log(t - 10.0) - 305.0447927307;
  }
  Rgb rgb(r, g, b);
  return (rgb.array().max(0.0).min(255.0) / 255.0).matrix();
}

}  // namespace synthvid
