// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/param_sampler.hpp"

#include <cmath>
#include <numbers>

#include "synthvid/error.hpp"
#include "synthvid/json_io.hpp"
#include "synthvid/random.hpp"

namespace synthvid {

namespace {

using json_io::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

Rng stream(std::uint64_t seed, SampleField field) {
  return Rng(derive_seed(seed, static_cast<std::uint64_t>(field)));
}

template <typename T>
T draw(const Discrete<T>& d, Rng& rng) {
  if (const auto* c = std::get_if<Constant<T>>(&d)) return c->value;
  const auto& cat = std::get<Categorical<T>>(d);
  double total = 0.0;
  for (double w : cat.weights) total += w;
  const double u = rng.uniform01() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < cat.values.size(); ++i) {
    if (cat.weights[i] <= 0.0) continue;
    acc += cat.weights[i];
    last_positive = i;
    if (u < acc) return cat.values[i];
  }
  return cat.values[last_positive];
}

double draw(const Continuous& d, Rng& rng) {
  if (const auto* c = std::get_if<Constant<double>>(&d)) return c->value;
  const auto& u = std::get<Uniform>(d);
  return rng.uniform(u.lo, u.hi);
}

Vec3 spherical(double distance, double azimuth_deg, double elevation_deg) {
  const double az = azimuth_deg * kDegToRad;
  const double el = elevation_deg * kDegToRad;
  return distance * Vec3(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el));
}

template <typename T>
void check_discrete(const Discrete<T>& d, const std::string& name, std::vector<std::string>& out) {
  const auto* cat = std::get_if<Categorical<T>>(&d);
  if (!cat) return;
  if (cat->values.empty()) out.push_back(name + ": categorical needs at least one value");
  if (cat->values.size() != cat->weights.size()) {
    out.push_back(name + ": values and weights differ in length");
    return;
  }
  double total = 0.0;
  for (double w : cat->weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) out.push_back(name + ": weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) out.push_back(name + ": weights must have a positive sum");
}

void check_continuous(const Continuous& d, const std::string& name, std::vector<std::string>& out) {
  if (const auto* c = std::get_if<Constant<double>>(&d)) {
    if (!std::isfinite(c->value)) out.push_back(name + ": constant must be finite");
    return;
  }
  const auto& u = std::get<Uniform>(d);
  if (!std::isfinite(u.lo) || !std::isfinite(u.hi) || !(u.lo <= u.hi)) {
    out.push_back(name + ": uniform range must be finite and non-empty");
  }
}

double lower(const Continuous& d) {
  if (const auto* c = std::get_if<Constant<double>>(&d)) return c->value;
  return std::get<Uniform>(d).lo;
}
double upper(const Continuous& d) {
  if (const auto* c = std::get_if<Constant<double>>(&d)) return c->value;
  return std::get<Uniform>(d).hi;
}

template <typename T>
std::vector<T> support(const Discrete<T>& d) {
  if (const auto* c = std::get_if<Constant<T>>(&d)) return {c->value};
  const auto& cat = std::get<Categorical<T>>(d);
  std::vector<T> out;
  for (std::size_t i = 0; i < cat.values.size() && i < cat.weights.size(); ++i) {
    if (cat.weights[i] > 0.0) out.push_back(cat.values[i]);
  }
  return out;
}

}  // namespace

std::vector<std::string> validate_preset(const DistributionPreset& p) {
  std::vector<std::string> out;
  check_discrete(p.object_ref, "object_ref", out);
  check_discrete(p.animation, "animation", out);
  check_continuous(p.spin_deg_per_s, "spin_deg_per_s", out);
  check_continuous(p.translate_speed, "translate_speed", out);
  check_discrete(p.focus_type, "focus_type", out);
  check_discrete(p.focus_position, "focus_position", out);
  check_discrete(p.movement_type, "movement_type", out);
  for (std::size_t i = 0; i < p.movement_value.size(); ++i) {
    const std::string name = "movement_value." + std::string(kMovementTypeNames[i]);
    check_continuous(p.movement_value[i], name, out);
    const auto* c = std::get_if<Constant<double>>(&p.movement_value[i]);
    if (c && c->value == 0.0 && static_cast<MovementType>(i) != MovementType::Following) {
      out.push_back(name + ": constant zero movement is only meaningful for Following");
    }
  }
  check_continuous(p.camera_distance, "camera_distance", out);
  check_continuous(p.camera_azimuth_deg, "camera_azimuth_deg", out);
  check_continuous(p.camera_elevation_deg, "camera_elevation_deg", out);
  check_continuous(p.coverage, "coverage", out);
  check_discrete(p.light_count, "light_count", out);
  check_continuous(p.light_distance, "light_distance", out);
  check_continuous(p.light_azimuth_deg, "light_azimuth_deg", out);
  check_continuous(p.light_elevation_deg, "light_elevation_deg", out);
  check_continuous(p.color_temp_k, "color_temp_k", out);
  check_continuous(p.light_intensity, "light_intensity", out);
  check_continuous(p.ambient_intensity, "ambient_intensity", out);
  check_discrete(p.scene_type, "scene_type", out);
  check_continuous(p.scene_color_channel, "scene_color_channel", out);
  check_continuous(p.background_channel, "background_channel", out);
  check_continuous(p.background_alpha, "background_alpha", out);
  check_discrete(p.resolution, "resolution", out);
  check_discrete(p.quality, "quality", out);
  check_discrete(p.engine_target, "engine_target", out);
  check_discrete(p.n_frames, "n_frames", out);
  check_discrete(p.fps, "fps", out);
  if (!out.empty()) return out;

  // Range checks that make every draw a valid SceneConfig.
  if (!(lower(p.camera_distance) > 1.0)) {
    out.push_back("camera_distance: must stay outside the unit object (> 1)");
  }
  if (lower(p.camera_elevation_deg) <= -89.0 || upper(p.camera_elevation_deg) >= 89.0) {
    out.push_back("camera_elevation_deg: must stay within (-89, 89) degrees");
  }
  if (!(lower(p.coverage) > 0.0) || upper(p.coverage) > 1.0) {
    out.push_back("coverage: must lie in (0, 1]");
  }
  if (lower(p.color_temp_k) < kMinColorTempK || upper(p.color_temp_k) > kMaxColorTempK) {
    out.push_back("color_temp_k: must lie in [1000, 12000]");
  }
  if (lower(p.light_intensity) < 0.0) out.push_back("light_intensity: must be non-negative");
  if (lower(p.ambient_intensity) < 0.0) out.push_back("ambient_intensity: must be non-negative");
  for (int n : support(p.light_count)) {
    if (n < 0 || n > kMaxLights) out.push_back("light_count: must lie in [0, 2]");
    if (n == 0 && !(lower(p.ambient_intensity) > 0.0)) {
      out.push_back("light_count: zero lights requires positive ambient intensity");
    }
  }
  for (const auto* d : {&p.scene_color_channel, &p.background_channel, &p.background_alpha}) {
    if (lower(*d) < 0.0 || upper(*d) > 1.0) {
      out.push_back("colour channels must lie in [0, 1]");
      break;
    }
  }
  for (const auto& r : support(p.resolution)) {
    if (r.width <= 0 || r.height <= 0 ||
        static_cast<long>(r.width) * r.height > kMaxRenderPixels) {
      out.push_back("resolution: must be positive with at most 4,000,000 pixels");
    }
  }
  for (int n : support(p.n_frames)) {
    if (n < 2) out.push_back("n_frames: must be at least 2");
  }
  for (int f : support(p.fps)) {
    if (f < 1 || f > kMaxFps) out.push_back("fps: must lie in [1, 120]");
  }
  for (const auto& o : support(p.object_ref)) {
    if (o.empty()) out.push_back("object_ref: values must be non-empty");
  }
  return out;
}

SceneConfig sample_config(const DistributionPreset& preset, std::uint64_t seed) {
  if (auto problems = validate_preset(preset); !problems.empty()) {
    throw PreconditionError("invalid preset \"" + preset.name + "\": " + problems.front());
  }
  SceneConfig cfg;
  cfg.seed = seed;

  {
    auto rng = stream(seed, SampleField::ObjectRef);
    cfg.object_ref = draw(preset.object_ref, rng);
  }
  {
    auto rng = stream(seed, SampleField::Animation);
    cfg.object_animation.kind = draw(preset.animation, rng);
  }
  if (cfg.object_animation.kind == AnimationKind::Spin) {
    auto rng = stream(seed, SampleField::SpinRate);
    cfg.object_animation.spin_deg_per_s = draw(preset.spin_deg_per_s, rng);
  } else if (cfg.object_animation.kind == AnimationKind::Translate) {
    auto rng = stream(seed, SampleField::TranslateVelocity);
    const double speed = draw(preset.translate_speed, rng);
    const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
    cfg.object_animation.velocity = speed * Vec3(std::cos(heading), std::sin(heading), 0.0);
  }

  auto& cam = cfg.camera;
  {
    auto rng = stream(seed, SampleField::MovementType);
    cam.movement_type = draw(preset.movement_type, rng);
  }
  {
    auto rng = stream(seed, SampleField::FocusType);
    cam.focus_type = draw(preset.focus_type, rng);
    if (cam.movement_type == MovementType::Tilt || cam.movement_type == MovementType::Pan) {
      cam.focus_type = FocusType::Fixed;
    }
  }
  {
    auto rng = stream(seed, SampleField::FocusPosition);
    cam.focus_position = draw(preset.focus_position, rng);
  }
  {
    auto rng = stream(seed, SampleField::MovementValue);
    cam.movement_value = draw(preset.movement_value[static_cast<int>(cam.movement_type)], rng);
  }
  {
    auto rng = stream(seed, SampleField::CameraPosition);
    const double d = draw(preset.camera_distance, rng);
    const double az = draw(preset.camera_azimuth_deg, rng);
    const double el = draw(preset.camera_elevation_deg, rng);
    cam.initial_position = spherical(d, az, el);
  }
  {
    auto rng = stream(seed, SampleField::Coverage);
    cam.coverage = draw(preset.coverage, rng);
  }

  int n_lights;
  {
    auto rng = stream(seed, SampleField::LightCount);
    n_lights = draw(preset.light_count, rng);
  }
  {
    auto rng = stream(seed, SampleField::Lights);
    for (int i = 0; i < n_lights; ++i) {
      Light l;
      const double d = draw(preset.light_distance, rng);
      const double az = draw(preset.light_azimuth_deg, rng);
      const double el = draw(preset.light_elevation_deg, rng);
      l.position = spherical(d, az, el);
      l.color_temp_k = draw(preset.color_temp_k, rng);
      l.intensity = draw(preset.light_intensity, rng);
      cfg.lighting.lights.push_back(l);
    }
  }
  {
    auto rng = stream(seed, SampleField::Ambient);
    cfg.lighting.ambient_intensity = draw(preset.ambient_intensity, rng);
  }

  {
    auto rng = stream(seed, SampleField::SceneType);
    cfg.environment.scene_type = draw(preset.scene_type, rng);
  }
  if (cfg.environment.scene_type == SceneType::Basic) {
    auto rng = stream(seed, SampleField::SceneColor);
    Rgb c;
    for (int i = 0; i < 3; ++i) c[i] = draw(preset.scene_color_channel, rng);
    cfg.environment.scene_color = c;
  } else {
    auto rng = stream(seed, SampleField::BackgroundColor);
    Rgba c;
    for (int i = 0; i < 3; ++i) c[i] = draw(preset.background_channel, rng);
    c[3] = draw(preset.background_alpha, rng);
    cfg.environment.background_color = c;
  }

  {
    auto rng = stream(seed, SampleField::Resolution);
    const Resolution r = draw(preset.resolution, rng);
    cfg.render.width = r.width;
    cfg.render.height = r.height;
  }
  {
    auto rng = stream(seed, SampleField::Quality);
    cfg.render.quality = draw(preset.quality, rng);
  }
  {
    auto rng = stream(seed, SampleField::EngineTarget);
    cfg.render.engine_target = draw(preset.engine_target, rng);
  }
  {
    auto rng = stream(seed, SampleField::FrameCount);
    cfg.n_frames = draw(preset.n_frames, rng);
  }
  {
    auto rng = stream(seed, SampleField::Fps);
    cfg.fps = draw(preset.fps, rng);
  }
  return cfg;
}

std::vector<SceneConfig> sample_batch(const DistributionPreset& preset, std::uint64_t base_seed,
                                      std::size_t count) {
  if (count < 1) throw PreconditionError("sample_batch: count must be at least 1");
  std::vector<SceneConfig> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_config(preset, derive_seed(base_seed, i)));
  return out;
}

// ---------------------------------------------------------------------------
// Built-in presets.

DistributionPreset random_preset() {
  DistributionPreset p;
  p.name = "random";
  p.object_ref = Categorical<std::string>{{"cube", "sphere", "torus", "cylinder"}, {1, 1, 1, 1}};
  p.animation = Categorical<AnimationKind>{
      {AnimationKind::None, AnimationKind::Spin, AnimationKind::Translate}, {2, 1, 1}};
  p.spin_deg_per_s = Uniform{-90.0, 90.0};
  p.translate_speed = Uniform{0.1, 0.6};

  p.focus_type = Categorical<FocusType>{{FocusType::Follow, FocusType::Fixed}, {1, 1}};
  p.focus_position = Categorical<FocusPosition>{
      {FocusPosition::Upper, FocusPosition::Center, FocusPosition::Lower}, {1, 1, 1}};
  p.movement_type = Categorical<MovementType>{
      {MovementType::Truck, MovementType::Dolly, MovementType::Pedestal, MovementType::Tilt,
       MovementType::Pan, MovementType::Spin, MovementType::Following, MovementType::Zoom},
      {1, 1, 1, 1, 1, 1, 1, 1}};
  p.movement_value = {
      Uniform{-3.0, 3.0},      // Truck
      Uniform{-2.0, 2.0},      // Dolly
      Uniform{-1.5, 1.5},      // Pedestal
      Uniform{-20.0, 20.0},    // Tilt
      Uniform{-30.0, 30.0},    // Pan
      Uniform{-360.0, 360.0},  // Spin
      Constant<double>{0.0},   // Following
      Uniform{-10.0, 30.0},    // Zoom
  };
  p.camera_distance = Uniform{4.0, 9.0};
  p.camera_azimuth_deg = Uniform{-180.0, 180.0};
  p.camera_elevation_deg = Uniform{-10.0, 45.0};
  p.coverage = Uniform{0.3, 0.9};

  p.light_count = Categorical<int>{{1, 2}, {1, 1}};
  p.light_distance = Uniform{4.0, 8.0};
  p.light_azimuth_deg = Uniform{-180.0, 180.0};
  p.light_elevation_deg = Uniform{20.0, 80.0};
  p.color_temp_k = Uniform{2500.0, 9000.0};
  p.light_intensity = Uniform{0.4, 1.0};
  p.ambient_intensity = Uniform{0.05, 0.3};

  p.scene_type = Categorical<SceneType>{{SceneType::Basic, SceneType::Empty}, {1, 1}};
  p.scene_color_channel = Uniform{0.2, 0.9};
  p.background_channel = Uniform{0.0, 1.0};
  p.background_alpha = Constant<double>{1.0};

  p.resolution = Categorical<Resolution>{{{160, 120}, {128, 96}}, {1, 1}};
  p.quality = Categorical<RenderQuality>{{RenderQuality::High, RenderQuality::Low}, {4, 1}};
  p.engine_target =
      Categorical<EngineTarget>{{EngineTarget::Internal, EngineTarget::BlenderScript}, {3, 1}};
  p.n_frames = Categorical<int>{{24, 36, 48}, {1, 1, 1}};
  p.fps = Constant<int>{24};
  return p;
}

DistributionPreset forward_only_preset() {
  DistributionPreset p = random_preset();
  p.name = "forward_only";
  p.animation = Categorical<AnimationKind>{{AnimationKind::None, AnimationKind::Translate}, {1, 1}};
  p.focus_type = Constant<FocusType>{FocusType::Follow};
  p.focus_position = Constant<FocusPosition>{FocusPosition::Upper};
  p.movement_type = Constant<MovementType>{MovementType::Dolly};
  p.movement_value[static_cast<int>(MovementType::Dolly)] = Uniform{0.5, 2.0};
  p.camera_distance = Uniform{4.0, 7.0};
  p.camera_azimuth_deg = Uniform{-110.0, -70.0};
  p.camera_elevation_deg = Uniform{0.0, 20.0};
  return p;
}

DistributionPreset forward_following_preset(double following_weight) {
  DistributionPreset p = forward_only_preset();
  p.name = "forward_following";
  p.animation = Categorical<AnimationKind>{{AnimationKind::None, AnimationKind::Translate}, {3, 7}};
  p.movement_type = Categorical<MovementType>{{MovementType::Dolly, MovementType::Following},
                                              {1.0 - following_weight, following_weight}};
  return p;
}

PresetLibrary::PresetLibrary() {
  add(random_preset());
  add(forward_only_preset());
  add(forward_following_preset());
}

const DistributionPreset& PresetLibrary::get(std::string_view name) const {
  auto it = presets_.find(name);
  if (it == presets_.end()) throw MissingEntryError("unknown preset \"" + std::string(name) + "\"");
  return it->second;
}

bool PresetLibrary::contains(std::string_view name) const { return presets_.find(name) != presets_.end(); }

void PresetLibrary::add(DistributionPreset preset) {
  if (auto problems = validate_preset(preset); !problems.empty()) {
    throw PreconditionError("invalid preset \"" + preset.name + "\": " + problems.front());
  }
  std::string key = preset.name;
  presets_.insert_or_assign(std::move(key), std::move(preset));
}

std::vector<std::string> PresetLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets_) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------------------
// JSON dialect.

namespace {

json value_to_json(const std::string& v) { return v; }
json value_to_json(int v) { return v; }
json value_to_json(const Resolution& r) { return json::array({r.width, r.height}); }
json value_to_json(AnimationKind v) { return to_string(v); }
json value_to_json(FocusType v) { return to_string(v); }
json value_to_json(FocusPosition v) { return to_string(v); }
json value_to_json(MovementType v) { return to_string(v); }
json value_to_json(SceneType v) { return to_string(v); }
json value_to_json(RenderQuality v) { return to_string(v); }
json value_to_json(EngineTarget v) { return to_string(v); }

template <typename T>
struct Tag {};

std::string value_from_json(const json& j, const std::string& p, Tag<std::string>) {
  return json_io::as_string(j, p);
}
int value_from_json(const json& j, const std::string& p, Tag<int>) {
  return static_cast<int>(json_io::as_int(j, p));
}
Resolution value_from_json(const json& j, const std::string& p, Tag<Resolution>) {
  const json& a = json_io::as_array(j, p);
  if (a.size() != 2) throw ParseError(p, "expected [width, height]");
  return {static_cast<int>(json_io::as_int(a[0], p + "/0")),
          static_cast<int>(json_io::as_int(a[1], p + "/1"))};
}
AnimationKind value_from_json(const json& j, const std::string& p, Tag<AnimationKind>) {
  return json_io::as_enum<AnimationKind>(j, p, kAnimationKindNames);
}
FocusType value_from_json(const json& j, const std::string& p, Tag<FocusType>) {
  return json_io::as_enum<FocusType>(j, p, kFocusTypeNames);
}
FocusPosition value_from_json(const json& j, const std::string& p, Tag<FocusPosition>) {
  return json_io::as_enum<FocusPosition>(j, p, kFocusPositionNames);
}
MovementType value_from_json(const json& j, const std::string& p, Tag<MovementType>) {
  return json_io::as_enum<MovementType>(j, p, kMovementTypeNames);
}
SceneType value_from_json(const json& j, const std::string& p, Tag<SceneType>) {
  return json_io::as_enum<SceneType>(j, p, kSceneTypeNames);
}
RenderQuality value_from_json(const json& j, const std::string& p, Tag<RenderQuality>) {
  return json_io::as_enum<RenderQuality>(j, p, kRenderQualityNames);
}
EngineTarget value_from_json(const json& j, const std::string& p, Tag<EngineTarget>) {
  return json_io::as_enum<EngineTarget>(j, p, kEngineTargetNames);
}

template <typename T>
json dist_to_json(const Discrete<T>& d) {
  if (const auto* c = std::get_if<Constant<T>>(&d)) return {{"constant", value_to_json(c->value)}};
  const auto& cat = std::get<Categorical<T>>(d);
  json values = json::array();
  for (const auto& v : cat.values) values.push_back(value_to_json(v));
  return {{"categorical", {{"values", values}, {"weights", cat.weights}}}};
}

json dist_to_json(const Continuous& d) {
  if (const auto* c = std::get_if<Constant<double>>(&d)) return {{"constant", c->value}};
  const auto& u = std::get<Uniform>(d);
  return {{"uniform", json::array({u.lo, u.hi})}};
}

template <typename T>
Discrete<T> discrete_from_json(const json& j, const std::string& path) {
  using namespace json_io;
  expect_keys(j, path, {"constant", "categorical"});
  if (j.size() != 1) throw ParseError(path, "expected exactly one of constant, categorical");
  if (j.contains("constant")) {
    return Constant<T>{value_from_json(j.at("constant"), child(path, "constant"), Tag<T>{})};
  }
  const std::string cp = child(path, "categorical");
  const json& c = j.at("categorical");
  expect_keys(c, cp, {"values", "weights"});
  Categorical<T> cat;
  const json& values = as_array(require(c, cp, "values"), child(cp, "values"));
  const json& weights = as_array(require(c, cp, "weights"), child(cp, "weights"));
  for (std::size_t i = 0; i < values.size(); ++i) {
    cat.values.push_back(value_from_json(values[i], child(child(cp, "values"), i), Tag<T>{}));
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cat.weights.push_back(as_double(weights[i], child(child(cp, "weights"), i)));
  }
  return cat;
}

Continuous continuous_from_json(const json& j, const std::string& path) {
  using namespace json_io;
  expect_keys(j, path, {"constant", "uniform"});
  if (j.size() != 1) throw ParseError(path, "expected exactly one of constant, uniform");
  if (j.contains("constant")) return Constant<double>{as_double(j.at("constant"), child(path, "constant"))};
  const json& a = as_array(j.at("uniform"), child(path, "uniform"));
  if (a.size() != 2) throw ParseError(child(path, "uniform"), "expected [lo, hi]");
  return Uniform{as_double(a[0], child(path, "uniform") + "/0"),
                 as_double(a[1], child(path, "uniform") + "/1")};
}

// Field table shared by the encoder and decoder.
template <typename Fn>
void for_each_field(DistributionPreset& p, Fn&& fn) {
  fn("object_ref", p.object_ref);
  fn("animation", p.animation);
  fn("spin_deg_per_s", p.spin_deg_per_s);
  fn("translate_speed", p.translate_speed);
  fn("focus_type", p.focus_type);
  fn("focus_position", p.focus_position);
  fn("movement_type", p.movement_type);
  fn("camera_distance", p.camera_distance);
  fn("camera_azimuth_deg", p.camera_azimuth_deg);
  fn("camera_elevation_deg", p.camera_elevation_deg);
  fn("coverage", p.coverage);
  fn("light_count", p.light_count);
  fn("light_distance", p.light_distance);
  fn("light_azimuth_deg", p.light_azimuth_deg);
  fn("light_elevation_deg", p.light_elevation_deg);
  fn("color_temp_k", p.color_temp_k);
  fn("light_intensity", p.light_intensity);
  fn("ambient_intensity", p.ambient_intensity);
  fn("scene_type", p.scene_type);
  fn("scene_color_channel", p.scene_color_channel);
  fn("background_channel", p.background_channel);
  fn("background_alpha", p.background_alpha);
  fn("resolution", p.resolution);
  fn("quality", p.quality);
  fn("engine_target", p.engine_target);
  fn("n_frames", p.n_frames);
  fn("fps", p.fps);
}

template <typename T>
void decode_into(Discrete<T>& d, const json& j, const std::string& path) {
  d = discrete_from_json<T>(j, path);
}
void decode_into(Continuous& d, const json& j, const std::string& path) {
  d = continuous_from_json(j, path);
}

}  // namespace

std::string encode_preset(const DistributionPreset& preset) {
  DistributionPreset p = preset;
  json j;
  j["schema"] = 1;
  j["name"] = p.name;
  for_each_field(p, [&](const char* key, const auto& d) { j[key] = dist_to_json(d); });
  json mv;
  for (std::size_t i = 0; i < p.movement_value.size(); ++i) {
    mv[std::string(kMovementTypeNames[i])] = dist_to_json(p.movement_value[i]);
  }
  j["movement_value"] = mv;
  return j.dump(2) + "\n";
}

DistributionPreset decode_preset(std::string_view text) {
  using namespace json_io;
  const json j = parse(text);
  if (!j.is_object()) throw ParseError("/", "expected an object");
  DistributionPreset p = random_preset();
  std::vector<std::string_view> keys{"schema", "name", "movement_value"};
  for_each_field(p, [&](const char* key, auto&) { keys.push_back(key); });
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || k == key;
    if (!known) throw ParseError("/" + key, "unknown field \"" + key + "\"");
  }
  if (as_int(require(j, "", "schema"), "/schema") != 1) throw ParseError("/schema", "unsupported schema");
  p.name = as_string(require(j, "", "name"), "/name");
  for_each_field(p, [&](const char* key, auto& d) {
    if (j.contains(key)) decode_into(d, j.at(key), std::string("/") + key);
  });
  if (j.contains("movement_value")) {
    const json& mv = j.at("movement_value");
    if (!mv.is_object()) throw ParseError("/movement_value", "expected an object");
    for (const auto& [key, value] : mv.items()) {
      const auto type = as_enum<MovementType>(json(key), "/movement_value/" + key, kMovementTypeNames);
      p.movement_value[static_cast<int>(type)] = continuous_from_json(value, "/movement_value/" + key);
    }
  }
  return p;
}

}  // namespace synthvid
