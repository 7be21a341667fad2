// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "synthvid/error.hpp"
#include "synthvid/param_sampler.hpp"
#include "synthvid/scene_config.hpp"

using namespace synthvid;
using synthvid::testing::spin_config;

namespace {

std::string with_edit(const SceneConfig& cfg, const std::function<void(nlohmann::json&)>& edit) {
  auto j = nlohmann::json::parse(encode_config(cfg));
  edit(j);
  return j.dump();
}

}  // namespace

TEST_CASE("well-formed spin config validates cleanly") {
  CHECK(validate_config(spin_config()).empty());
}

TEST_CASE("n_frames below two is reported") {
  auto cfg = spin_config();
  cfg.n_frames = 1;
  const auto report = validate_config(cfg);
  CHECK(report_mentions(report, "n_frames"));
}

TEST_CASE("Basic scene without scene_color is reported") {
  auto cfg = spin_config();
  cfg.environment.scene_color.reset();
  CHECK(report_mentions(validate_config(cfg), "scene_color"));
}

TEST_CASE("Empty scene requires background_color and forbids scene_color") {
  auto cfg = spin_config();
  cfg.environment.scene_type = SceneType::Empty;
  const auto report = validate_config(cfg);
  CHECK(report_mentions(report, "scene_color"));
  CHECK(report_mentions(report, "background_color"));
}

TEST_CASE("field-level invariants") {
  SUBCASE("fps range") {
    auto cfg = spin_config();
    cfg.fps = 121;
    CHECK(report_mentions(validate_config(cfg), "fps"));
    cfg.fps = 0;
    CHECK(report_mentions(validate_config(cfg), "fps"));
  }
  SUBCASE("too many lights") {
    auto cfg = spin_config();
    cfg.lighting.lights.resize(3);
    CHECK(report_mentions(validate_config(cfg), "lighting.lights"));
  }
  SUBCASE("colour temperature bounds") {
    auto cfg = spin_config();
    cfg.lighting.lights[0].color_temp_k = 999.0;
    CHECK(report_mentions(validate_config(cfg), "color_temp"));
  }
  SUBCASE("no light at all") {
    auto cfg = spin_config();
    cfg.lighting.lights.clear();
    cfg.lighting.ambient_intensity = 0.0;
    CHECK_FALSE(validate_config(cfg).empty());
  }
  SUBCASE("render budget") {
    auto cfg = spin_config();
    cfg.render.width = 4000;
    cfg.render.height = 1001;
    CHECK(report_mentions(validate_config(cfg), "render"));
  }
  SUBCASE("coverage in (0, 1]") {
    auto cfg = spin_config();
    cfg.camera.coverage = 0.0;
    CHECK(report_mentions(validate_config(cfg), "coverage"));
    cfg.camera.coverage = 1.0;
    CHECK(validate_config(cfg).empty());
  }
  SUBCASE("zero movement value") {
    auto cfg = spin_config();
    cfg.camera.movement_value = 0.0;
    CHECK(report_mentions(validate_config(cfg), "movement_value"));
    cfg.camera.movement_type = MovementType::Following;
    CHECK(validate_config(cfg).empty());
  }
  SUBCASE("camera on the focus target") {
    auto cfg = spin_config();
    cfg.camera.initial_position = Vec3::Zero();
    CHECK(report_mentions(validate_config(cfg), "initial_position"));
  }
}

TEST_CASE("validation is total on hostile values") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  auto cfg = spin_config();
  cfg.camera.movement_value = nan;
  cfg.camera.initial_position = Vec3(inf, nan, -inf);
  cfg.camera.coverage = nan;
  cfg.lighting.lights.push_back(Light{Vec3(nan, 0, 0), nan, -inf});
  cfg.lighting.ambient_intensity = nan;
  cfg.environment.scene_color = Rgb(nan, 2.0, -1.0);
  cfg.environment.background_color = Rgba(nan, nan, nan, nan);
  cfg.render.width = -5;
  cfg.render.height = std::numeric_limits<int>::max();
  cfg.n_frames = std::numeric_limits<int>::min();
  cfg.fps = std::numeric_limits<int>::max();
  cfg.object_ref.clear();
  cfg.object_animation.kind = AnimationKind::Translate;
  cfg.object_animation.velocity = Vec3(nan, 0, 0);
  ValidationReport report;
  CHECK_NOTHROW(report = validate_config(cfg));
  CHECK(report.size() >= 8);
}

TEST_CASE("encode/decode round-trips sampled configs") {
  const PresetLibrary lib;
  for (const auto& name : lib.names()) {
    for (const auto& cfg : sample_batch(lib.get(name), 2026, 200)) {
      REQUIRE(validate_config(cfg).empty());
      CHECK(decode_config(encode_config(cfg)) == cfg);
    }
  }
  const auto cfg = spin_config();
  CHECK(decode_config(encode_config(cfg)) == cfg);
  CHECK(encode_config(decode_config(encode_config(cfg))) == encode_config(cfg));
}

TEST_CASE("unknown field is a parse error naming the field") {
  const auto text = with_edit(spin_config(), [](auto& j) { j["camera"]["zoom_speed"] = 3; });
  try {
    decode_config(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where() == "/camera/zoom_speed");
    CHECK(std::string(e.what()).find("zoom_speed") != std::string::npos);
  }
}

TEST_CASE("illegal movement type lists the eight legal values") {
  const auto text = with_edit(spin_config(), [](auto& j) { j["camera"]["movement_type"] = "Orbit"; });
  try {
    decode_config(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(e.where() == "/camera/movement_type");
    CHECK(msg.find("Orbit") != std::string::npos);
    for (const char* legal : {"Truck", "Dolly", "Pedestal", "Tilt", "Pan", "Spin", "Following", "Zoom"}) {
      CHECK(msg.find(legal) != std::string::npos);
    }
  }
}

TEST_CASE("syntax errors carry a byte offset") {
  try {
    decode_config("{\"schema\": 1,, }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.where().rfind("byte ", 0) == 0);
  }
}

TEST_CASE("missing fields and wrong schema are rejected") {
  CHECK_THROWS_AS(decode_config(with_edit(spin_config(), [](auto& j) { j.erase("fps"); })), ParseError);
  CHECK_THROWS_AS(decode_config(with_edit(spin_config(), [](auto& j) { j["schema"] = 2; })), ParseError);
  CHECK_THROWS_AS(decode_config(with_edit(spin_config(), [](auto& j) { j["n_frames"] = "ten"; })), ParseError);
  CHECK_THROWS_AS(decode_config(with_edit(spin_config(), [](auto& j) { j["seed"] = -1; })), ParseError);
}

TEST_CASE("decode does not validate semantics") {
  auto cfg = spin_config();
  cfg.n_frames = 1;
  const auto back = decode_config(encode_config(cfg));
  CHECK(back == cfg);
  CHECK(report_mentions(validate_config(back), "n_frames"));
}

TEST_CASE("kelvin_to_rgb reference points") {
  // 6600 K is the fit's neutral point: red and green saturate, blue is full.
  const Rgb neutral = kelvin_to_rgb(6600.0);
  CHECK(neutral.x() == doctest::Approx(1.0));
  CHECK(neutral.z() == doctest::Approx(1.0));
  const Rgb warm = kelvin_to_rgb(2000.0);
  const Rgb cool = kelvin_to_rgb(10000.0);
  CHECK(warm.x() > warm.z());
  CHECK(cool.z() > cool.x());
  for (double k = 1000.0; k <= 12000.0; k += 250.0) {
    const Rgb c = kelvin_to_rgb(k);
    CHECK(c.minCoeff() >= 0.0);
    CHECK(c.maxCoeff() <= 1.0);
  }
}

TEST_CASE("focus offsets") {
  CHECK(focus_offset(FocusPosition::Upper, 2.0) == doctest::Approx(1.5));
  CHECK(focus_offset(FocusPosition::Center, 2.0) == 0.0);
  CHECK(focus_offset(FocusPosition::Lower, 2.0) == doctest::Approx(-1.5));
}
