// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

#include "synthvid/error.hpp"
#include "synthvid/param_sampler.hpp"
#include "synthvid/random.hpp"

using namespace synthvid;

namespace {

constexpr std::size_t kBatch = 10000;

// Checks observed category counts against expected probabilities: every
// category within 3 sigma of its binomial mean, and a chi-square
// goodness-of-fit p-value above 0.001.
template <typename T>
void check_frequencies(const std::map<T, std::size_t>& observed, const std::map<T, double>& expected,
                       std::size_t n) {
  double chi2 = 0.0;
  int dof = -1;
  for (const auto& [value, p] : expected) {
    const auto it = observed.find(value);
    const double count = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    const double mean = n * p;
    if (p == 0.0) {
      CHECK(count == 0.0);
      continue;
    }
    const double sigma = std::sqrt(n * p * (1.0 - p));
    CHECK(std::abs(count - mean) <= 3.0 * sigma);
    chi2 += (count - mean) * (count - mean) / mean;
    ++dof;
  }
  for (const auto& [value, count] : observed) CHECK(expected.count(value) == 1);
  if (dof >= 1) {
    const boost::math::chi_squared dist(dof);
    CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.001);
  }
}

template <typename T>
std::map<T, double> weights_of(const Discrete<T>& d) {
  std::map<T, double> out;
  if (const auto* c = std::get_if<Constant<T>>(&d)) {
    out[c->value] = 1.0;
    return out;
  }
  const auto& cat = std::get<Categorical<T>>(d);
  double total = 0.0;
  for (double w : cat.weights) total += w;
  for (std::size_t i = 0; i < cat.values.size(); ++i) out[cat.values[i]] += cat.weights[i] / total;
  return out;
}

}  // namespace

TEST_CASE("derive_seed is a fixed splittable hash") {
  // First output of the reference splitmix64 generator seeded with 0.
  CHECK(mix64(0x9E3779B97F4A7C15ULL) == 0xe220a8397b1dcdafULL);
  CHECK(mix64(0) == 0ULL);
  CHECK(mix64(1) == 0x5692161d100b05e5ULL);
  CHECK(derive_seed(7, 0) != derive_seed(7, 1));
  CHECK(derive_seed(7, 0) != derive_seed(8, 0));
  CHECK(derive_seed(7, 3) == mix64(7 ^ mix64(3 + 0x9E3779B97F4A7C15ULL)));
}

TEST_CASE("rng draws are reproducible and in range") {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u == b.uniform01());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Rng c(5);
  for (int i = 0; i < 1000; ++i) CHECK(c.index(7) < 7u);
}

TEST_CASE("sample_config is a pure function of preset and seed") {
  const PresetLibrary lib;
  for (const auto& name : lib.names()) {
    const auto& preset = lib.get(name);
    CHECK(sample_config(preset, 42) == sample_config(preset, 42));
    CHECK(sample_config(preset, 42).seed == 42u);
  }
  CHECK_FALSE(sample_config(random_preset(), 42) == sample_config(random_preset(), 43));
}

TEST_CASE("every sample passes validation") {
  const PresetLibrary lib;
  for (const auto& name : lib.names()) {
    for (const auto& cfg : sample_batch(lib.get(name), 3, 2000)) CHECK(validate_config(cfg).empty());
  }
}

TEST_CASE("constant movement type is honoured") {
  auto preset = random_preset();
  preset.movement_type = Constant<MovementType>{MovementType::Spin};
  for (const auto& cfg : sample_batch(preset, 1, 500)) CHECK(cfg.camera.movement_type == MovementType::Spin);
}

TEST_CASE("field streams are independent") {
  auto a = random_preset();
  auto b = random_preset();
  b.light_count = Constant<int>{2};
  b.quality = Constant<RenderQuality>{RenderQuality::Low};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto ca = sample_config(a, seed);
    const auto cb = sample_config(b, seed);
    CHECK(ca.camera == cb.camera);
    CHECK(ca.object_ref == cb.object_ref);
    CHECK(ca.environment == cb.environment);
    CHECK(ca.n_frames == cb.n_frames);
  }
}

TEST_CASE("sample_batch matches per-index sampling") {
  const auto preset = random_preset();
  const auto batch = sample_batch(preset, 77, 16);
  REQUIRE(batch.size() == 16);
  for (std::size_t i = 0; i < batch.size(); ++i) CHECK(batch[i] == sample_config(preset, derive_seed(77, i)));
  CHECK(sample_batch(preset, 77, 1).front() == sample_config(preset, derive_seed(77, 0)));
  CHECK(sample_batch(preset, 77, 16) == batch);
  CHECK_THROWS_AS(sample_batch(preset, 77, 0), PreconditionError);
}

TEST_CASE("forward_following mixes Dolly and Following by the documented weight") {
  const auto preset = forward_following_preset();
  const auto batch = sample_batch(preset, 9, kBatch);
  std::map<MovementType, std::size_t> seen;
  for (const auto& cfg : batch) ++seen[cfg.camera.movement_type];
  check_frequencies(seen, {{MovementType::Dolly, 0.5}, {MovementType::Following, 0.5}}, kBatch);

  const auto skewed = forward_following_preset(0.2);
  std::map<MovementType, std::size_t> seen2;
  for (const auto& cfg : sample_batch(skewed, 9, kBatch)) ++seen2[cfg.camera.movement_type];
  check_frequencies(seen2, {{MovementType::Dolly, 0.8}, {MovementType::Following, 0.2}}, kBatch);
}

TEST_CASE("random preset categorical frequencies match weights") {
  const auto preset = random_preset();
  const auto batch = sample_batch(preset, 2024, kBatch);

  std::map<std::string, std::size_t> objects;
  std::map<AnimationKind, std::size_t> anim;
  std::map<MovementType, std::size_t> moves;
  std::map<FocusType, std::size_t> focus;
  std::map<FocusPosition, std::size_t> focus_pos;
  std::map<SceneType, std::size_t> scenes;
  std::map<RenderQuality, std::size_t> quality;
  std::map<EngineTarget, std::size_t> engine;
  std::map<int, std::size_t> frames, lights;
  for (const auto& cfg : batch) {
    ++objects[cfg.object_ref];
    ++anim[cfg.object_animation.kind];
    ++moves[cfg.camera.movement_type];
    ++focus[cfg.camera.focus_type];
    ++focus_pos[cfg.camera.focus_position];
    ++scenes[cfg.environment.scene_type];
    ++quality[cfg.render.quality];
    ++engine[cfg.render.engine_target];
    ++frames[cfg.n_frames];
    ++lights[static_cast<int>(cfg.lighting.lights.size())];
  }
  check_frequencies(objects, weights_of(preset.object_ref), kBatch);
  check_frequencies(anim, weights_of(preset.animation), kBatch);
  check_frequencies(moves, weights_of(preset.movement_type), kBatch);
  check_frequencies(focus_pos, weights_of(preset.focus_position), kBatch);
  check_frequencies(scenes, weights_of(preset.scene_type), kBatch);
  check_frequencies(quality, weights_of(preset.quality), kBatch);
  check_frequencies(engine, weights_of(preset.engine_target), kBatch);
  check_frequencies(frames, weights_of(preset.n_frames), kBatch);
  check_frequencies(lights, weights_of(preset.light_count), kBatch);

  // Tilt and Pan force Fixed focus, so P(Fixed) = P(rot) + (1 - P(rot)) w_fixed.
  const auto mw = weights_of(preset.movement_type);
  const double p_rot = mw.at(MovementType::Tilt) + mw.at(MovementType::Pan);
  const double w_fixed = weights_of(preset.focus_type).at(FocusType::Fixed);
  const double p_fixed = p_rot + (1.0 - p_rot) * w_fixed;
  check_frequencies(focus, {{FocusType::Fixed, p_fixed}, {FocusType::Follow, 1.0 - p_fixed}}, kBatch);
}

TEST_CASE("Tilt and Pan always sample Fixed focus") {
  for (const auto& cfg : sample_batch(random_preset(), 5, 3000)) {
    const auto m = cfg.camera.movement_type;
    if (m == MovementType::Tilt || m == MovementType::Pan) CHECK(cfg.camera.focus_type == FocusType::Fixed);
  }
}

TEST_CASE("uniform fields stay inside their ranges") {
  const auto preset = random_preset();
  for (const auto& cfg : sample_batch(preset, 8, 3000)) {
    const double d = cfg.camera.initial_position.norm();
    CHECK(d >= 4.0 - 1e-9);
    CHECK(d <= 9.0 + 1e-9);
    CHECK(cfg.camera.coverage >= 0.3);
    CHECK(cfg.camera.coverage <= 0.9);
    for (const auto& l : cfg.lighting.lights) {
      CHECK(l.color_temp_k >= 2500.0);
      CHECK(l.color_temp_k <= 9000.0);
    }
  }
}

TEST_CASE("forward_only preset is a Follow dolly from the front") {
  for (const auto& cfg : sample_batch(forward_only_preset(), 4, 1000)) {
    CHECK(cfg.camera.movement_type == MovementType::Dolly);
    CHECK(cfg.camera.focus_type == FocusType::Follow);
    CHECK(cfg.camera.initial_position.y() < 0.0);
    CHECK(cfg.camera.movement_value >= 0.5);
    CHECK(cfg.camera.movement_value <= 2.0);
  }
}

TEST_CASE("preset library") {
  PresetLibrary lib;
  CHECK(lib.contains("random"));
  CHECK(lib.contains("forward_only"));
  CHECK(lib.contains("forward_following"));
  CHECK_THROWS_AS(lib.get("nope"), MissingEntryError);
  auto custom = random_preset();
  custom.name = "spin_only";
  custom.movement_type = Constant<MovementType>{MovementType::Spin};
  lib.add(custom);
  CHECK(lib.get("spin_only") == custom);

  auto bad = random_preset();
  bad.name = "bad";
  bad.object_ref = Categorical<std::string>{{"cube"}, {-1.0}};
  CHECK_FALSE(validate_preset(bad).empty());
  CHECK_THROWS_AS(lib.add(bad), PreconditionError);
  CHECK_THROWS_AS(sample_config(bad, 1), PreconditionError);

  auto empty_range = random_preset();
  empty_range.coverage = Uniform{0.9, 0.3};
  CHECK_FALSE(validate_preset(empty_range).empty());
}

TEST_CASE("preset JSON round-trip") {
  const PresetLibrary lib;
  for (const auto& name : lib.names()) {
    const auto& p = lib.get(name);
    CHECK(decode_preset(encode_preset(p)) == p);
  }
  const auto partial = decode_preset(R"({"schema": 1, "name": "mini", "movement_type": {"constant": "Zoom"}})");
  CHECK(partial.name == "mini");
  CHECK(std::get<Constant<MovementType>>(partial.movement_type).value == MovementType::Zoom);
  CHECK(partial.coverage == random_preset().coverage);
  CHECK_THROWS_AS(decode_preset(R"({"schema": 1, "name": "x", "bogus": 1})"), ParseError);
}
