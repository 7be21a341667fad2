// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "synthvid/captioner.hpp"
#include "synthvid/error.hpp"
#include "synthvid/random.hpp"

using namespace synthvid;
using synthvid::testing::caption_grid_configs;
using synthvid::testing::spin_config;

namespace {

ElementCaption element(ElementKind kind, std::string id, std::string text) {
  return ElementCaption{kind, std::move(id), std::move(text), Granularity::Generic};
}

bool contains_word(const std::string& text, std::string_view word) {
  std::size_t at = 0;
  while ((at = text.find(word, at)) != std::string::npos) {
    const bool left = at == 0 || text[at - 1] == ' ';
    const bool right = at + word.size() == text.size() || text[at + word.size()] == ' ';
    if (left && right) return true;
    at += word.size();
  }
  return false;
}

}  // namespace

TEST_CASE("caption_count") {
  CHECK(caption_count(3, 2, 4) == CaptionCount{9, 24});
  CHECK(caption_count(1, 1, 1) == CaptionCount{3, 1});
  CHECK(caption_count(10, 10, 10) == CaptionCount{30, 1000});
  CHECK_THROWS_AS(caption_count(0, 2, 4), PreconditionError);
}

TEST_CASE("compose_caption joins tags, object, motion, scene and camera in order") {
  const auto obj = element(ElementKind::Object, "cube", "A red cube");
  const auto scene = element(ElementKind::Scene, "Basic", "in a room.");
  const auto cam = element(ElementKind::Camera, "Pan", "The camera pans.");
  const auto motion = element(ElementKind::Motion, "spin", "spins");

  const auto plain = compose_caption(obj, scene, cam, std::nullopt, TagMode::None);
  CHECK(plain.text == "A red cube in a room. The camera pans.");
  CHECK(plain.tags.empty());
  CHECK(plain.negative_text.empty());

  const auto tagged = compose_caption(obj, scene, cam, motion, TagMode::Tags);
  CHECK(tagged.text == "animated rendered A red cube spins in a room. The camera pans.");
  CHECK(tagged.tags == std::vector<std::string>{"animated", "rendered"});
  CHECK(tagged.negative_text.empty());

  const auto np = compose_caption(obj, scene, cam, motion, TagMode::TagsPlusNegative);
  CHECK(np.text == tagged.text);
  CHECK(np.negative_text == "animated rendered");

  const auto real = compose_caption(obj, scene, cam, motion, TagMode::TagsPlusNegative, Domain::Real);
  CHECK(real.text == "A red cube spins in a room. The camera pans.");
  CHECK(real.tags.empty());
  CHECK(real.negative_text.empty());
  CHECK(real.domain == Domain::Real);
}

TEST_CASE("compose_caption rejects misplaced or empty elements") {
  const auto obj = element(ElementKind::Object, "cube", "A cube");
  const auto scene = element(ElementKind::Scene, "Basic", "in a room.");
  const auto cam = element(ElementKind::Camera, "Pan", "The camera pans.");
  CHECK_THROWS_AS(compose_caption(scene, obj, cam, std::nullopt, TagMode::None), PreconditionError);
  CHECK_THROWS_AS(compose_caption(obj, scene, cam, obj, TagMode::None), PreconditionError);
  CHECK_THROWS_AS(compose_caption(element(ElementKind::Object, "cube", ""), scene, cam, std::nullopt, TagMode::None),
                  PreconditionError);
}

TEST_CASE("registry add, get and missing entries") {
  CaptionRegistry reg;
  reg.add(element(ElementKind::Object, "cube", "A cube"));
  CHECK(reg.size() == 1);
  CHECK(reg.get({ElementKind::Object, "cube", Granularity::Generic}).text == "A cube");
  CHECK_THROWS_AS(reg.add(element(ElementKind::Object, "cube", "Another cube")), PreconditionError);
  CHECK_THROWS_AS(reg.add(element(ElementKind::Object, "ball", "")), PreconditionError);
  try {
    reg.get({ElementKind::Motion, "spin", Granularity::FineGrained});
    FAIL("expected MissingEntryError");
  } catch (const MissingEntryError& e) {
    CHECK(std::string(e.what()).find("(Motion, spin, FineGrained)") != std::string::npos);
  }
}

TEST_CASE("registry JSON round trip") {
  const CaptionRegistry reg = default_registry();
  const CaptionRegistry back = decode_registry(encode_registry(reg));
  CHECK(back.entries() == reg.entries());
  CHECK_THROWS_AS(decode_registry(R"({"schema": 1, "Planet": {}})"), ParseError);
  CHECK_THROWS_AS(decode_registry(R"({"schema": 1, "Object": {"cube": {"Coarse": "x"}}})"), ParseError);
}

TEST_CASE("caption_for_config selects by granularity and movement") {
  const CaptionRegistry reg = default_registry();
  SceneConfig cfg = spin_config();
  const auto generic = caption_for_config(cfg, reg, Granularity::Generic, TagMode::Tags);
  const auto fine = caption_for_config(cfg, reg, Granularity::FineGrained, TagMode::Tags);
  CHECK(generic == caption_for_config(cfg, reg, Granularity::Generic, TagMode::Tags));
  CHECK(generic.text.find(reg.get({ElementKind::Camera, "Spin", Granularity::Generic}).text) != std::string::npos);
  CHECK(fine.text.find(reg.get({ElementKind::Camera, "Spin", Granularity::FineGrained}).text) != std::string::npos);
  CHECK(fine.text.size() > generic.text.size());
}

TEST_CASE("missing fine-grained motion entry names the key") {
  const CaptionRegistry full = default_registry();
  CaptionRegistry reg;
  for (const auto& [key, e] : full.entries()) {
    if (!(std::get<0>(key) == ElementKind::Motion && std::get<2>(key) == Granularity::FineGrained)) reg.add(e);
  }
  SceneConfig cfg = spin_config();
  cfg.object_animation.kind = AnimationKind::Spin;
  cfg.object_animation.spin_deg_per_s = 30.0;
  CHECK_NOTHROW(caption_for_config(cfg, reg, Granularity::Generic, TagMode::None));
  try {
    caption_for_config(cfg, reg, Granularity::FineGrained, TagMode::None);
    FAIL("expected MissingEntryError");
  } catch (const MissingEntryError& e) {
    CHECK(std::string(e.what()).find("(Motion, spin, FineGrained)") != std::string::npos);
  }
}

TEST_CASE("a 3x2x4 grid touches 9 registry entries and yields 24 captions") {
  const CaptionRegistry reg = default_registry();
  std::vector<ElementKey> log;
  std::set<std::string> texts;
  for (const auto& cfg : caption_grid_configs()) {
    texts.insert(caption_for_config(cfg, reg, Granularity::Generic, TagMode::Tags, &log).text);
  }
  const std::set<ElementKey> touched(log.begin(), log.end());
  CHECK(touched.size() == 9);
  CHECK(texts.size() == 24);
}

TEST_CASE("element text is identical in every caption that uses it") {
  const CaptionRegistry reg = default_registry();
  for (const auto& cfg : caption_grid_configs()) {
    const auto c = caption_for_config(cfg, reg, Granularity::FineGrained, TagMode::None);
    for (const auto kind : {ElementKind::Object, ElementKind::Camera}) {
      const std::string id =
          kind == ElementKind::Object ? cfg.object_ref : std::string(to_string(cfg.camera.movement_type));
      CHECK(c.text.find(reg.get({kind, id, Granularity::FineGrained}).text) != std::string::npos);
    }
  }
}

TEST_CASE("tag hygiene over 1000 random captions") {
  const CaptionRegistry reg = default_registry();
  std::vector<ElementCaption> by_kind[4];
  for (const auto& [key, e] : reg.entries()) by_kind[static_cast<int>(std::get<0>(key))].push_back(e);
  Rng rng(77);
  const auto pick = [&](ElementKind k) {
    const auto& v = by_kind[static_cast<int>(k)];
    return v[rng.index(v.size())];
  };
  for (int i = 0; i < 1000; ++i) {
    const auto mode = static_cast<TagMode>(rng.index(3));
    const auto domain = static_cast<Domain>(rng.index(2));
    std::optional<ElementCaption> motion;
    if (rng.index(2)) motion = pick(ElementKind::Motion);
    const auto c = compose_caption(pick(ElementKind::Object), pick(ElementKind::Scene), pick(ElementKind::Camera),
                                   motion, mode, domain);
    for (const auto tag : kSpecialTags) {
      if (domain == Domain::Real) {
        CHECK_FALSE(contains_word(c.text, tag));
        CHECK(c.tags.empty());
      } else if (mode != TagMode::None) {
        CHECK(contains_word(c.text, tag));
      }
    }
    CHECK(decode_caption(encode_caption(c)) == c);
  }
}

TEST_CASE("decode_caption rejects tags on a real caption") {
  CHECK_THROWS_AS(decode_caption(R"({"domain": "Real", "text": "x", "tags": ["animated"], "negative_text": ""})"),
                  ParseError);
}
