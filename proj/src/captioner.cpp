// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/captioner.hpp"

#include "synthvid/error.hpp"
#include "synthvid/json_io.hpp"

namespace synthvid {

using json_io::json;

std::string_view to_string(ElementKind v) { return kElementKindNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Granularity v) { return kGranularityNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(Domain v) { return kDomainNames[static_cast<std::size_t>(v)]; }
std::string_view to_string(TagMode v) { return kTagModeNames[static_cast<std::size_t>(v)]; }

namespace {

void check_slot(const ElementCaption& e, ElementKind expected) {
  if (e.kind != expected) {
    throw PreconditionError("compose_caption: " + std::string(to_string(e.kind)) +
                            " caption passed in the " + std::string(to_string(expected)) + " slot");
  }
  if (e.text.empty()) {
    throw PreconditionError("compose_caption: empty text for " + std::string(to_string(e.kind)) +
                            " \"" + e.id + "\"");
  }
}

void append(std::string& out, std::string_view part) {
  if (part.empty()) return;
  if (!out.empty()) out += ' ';
  out += part;
}

}  // namespace

ComposedCaption compose_caption(const ElementCaption& object, const ElementCaption& scene,
                                const ElementCaption& camera,
                                const std::optional<ElementCaption>& motion, TagMode mode,
                                Domain domain) {
  check_slot(object, ElementKind::Object);
  check_slot(scene, ElementKind::Scene);
  check_slot(camera, ElementKind::Camera);
  if (motion) check_slot(*motion, ElementKind::Motion);

  ComposedCaption out;
  out.domain = domain;
  std::string tag_text;
  if (domain == Domain::Synthetic && mode != TagMode::None) {
    for (auto tag : kSpecialTags) {
      out.tags.emplace_back(tag);
      append(tag_text, tag);
    }
  }
  append(out.text, tag_text);
  append(out.text, object.text);
  if (motion) append(out.text, motion->text);
  append(out.text, scene.text);
  append(out.text, camera.text);
  if (domain == Domain::Synthetic && mode == TagMode::TagsPlusNegative) out.negative_text = tag_text;
  return out;
}

CaptionCount caption_count(std::int64_t n_objects, std::int64_t m_scenes, std::int64_t c_cameras) {
  if (n_objects < 1 || m_scenes < 1 || c_cameras < 1) {
    throw PreconditionError("caption_count: every count must be at least 1");
  }
  return {n_objects + m_scenes + c_cameras, n_objects * m_scenes * c_cameras};
}

std::string describe(const ElementKey& key) {
  return "(" + std::string(to_string(std::get<0>(key))) + ", " + std::get<1>(key) + ", " +
         std::string(to_string(std::get<2>(key))) + ")";
}

void CaptionRegistry::add(ElementCaption caption) {
  ElementKey key{caption.kind, caption.id, caption.granularity};
  if (caption.text.empty()) throw PreconditionError("caption registry: empty text for " + describe(key));
  if (entries_.count(key)) throw PreconditionError("caption registry: duplicate entry " + describe(key));
  entries_.emplace(std::move(key), std::move(caption));
}

const ElementCaption& CaptionRegistry::get(const ElementKey& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw MissingEntryError("caption registry has no entry " + describe(key));
  return it->second;
}

std::string encode_registry(const CaptionRegistry& registry) {
  json j;
  j["schema"] = 1;
  for (const auto& [key, e] : registry.entries()) {
    j[std::string(to_string(e.kind))][e.id][std::string(to_string(e.granularity))] = e.text;
  }
  return j.dump(2) + "\n";
}

CaptionRegistry decode_registry(std::string_view text) {
  using namespace json_io;
  const json j = parse(text);
  const std::string root;
  expect_keys(j, root, {"schema", "Object", "Scene", "Camera", "Motion"});
  const auto schema = as_int(require(j, root, "schema"), "/schema");
  if (schema != 1) throw ParseError("/schema", "unsupported schema version " + std::to_string(schema));
  CaptionRegistry reg;
  for (std::size_t k = 0; k < kElementKindNames.size(); ++k) {
    const std::string kind_name(kElementKindNames[k]);
    if (!j.contains(kind_name)) continue;
    const std::string kind_path = child(root, kind_name);
    const json& by_id = j.at(kind_name);
    if (!by_id.is_object()) throw ParseError(kind_path, "expected an object");
    for (const auto& [id, by_gran] : by_id.items()) {
      const std::string id_path = child(kind_path, id);
      expect_keys(by_gran, id_path, {"Generic", "FineGrained"});
      for (const auto& [gran, value] : by_gran.items()) {
        const std::string path = child(id_path, gran);
        ElementCaption e;
        e.kind = static_cast<ElementKind>(k);
        e.id = id;
        e.granularity = as_enum<Granularity>(json(gran), path, kGranularityNames);
        e.text = as_string(value, path);
        if (e.text.empty()) throw ParseError(path, "caption text must be nonempty");
        reg.add(std::move(e));
      }
    }
  }
  return reg;
}

CaptionRegistry default_registry() {
  CaptionRegistry reg;
  auto add = [&](ElementKind kind, std::string id, std::string generic, std::string fine) {
    reg.add({kind, id, std::move(generic), Granularity::Generic});
    reg.add({kind, std::move(id), std::move(fine), Granularity::FineGrained});
  };
  using K = ElementKind;
  add(K::Object, "cube", "An orange cube", "A matte orange cube with sharp edges and flat faces");
  add(K::Object, "sphere", "A blue sphere", "A smooth blue sphere with soft, even shading");
  add(K::Object, "torus", "A yellow torus", "A glossy yellow torus shaped like a thick ring");
  add(K::Object, "cylinder", "A green cylinder",
      "A green cylinder standing upright with flat circular caps");
  add(K::Scene, "Basic", "inside a plain room.",
      "inside a plain indoor room with a uniformly coloured floor, walls and ceiling.");
  add(K::Scene, "Empty", "on a solid background.",
      "isolated on a uniform solid-colour background with nothing else in view.");
  add(K::Camera, "Truck", "The camera trucks sideways.",
      "The camera slides sideways at a steady pace, keeping its height.");
  add(K::Camera, "Dolly", "The camera dollies forward.",
      "The camera moves straight along its viewing direction at a steady pace.");
  add(K::Camera, "Pedestal", "The camera rises vertically.",
      "The camera moves vertically while keeping its viewing direction level.");
  add(K::Camera, "Tilt", "The camera tilts.",
      "The camera stays in place and tilts its view up or down.");
  add(K::Camera, "Pan", "The camera pans.",
      "The camera stays in place and turns its view left or right.");
  add(K::Camera, "Spin", "The camera orbits the subject.",
      "The camera orbits the subject at a constant distance, revealing every side.");
  add(K::Camera, "Following", "The camera follows the subject.",
      "The camera tracks the moving subject, keeping it framed at a fixed offset.");
  add(K::Camera, "Zoom", "The camera zooms.",
      "The camera holds its position while the focal length changes smoothly.");
  add(K::Motion, "spin", "spins in place", "spins steadily about its vertical axis while staying in place");
  add(K::Motion, "translate", "glides across the scene",
      "glides in a straight line at constant speed without rotating");
  return reg;
}

ComposedCaption caption_for_config(const SceneConfig& cfg, const CaptionRegistry& registry,
                                   Granularity granularity, TagMode mode,
                                   std::vector<ElementKey>* access_log) {
  auto fetch = [&](ElementKind kind, std::string id) -> const ElementCaption& {
    ElementKey key{kind, std::move(id), granularity};
    const ElementCaption& e = registry.get(key);
    if (access_log) access_log->push_back(std::move(key));
    return e;
  };
  const auto& object = fetch(ElementKind::Object, cfg.object_ref);
  std::optional<ElementCaption> motion;
  if (cfg.object_animation.kind != AnimationKind::None) {
    motion = fetch(ElementKind::Motion, std::string(to_string(cfg.object_animation.kind)));
  }
  const auto& scene = fetch(ElementKind::Scene, std::string(to_string(cfg.environment.scene_type)));
  const auto& camera = fetch(ElementKind::Camera, std::string(to_string(cfg.camera.movement_type)));
  return compose_caption(object, scene, camera, motion, mode, Domain::Synthetic);
}

std::string encode_caption(const ComposedCaption& caption) {
  json j;
  j["text"] = caption.text;
  j["tags"] = caption.tags;
  j["negative_text"] = caption.negative_text;
  j["domain"] = std::string(to_string(caption.domain));
  return j.dump(2) + "\n";
}

ComposedCaption decode_caption(std::string_view text) {
  using namespace json_io;
  const json j = parse(text);
  const std::string root;
  expect_keys(j, root, {"text", "tags", "negative_text", "domain"});
  ComposedCaption c;
  c.text = as_string(require(j, root, "text"), "/text");
  const json& tags = as_array(require(j, root, "tags"), "/tags");
  for (std::size_t i = 0; i < tags.size(); ++i) c.tags.push_back(as_string(tags[i], child("/tags", i)));
  c.negative_text = as_string(require(j, root, "negative_text"), "/negative_text");
  c.domain = as_enum<Domain>(require(j, root, "domain"), "/domain", kDomainNames);
  if (c.domain == Domain::Real && !c.tags.empty()) {
    throw ParseError("/tags", "a Real caption must not carry special tags");
  }
  return c;
}

}  // namespace synthvid
