// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "synthvid/scene_config.hpp"

namespace synthvid {

enum class ElementKind { Object, Scene, Camera, Motion };
enum class Granularity { Generic, FineGrained };
enum class Domain { Synthetic, Real };
enum class TagMode { None, Tags, TagsPlusNegative };

inline constexpr std::array<std::string_view, 4> kElementKindNames{"Object", "Scene", "Camera",
                                                                   "Motion"};
inline constexpr std::array<std::string_view, 2> kGranularityNames{"Generic", "FineGrained"};
inline constexpr std::array<std::string_view, 2> kDomainNames{"Synthetic", "Real"};
inline constexpr std::array<std::string_view, 3> kTagModeNames{"none", "tags", "tags+np"};

/// Tags marking the rendered domain, in the order they are prepended.
inline constexpr std::array<std::string_view, 2> kSpecialTags{"animated", "rendered"};

struct ElementCaption {
  ElementKind kind = ElementKind::Object;
  std::string id;
  std::string text;
  Granularity granularity = Granularity::Generic;
  bool operator==(const ElementCaption&) const = default;
};

struct ComposedCaption {
  std::string text;
  std::vector<std::string> tags;
  std::string negative_text;
  Domain domain = Domain::Synthetic;
  bool operator==(const ComposedCaption&) const = default;
};

/// Joins "<tags> <object> <motion> <scene> <camera>" with single spaces.
/// Tags are only ever applied to the Synthetic domain; a Real caption
/// ignores `mode` and carries no tags. Throws PreconditionError when an
/// element sits in the wrong slot or has empty text.
ComposedCaption compose_caption(const ElementCaption& object, const ElementCaption& scene,
                                const ElementCaption& camera,
                                const std::optional<ElementCaption>& motion, TagMode mode,
                                Domain domain = Domain::Synthetic);

struct CaptionCount {
  std::int64_t compositional = 0;  ///< N + M + C element captions
  std::int64_t per_video = 0;      ///< N * M * C videos
  bool operator==(const CaptionCount&) const = default;
};

CaptionCount caption_count(std::int64_t n_objects, std::int64_t m_scenes, std::int64_t c_cameras);

using ElementKey = std::tuple<ElementKind, std::string, Granularity>;

std::string describe(const ElementKey& key);

/// Element captions keyed by (kind, id, granularity).
class CaptionRegistry {
 public:
  /// Throws PreconditionError on empty text or a duplicate key.
  void add(ElementCaption caption);
  bool contains(const ElementKey& key) const { return entries_.count(key) != 0; }
  /// Throws MissingEntryError naming the key.
  const ElementCaption& get(const ElementKey& key) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<ElementKey, ElementCaption>& entries() const { return entries_; }

 private:
  std::map<ElementKey, ElementCaption> entries_;
};

/// {"schema": 1, "<Kind>": {"<id>": {"<Granularity>": "text"}}}.
std::string encode_registry(const CaptionRegistry& registry);
CaptionRegistry decode_registry(std::string_view text);

/// Covers the primitives, both scene types, all eight movements and the
/// spin/translate animations at both granularities.
CaptionRegistry default_registry();

/// Element ids used for a config: the object_ref, the scene type name, the
/// movement type name, and the animation kind name (only when animated).
/// Every registry key read is appended to `access_log` when it is non-null.
ComposedCaption caption_for_config(const SceneConfig& cfg, const CaptionRegistry& registry,
                                   Granularity granularity, TagMode mode,
                                   std::vector<ElementKey>* access_log = nullptr);

std::string encode_caption(const ComposedCaption& caption);
ComposedCaption decode_caption(std::string_view text);

std::string_view to_string(ElementKind v);
std::string_view to_string(Granularity v);
std::string_view to_string(Domain v);
std::string_view to_string(TagMode v);

}  // namespace synthvid
