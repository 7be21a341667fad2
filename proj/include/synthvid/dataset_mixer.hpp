// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "synthvid/captioner.hpp"

namespace synthvid {

enum class Source { Synthetic, Real };
inline constexpr std::array<std::string_view, 2> kSourceNames{"Synthetic", "Real"};

/// One training item. The caption domain always equals the source.
struct ManifestEntry {
  std::string uri;
  ComposedCaption caption;
  Source source = Source::Synthetic;
  bool operator==(const ManifestEntry&) const = default;
};

struct MixSchedule {
  double ratio = 0.5;  ///< synthetic share in [0, 1]
  std::int64_t total_steps = 1;
  std::uint64_t seed = 0;
  bool operator==(const MixSchedule&) const = default;
};

enum class MixMode {
  /// Step k is Synthetic with probability `ratio`, independently.
  Bernoulli,
  /// Exactly round(ratio * steps) Synthetic steps, evenly interleaved.
  ExactCount,
};

/// One entry per step: the source is chosen by `mode`, then an item is drawn
/// uniformly with replacement from that pool. Pure in (pools, schedule, mode).
/// Throws PreconditionError for a bad schedule, an empty pool the ratio
/// needs, or a pool entry whose source or caption domain is wrong.
std::vector<ManifestEntry> build_manifest(const std::vector<ManifestEntry>& synthetic,
                                          const std::vector<ManifestEntry>& real,
                                          const MixSchedule& schedule,
                                          MixMode mode = MixMode::Bernoulli);

/// Row-major Cartesian product ratios x step_counts, all sharing `seed`.
std::vector<MixSchedule> schedule_grid(const std::vector<double>& ratios,
                                       const std::vector<std::int64_t>& step_counts,
                                       std::uint64_t seed = 0);

/// {0.1, 0.5} x {3000, 5000, 10000, 15000}.
std::vector<MixSchedule> default_schedule_grid(std::uint64_t seed = 0);

std::size_t synthetic_count(const std::vector<ManifestEntry>& manifest);

/// Newline-delimited JSON, one record per step.
std::string encode_manifest(const std::vector<ManifestEntry>& manifest);
std::vector<ManifestEntry> decode_manifest(std::string_view text);

std::string_view to_string(Source v);

}  // namespace synthvid
