// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/dataset_mixer.hpp"

#include <cmath>

#include "synthvid/error.hpp"
#include "synthvid/json_io.hpp"
#include "synthvid/random.hpp"

namespace synthvid {

using json_io::json;

std::string_view to_string(Source v) { return kSourceNames[static_cast<std::size_t>(v)]; }

namespace {

Domain domain_of(Source s) { return s == Source::Synthetic ? Domain::Synthetic : Domain::Real; }

void check_pool(const std::vector<ManifestEntry>& pool, Source source) {
  for (const auto& e : pool) {
    if (e.source != source || e.caption.domain != domain_of(source)) {
      throw PreconditionError("build_manifest: entry \"" + e.uri + "\" does not belong in the " +
                              std::string(to_string(source)) + " pool");
    }
    if (source == Source::Real && !e.caption.tags.empty()) {
      throw PreconditionError("build_manifest: Real entry \"" + e.uri + "\" carries special tags");
    }
  }
}

}  // namespace

std::vector<ManifestEntry> build_manifest(const std::vector<ManifestEntry>& synthetic,
                                          const std::vector<ManifestEntry>& real,
                                          const MixSchedule& schedule, MixMode mode) {
  if (!(schedule.ratio >= 0.0 && schedule.ratio <= 1.0)) {
    throw PreconditionError("build_manifest: ratio must lie in [0, 1]");
  }
  if (schedule.total_steps < 1) throw PreconditionError("build_manifest: total_steps must be >= 1");
  check_pool(synthetic, Source::Synthetic);
  check_pool(real, Source::Real);
  if (schedule.ratio > 0.0 && synthetic.empty()) {
    throw PreconditionError("build_manifest: synthetic pool is empty");
  }
  if (schedule.ratio < 1.0 && real.empty()) throw PreconditionError("build_manifest: real pool is empty");

  const auto steps = static_cast<std::uint64_t>(schedule.total_steps);
  const auto exact = static_cast<std::uint64_t>(std::llround(schedule.ratio * static_cast<double>(steps)));
  Rng coin(derive_seed(schedule.seed, 0));
  Rng pick(derive_seed(schedule.seed, 1));
  std::vector<ManifestEntry> out;
  out.reserve(steps);
  for (std::uint64_t k = 0; k < steps; ++k) {
    bool syn;
    if (mode == MixMode::Bernoulli) {
      syn = coin.uniform01() < schedule.ratio;
    } else {
      syn = (k + 1) * exact / steps > k * exact / steps;
    }
    const auto& pool = syn ? synthetic : real;
    out.push_back(pool[pick.index(pool.size())]);
  }
  return out;
}

std::vector<MixSchedule> schedule_grid(const std::vector<double>& ratios,
                                       const std::vector<std::int64_t>& step_counts,
                                       std::uint64_t seed) {
  if (ratios.empty() || step_counts.empty()) throw PreconditionError("schedule_grid: empty input");
  std::vector<MixSchedule> out;
  for (double r : ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw PreconditionError("schedule_grid: ratio must lie in [0, 1]");
    for (auto s : step_counts) {
      if (s < 1) throw PreconditionError("schedule_grid: step counts must be >= 1");
      out.push_back({r, s, seed});
    }
  }
  return out;
}

std::vector<MixSchedule> default_schedule_grid(std::uint64_t seed) {
  return schedule_grid({0.1, 0.5}, {3000, 5000, 10000, 15000}, seed);
}

std::size_t synthetic_count(const std::vector<ManifestEntry>& manifest) {
  std::size_t n = 0;
  for (const auto& e : manifest) n += e.source == Source::Synthetic;
  return n;
}

std::string encode_manifest(const std::vector<ManifestEntry>& manifest) {
  std::string out;
  for (std::size_t k = 0; k < manifest.size(); ++k) {
    const auto& e = manifest[k];
    json j;
    j["step"] = k;
    j["uri"] = e.uri;
    j["source"] = std::string(to_string(e.source));
    j["caption"] = json::parse(encode_caption(e.caption));
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ManifestEntry> decode_manifest(std::string_view text) {
  using namespace json_io;
  std::vector<ManifestEntry> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    json j;
    try {
      j = parse(line);
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
    expect_keys(j, where, {"step", "uri", "source", "caption"});
    if (as_int(require(j, where, "step"), where + "/step") != static_cast<std::int64_t>(out.size())) {
      throw ParseError(where + "/step", "steps must be consecutive from 0");
    }
    ManifestEntry e;
    e.uri = as_string(require(j, where, "uri"), where + "/uri");
    e.source = as_enum<Source>(require(j, where, "source"), where + "/source", kSourceNames);
    try {
      e.caption = decode_caption(require(j, where, "caption").dump());
    } catch (const ParseError& err) {
      throw ParseError(where + "/caption" + err.where(), err.what());
    }
    if (e.caption.domain != domain_of(e.source)) {
      throw ParseError(where + "/caption/domain", "caption domain does not match the source");
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace synthvid
