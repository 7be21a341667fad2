// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synthvid/camera_rig.hpp"
#include "synthvid/captioner.hpp"
#include "synthvid/dataset_mixer.hpp"
#include "synthvid/error.hpp"
#include "synthvid/fidelity_metrics.hpp"
#include "synthvid/flowlab.hpp"
#include "synthvid/json_io.hpp"
#include "synthvid/micro_renderer.hpp"
#include "synthvid/param_sampler.hpp"
#include "synthvid/random.hpp"
#include "synthvid/scene_config.hpp"
#include "synthvid/simdrop.hpp"

namespace synthvid::cli {

namespace fs = std::filesystem;
using json_io::json;

namespace {

std::string numbered(const std::string& stem, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%05zu", i);
  return stem + buf;
}

std::string path_join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

void write_text(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  json_io::write_file(path, text);
}

Mesh scene_mesh(const SceneConfig& cfg, const std::string& mesh_path) {
  return mesh_path.empty() ? resolve_object(cfg.object_ref) : load_obj(mesh_path).normalized();
}

CameraTrajectory scene_trajectory(const SceneConfig& cfg, const Mesh& mesh) {
  return generate_trajectory(cfg, mesh.center(), mesh.bounding_radius());
}

json condition_json(int c) { return c == kNullCondition ? json(nullptr) : json(c); }

// ---- sample-configs --------------------------------------------------------

struct SampleArgs {
  std::string preset = "random";
  std::string preset_file;
  std::size_t count = 8;
  std::uint64_t seed = 0;
  std::string out;
};

std::vector<std::string> sample_configs(const SampleArgs& a, const std::string& dir) {
  PresetLibrary lib;
  DistributionPreset preset =
      a.preset_file.empty() ? lib.get(a.preset) : decode_preset(json_io::read_file(a.preset_file));
  ensure_dir(dir);
  std::vector<std::string> paths;
  const auto configs = sample_batch(preset, a.seed, a.count);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    paths.push_back(path_join(dir, numbered("config", i) + ".json"));
    save_config(configs[i], paths.back());
  }
  return paths;
}

// ---- trajectory ------------------------------------------------------------

std::string trajectory_json(const CameraTrajectory& traj) {
  json frames = json::array();
  for (std::size_t k = 0; k < traj.frames.size(); ++k) {
    const auto& c = traj.frames[k];
    const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> r = c.rotation;
    frames.push_back({{"frame", k},
                      {"position", json_io::to_json_array(c.position)},
                      {"rotation", json_io::to_json_array(r.reshaped<Eigen::RowMajor>())},
                      {"focal_mm", c.focal_mm},
                      {"focus", json_io::to_json_array(traj.focus_history[k])}});
  }
  json j;
  j["schema"] = 1;
  j["frames"] = std::move(frames);
  return j.dump(2) + "\n";
}

// ---- render ----------------------------------------------------------------

std::string render_clip(const SceneConfig& cfg, const Mesh& mesh, const std::string& dir) {
  const auto frames = render_video(cfg, mesh);
  write_frames(frames, dir);
  if (cfg.render.engine_target == EngineTarget::BlenderScript) {
    write_text(path_join(dir, "render.py"), emit_engine_script(cfg));
  }
  return hash_hex(frame_hash(frames.front()));
}

// ---- caption ---------------------------------------------------------------

TagMode parse_tag_mode(const std::string& s) {
  return json_io::as_enum<TagMode>(json(s), "--tags", kTagModeNames);
}

Granularity parse_granularity(const std::string& s) {
  return json_io::as_enum<Granularity>(json(s), "--granularity", kGranularityNames);
}

// ---- build-manifest --------------------------------------------------------

// URIs are `uri_base/<clip>`; `uri_base` defaults to `dir`.
std::vector<ManifestEntry> load_pool(const std::string& dir, Source source, const std::string& uri_base = {}) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / "caption.json")) names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  std::vector<ManifestEntry> pool;
  for (const auto& name : names) {
    ManifestEntry e;
    e.uri = path_join(uri_base.empty() ? dir : uri_base, name);
    e.source = source;
    e.caption = decode_caption(json_io::read_file(path_join(path_join(dir, name), "caption.json")));
    pool.push_back(std::move(e));
  }
  return pool;
}

// ---- train-toy -------------------------------------------------------------

struct TrainArgs {
  std::string dataset = "mixed";
  double ratio = 0.5;
  int steps = 5000;
  std::uint64_t seed = 0;
  std::string init;
  std::string out;
  double learning_rate = 0.01;
  int batch = 256;
  double dropout = 0.1;
  std::size_t size = 20000;
};

void train_toy(const TrainArgs& a, std::ostream& out) {
  ToyDataset data;
  if (a.dataset == "real") {
    data = toy_real(a.size, derive_seed(a.seed, 2));
  } else if (a.dataset == "synthetic") {
    data = toy_synthetic(a.size, derive_seed(a.seed, 2));
  } else if (a.dataset == "reference") {
    data = toy_synthetic(a.size, derive_seed(a.seed, 2), kReferenceLabel);
  } else if (a.dataset == "mixed") {
    data = toy_mixed(a.size, a.ratio, derive_seed(a.seed, 2));
  } else {
    data = gaussian_mixture_2d(a.size, derive_seed(a.seed, 2));
  }
  const int dim = static_cast<int>(data.points.rows());
  const VelocityModel init = a.init.empty() ? make_model(dim, dim == 3 ? kToyCondDim : 0, derive_seed(a.seed, 0))
                                            : load_checkpoint(a.init);
  TrainConfig cfg;
  cfg.steps = a.steps;
  cfg.learning_rate = a.learning_rate;
  cfg.batch_size = a.batch;
  cfg.cond_dropout = a.dropout;
  cfg.seed = derive_seed(a.seed, 1);
  const TrainResult r = train(init, data, cfg);
  save_checkpoint(r.model, {r.model.data_dim, r.model.cond_dim, a.seed, a.steps}, a.out);
  if (!r.loss_trace.empty()) {
    const std::size_t w = std::min<std::size_t>(100, r.loss_trace.size());
    double first = 0.0, last = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      first += r.loss_trace[i];
      last += r.loss_trace[r.loss_trace.size() - 1 - i];
    }
    out << "loss " << first / w << " -> " << last / w << "\n";
  }
  out << "wrote " << a.out << "\n";
}

// ---- sample-simdrop --------------------------------------------------------

struct SimdropArgs {
  std::string gen, ref, report;
  std::vector<double> alphas{0.0, 0.1, 0.2};
  double beta = 0.3;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  int steps = kDefaultGuidedSteps;
};

std::string simdrop_report(const VelocityModel& gen, const VelocityModel& ref, const SimdropArgs& a,
                           std::ostream& out) {
  GuidanceParams params;
  params.beta = a.beta;
  json runs = json::array();
  for (double alpha : a.alphas) {
    params.alpha = alpha;
    const ExperimentReport r = run_simdrop_experiment(gen, ref, params, a.n, a.seed, a.steps);
    json jr = json::parse(report_to_json(r));
    jr["alpha"] = alpha;
    runs.push_back(std::move(jr));
    out << "alpha " << alpha << ": " << r.covered_bins << "/" << kAngleBins << " bins";
    if (r.artifact_mean) out << ", artifact mean " << *r.artifact_mean;
    out << "\n";
  }
  json j;
  j["beta"] = a.beta;
  j["seed"] = a.seed;
  j["n_steps"] = a.steps;
  j["prompts"] = {{"t", condition_json(params.t)},
                  {"n", condition_json(params.n)},
                  {"t_hat", condition_json(params.t_hat)},
                  {"n_hat", condition_json(params.n_hat)}};
  j["runs"] = std::move(runs);
  return j.dump(2) + "\n";
}

// ---- evaluate --------------------------------------------------------------

std::string evaluation_json(const FeatureTrackSet& tracks) {
  const TrackStats stats = track_stats(tracks);
  json j = json::parse(metrics_to_json(recon_metrics(tracks)));
  j["tracks"] = stats.n_tracks;
  j["track_length"] = stats.mean_track_length;
  return j.dump(2) + "\n";
}

double pose_from_file(const std::string& path) {
  using namespace json_io;
  const json j = parse(read_file(path));
  const json& frames = as_array(j, "");
  PoseConfidenceGrid grid;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    grid.frames.push_back({});
    const json& row = as_array(frames[i], child("", i));
    if (row.size() != static_cast<std::size_t>(kPoseKeypoints)) {
      throw ParseError(child("", i), "expected 17 keypoint confidences");
    }
    for (std::size_t k = 0; k < row.size(); ++k) grid.frames.back()[k] = as_double(row[k], child(child("", i), k));
  }
  return pose_confidence(grid);
}

// ---- demo ------------------------------------------------------------------

void demo(std::uint64_t seed, const std::string& root, std::ostream& out) {
  const std::string syn_dir = path_join(root, "synthetic");
  const std::string real_dir = path_join(root, "real");
  ensure_dir(syn_dir);

  // Configs, frames, captions and zero-noise tracks per clip.
  const auto configs = sample_batch(random_preset(), derive_seed(seed, 0), 8);
  const CaptionRegistry registry = default_registry();
  write_text(path_join(root, "registry.json"), encode_registry(registry));
  json metrics = json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& cfg = configs[i];
    const std::string clip = path_join(syn_dir, numbered("clip", i));
    ensure_dir(clip);
    save_config(cfg, path_join(clip, "config.json"));
    const Mesh mesh = resolve_object(cfg.object_ref);
    const std::string hash = render_clip(cfg, mesh, clip);
    const ComposedCaption caption = caption_for_config(cfg, registry, Granularity::Generic, TagMode::TagsPlusNegative);
    write_text(path_join(clip, "caption.json"), encode_caption(caption));

    json entry;
    entry["clip"] = numbered("clip", i);
    entry["movement_type"] = std::string(to_string(cfg.camera.movement_type));
    const FeatureTrackSet tracks =
        generate_tracks(mesh, scene_trajectory(cfg, mesh), cfg.render.width, cfg.render.height, 0.0, derive_seed(seed, 1));
    if (tracks.tracks.empty()) {
      entry["skipped"] = "no point is observed twice";
    } else {
      write_text(path_join(clip, "tracks.json"), encode_tracks(tracks));
      try {
        entry["metrics"] = json::parse(evaluation_json(tracks));
      } catch (const DegenerateGeometryError& e) {
        entry["skipped"] = e.what();
      }
    }
    metrics.push_back(std::move(entry));
    out << numbered("clip", i) << " " << cfg.object_ref << " " << to_string(cfg.camera.movement_type) << " frame0 "
        << hash << " | " << caption.text << "\n";
  }
  write_text(path_join(root, "metrics_report.json"), metrics.dump(2) + "\n");

  // Stand-in real pool: untagged captions without footage.
  const char* objects[] = {"sphere", "cube", "torus", "cylinder"};
  const char* cameras[] = {"Dolly", "Following", "Pan", "Truck"};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto get = [&](ElementKind k, const std::string& id) {
      return registry.get({k, id, Granularity::Generic});
    };
    const ComposedCaption c = compose_caption(get(ElementKind::Object, objects[i]),
                                              get(ElementKind::Scene, i % 2 ? "Empty" : "Basic"),
                                              get(ElementKind::Camera, cameras[i]), std::nullopt, TagMode::None,
                                              Domain::Real);
    write_text(path_join(path_join(real_dir, numbered("real", i)), "caption.json"), encode_caption(c));
  }

  const auto manifest =
      build_manifest(load_pool(syn_dir, Source::Synthetic, "synthetic"), load_pool(real_dir, Source::Real, "real"),
                     MixSchedule{0.5, 1000, derive_seed(seed, 2)});
  write_text(path_join(root, "manifest.ndjson"), encode_manifest(manifest));
  out << "manifest: " << synthetic_count(manifest) << "/" << manifest.size() << " synthetic\n";

  const ToyModels models = train_toy_models(derive_seed(seed, 3));
  const std::string model_dir = path_join(root, "models");
  ensure_dir(model_dir);
  const ToyTrainingPlan plan;
  save_checkpoint(models.base, {3, kToyCondDim, seed, plan.base_steps}, path_join(model_dir, "base.ckpt"));
  save_checkpoint(models.gen, {3, kToyCondDim, seed, plan.gen_steps}, path_join(model_dir, "gen.ckpt"));
  save_checkpoint(models.ref, {3, kToyCondDim, seed, plan.ref_steps}, path_join(model_dir, "ref.ckpt"));

  SimdropArgs sa;
  sa.seed = derive_seed(seed, 4);
  write_text(path_join(root, "simdrop_report.json"), simdrop_report(models.gen, models.ref, sa, out));
  out << "wrote " << root << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"synthvid: synthetic video data, toy flow models and fidelity metrics"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample-configs", "Sample scene configs from a preset");
  sample_cmd->add_option("--preset", sample.preset, "Built-in preset name");
  sample_cmd->add_option("--preset-file", sample.preset_file, "Preset JSON file")->check(CLI::ExistingFile);
  sample_cmd->add_option("--count", sample.count, "Number of configs")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample.seed, "Base seed");
  sample_cmd->add_option("--out", sample.out, "Output directory")->required();

  std::string config_path, mesh_path, out_path;
  auto* traj_cmd = app.add_subcommand("trajectory", "Write the per-frame cameras of a config");
  traj_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  traj_cmd->add_option("--mesh", mesh_path)->check(CLI::ExistingFile);
  traj_cmd->add_option("--out", out_path)->required();

  auto* render_cmd = app.add_subcommand("render", "Render a config to numbered PPM frames");
  render_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--mesh", mesh_path)->check(CLI::ExistingFile);
  render_cmd->add_option("--out", out_path)->required();

  std::string registry_path, tags = "tags", granularity = "Generic";
  auto* caption_cmd = app.add_subcommand("caption", "Compose the caption of a config");
  caption_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  caption_cmd->add_option("--registry", registry_path)->check(CLI::ExistingFile);
  caption_cmd->add_option("--tags", tags)->check(CLI::IsMember({"none", "tags", "tags+np"}));
  caption_cmd->add_option("--granularity", granularity)->check(CLI::IsMember({"Generic", "FineGrained"}));
  caption_cmd->add_option("--out", out_path, "Caption JSON file (default: stdout)");

  std::string syn_dir, real_dir;
  MixSchedule schedule;
  bool exact = false;
  auto* manifest_cmd = app.add_subcommand("build-manifest", "Mix synthetic and real pools into a manifest");
  manifest_cmd->add_option("--syn", syn_dir)->required()->check(CLI::ExistingDirectory);
  manifest_cmd->add_option("--real", real_dir)->required()->check(CLI::ExistingDirectory);
  manifest_cmd->add_option("--ratio", schedule.ratio)->required()->check(CLI::Range(0.0, 1.0));
  manifest_cmd->add_option("--steps", schedule.total_steps)->required()->check(CLI::PositiveNumber);
  manifest_cmd->add_option("--seed", schedule.seed);
  manifest_cmd->add_flag("--exact", exact, "Exact-count interleave instead of per-step draws");
  manifest_cmd->add_option("--out", out_path)->required();

  TrainArgs targs;
  auto* train_cmd = app.add_subcommand("train-toy", "Train a toy flow-matching model");
  train_cmd->add_option("--dataset", targs.dataset)
      ->check(CLI::IsMember({"real", "synthetic", "mixed", "reference", "gaussian"}));
  train_cmd->add_option("--ratio", targs.ratio)->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--steps", targs.steps)->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--seed", targs.seed);
  train_cmd->add_option("--init", targs.init, "Checkpoint to continue from")->check(CLI::ExistingFile);
  train_cmd->add_option("--lr", targs.learning_rate)->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch", targs.batch)->check(CLI::PositiveNumber);
  train_cmd->add_option("--dropout", targs.dropout)->check(CLI::Range(0.0, 0.999));
  train_cmd->add_option("--size", targs.size)->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", targs.out)->required();

  SimdropArgs sargs;
  auto* simdrop_cmd = app.add_subcommand("sample-simdrop", "Guided sampling report over an alpha sweep");
  simdrop_cmd->add_option("--gen", sargs.gen)->required()->check(CLI::ExistingFile);
  simdrop_cmd->add_option("--ref", sargs.ref)->required()->check(CLI::ExistingFile);
  simdrop_cmd->add_option("--alpha", sargs.alphas)->check(CLI::NonNegativeNumber)->delimiter(',');
  simdrop_cmd->add_option("--beta", sargs.beta)->check(CLI::NonNegativeNumber);
  simdrop_cmd->add_option("--n", sargs.n);
  simdrop_cmd->add_option("--seed", sargs.seed);
  simdrop_cmd->add_option("--steps", sargs.steps)->check(CLI::PositiveNumber);
  simdrop_cmd->add_option("--report", sargs.report)->required();

  std::string tracks_path, tracks_out, pose_path;
  double noise = 0.0;
  std::uint64_t eval_seed = 0;
  auto* eval_cmd = app.add_subcommand("evaluate", "Reconstruction metrics (N, T, eps, eps_top1000)");
  auto* tracks_opt = eval_cmd->add_option("--tracks", tracks_path)->check(CLI::ExistingFile);
  auto* eval_config = eval_cmd->add_option("--config", config_path)->check(CLI::ExistingFile);
  eval_cmd->add_option("--mesh", mesh_path)->check(CLI::ExistingFile)->needs(eval_config);
  eval_cmd->add_option("--noise", noise)->check(CLI::NonNegativeNumber)->needs(eval_config);
  eval_cmd->add_option("--seed", eval_seed)->needs(eval_config);
  eval_cmd->add_option("--tracks-out", tracks_out)->needs(eval_config);
  eval_cmd->add_option("--pose", pose_path, "17-keypoint confidence grid JSON")->check(CLI::ExistingFile);
  eval_cmd->add_option("--report", out_path);
  tracks_opt->excludes(eval_config);

  std::uint64_t demo_seed = 7;
  std::string demo_out = "synthvid_demo";
  auto* demo_cmd = app.add_subcommand("demo", "Run every stage end to end under one seed");
  demo_cmd->add_option("--seed", demo_seed);
  demo_cmd->add_option("--out", demo_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }
  if (eval_cmd->parsed() && tracks_path.empty() && config_path.empty() && pose_path.empty()) {
    err << "evaluate: one of --tracks, --config or --pose is required\n" << eval_cmd->help();
    return kExitUsage;
  }

  try {
    if (sample_cmd->parsed()) {
      const auto paths = sample_configs(sample, sample.out);
      out << "wrote " << paths.size() << " configs to " << sample.out << "\n";
    } else if (traj_cmd->parsed()) {
      const SceneConfig cfg = load_config(config_path);
      write_text(out_path, trajectory_json(scene_trajectory(cfg, scene_mesh(cfg, mesh_path))));
      out << "wrote " << out_path << "\n";
    } else if (render_cmd->parsed()) {
      const SceneConfig cfg = load_config(config_path);
      const std::string hash = render_clip(cfg, scene_mesh(cfg, mesh_path), out_path);
      out << "rendered " << cfg.n_frames << " frames to " << out_path << " (frame 0 " << hash << ")\n";
    } else if (caption_cmd->parsed()) {
      const SceneConfig cfg = load_config(config_path);
      const CaptionRegistry reg =
          registry_path.empty() ? default_registry() : decode_registry(json_io::read_file(registry_path));
      const std::string text =
          encode_caption(caption_for_config(cfg, reg, parse_granularity(granularity), parse_tag_mode(tags)));
      if (out_path.empty()) {
        out << text;
      } else {
        write_text(out_path, text);
      }
    } else if (manifest_cmd->parsed()) {
      const auto manifest = build_manifest(load_pool(syn_dir, Source::Synthetic), load_pool(real_dir, Source::Real),
                                           schedule, exact ? MixMode::ExactCount : MixMode::Bernoulli);
      write_text(out_path, encode_manifest(manifest));
      out << "wrote " << manifest.size() << " entries (" << synthetic_count(manifest) << " synthetic) to "
          << out_path << "\n";
    } else if (train_cmd->parsed()) {
      train_toy(targs, out);
    } else if (simdrop_cmd->parsed()) {
      const std::string report = simdrop_report(load_checkpoint(sargs.gen), load_checkpoint(sargs.ref), sargs, out);
      write_text(sargs.report, report);
    } else if (eval_cmd->parsed()) {
      json report;
      if (!tracks_path.empty() || !config_path.empty()) {
        FeatureTrackSet tracks;
        if (!tracks_path.empty()) {
          tracks = decode_tracks(json_io::read_file(tracks_path));
        } else {
          const SceneConfig cfg = load_config(config_path);
          const Mesh mesh = scene_mesh(cfg, mesh_path);
          tracks = generate_tracks(mesh, scene_trajectory(cfg, mesh), cfg.render.width, cfg.render.height, noise,
                                   eval_seed);
          if (!tracks_out.empty()) write_text(tracks_out, encode_tracks(tracks));
        }
        report = json::parse(evaluation_json(tracks));
      }
      if (!pose_path.empty()) {
        report["eps_conf"] = pose_from_file(pose_path);
        report["eps_conf_reference"] = {{"gym", kReferencePoseConfidenceGym},
                                        {"dance", kReferencePoseConfidenceDance}};
      }
      const std::string text = report.dump(2) + "\n";
      if (out_path.empty()) {
        out << text;
      } else {
        write_text(out_path, text);
      }
    } else if (demo_cmd->parsed()) {
      demo(demo_seed, demo_out, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace synthvid::cli
