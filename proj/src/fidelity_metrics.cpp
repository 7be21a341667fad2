// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/fidelity_metrics.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/SVD>

#include "synthvid/json_io.hpp"
#include "synthvid/random.hpp"

namespace synthvid {

using json_io::json;

namespace {

constexpr double kNearDepth = 1e-3;
// Ratio of the third to the first singular value below which the DLT system
// has more than one solution direction.
constexpr double kRankTolerance = 1e-10;

}  // namespace

FeatureTrackSet generate_tracks(const Mesh& mesh, const CameraTrajectory& trajectory, int width,
                                int height, double pixel_noise_sigma, std::uint64_t seed) {
  if (width < 1 || height < 1) throw PreconditionError("generate_tracks: image size must be positive");
  if (!(pixel_noise_sigma >= 0.0) || !std::isfinite(pixel_noise_sigma)) {
    throw PreconditionError("generate_tracks: noise sigma must be finite and >= 0");
  }
  FeatureTrackSet out;
  out.cameras = trajectory.frames;
  out.width = width;
  out.height = height;

  const auto& verts = mesh.vertices();
  std::vector<std::vector<std::size_t>> faces_of(verts.size());
  for (std::size_t f = 0; f < mesh.triangles().size(); ++f) {
    for (int v : mesh.triangles()[f]) faces_of[static_cast<std::size_t>(v)].push_back(f);
  }

  // facing[k][v]: vertex v lies on a triangle facing camera k.
  std::vector<std::vector<bool>> facing(trajectory.frames.size(), std::vector<bool>(verts.size(), false));
  for (std::size_t k = 0; k < trajectory.frames.size(); ++k) {
    const Vec3& c = trajectory.frames[k].position;
    for (std::size_t f = 0; f < mesh.triangles().size(); ++f) {
      const auto& tri = mesh.triangles()[f];
      if (mesh.face_normal(f).dot(verts[static_cast<std::size_t>(tri[0])] - c) < 0.0) {
        for (int v : tri) facing[k][static_cast<std::size_t>(v)] = true;
      }
    }
  }

  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (faces_of[v].empty()) continue;
    Rng rng(derive_seed(seed, v));
    Track track;
    track.point_id = static_cast<int>(v);
    track.true_point = verts[v];
    for (std::size_t k = 0; k < trajectory.frames.size(); ++k) {
      if (!facing[k][v]) continue;
      const Projection p = project_point(trajectory.frames[k], verts[v], width, height);
      if (p.behind || p.depth <= kNearDepth) continue;
      if (!(p.pixel.x() >= 0.0 && p.pixel.x() < width && p.pixel.y() >= 0.0 && p.pixel.y() < height)) continue;
      Observation obs;
      obs.frame = static_cast<int>(k);
      obs.pixel = p.pixel;
      if (pixel_noise_sigma > 0.0) {
        obs.pixel.x() += rng.normal(0.0, pixel_noise_sigma);
        obs.pixel.y() += rng.normal(0.0, pixel_noise_sigma);
      }
      track.observations.push_back(obs);
    }
    if (track.observations.size() >= 2) out.tracks.push_back(std::move(track));
  }
  return out;
}

Vec3 triangulate(const Track& track, const std::vector<PinholeCamera>& cameras, int width, int height) {
  const auto m = track.observations.size();
  if (m < 2) throw PreconditionError("triangulate: need at least two observations");
  Eigen::MatrixXd a(2 * m, 4);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& obs = track.observations[i];
    if (obs.frame < 0 || static_cast<std::size_t>(obs.frame) >= cameras.size()) {
      throw PreconditionError("triangulate: observation frame has no camera");
    }
    const PinholeCamera& cam = cameras[static_cast<std::size_t>(obs.frame)];
    const double f = cam.focal_px(height);
    const double xn = (obs.pixel.x() - width / 2.0) / f;
    const double yn = (obs.pixel.y() - height / 2.0) / f;
    Eigen::Matrix<double, 3, 4> p;
    p.leftCols<3>() = cam.rotation;
    p.col(3) = -cam.rotation * cam.position;
    a.row(static_cast<Eigen::Index>(2 * i)) = xn * p.row(2) - p.row(0);
    a.row(static_cast<Eigen::Index>(2 * i + 1)) = yn * p.row(2) - p.row(1);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s[0] > 0.0) || s[2] <= kRankTolerance * s[0]) {
    throw DegenerateGeometryError("triangulate: observations do not constrain a unique point");
  }
  const Eigen::Vector4d x = svd.matrixV().col(3);
  if (std::abs(x[3]) <= 1e-12 * x.head<3>().norm()) {
    throw DegenerateGeometryError("triangulate: point lies at infinity");
  }
  return x.head<3>() / x[3];
}

TrackStats track_stats(const FeatureTrackSet& tracks) {
  TrackStats s;
  s.n_tracks = tracks.tracks.size();
  if (s.n_tracks == 0) return s;
  std::size_t total = 0;
  for (const auto& t : tracks.tracks) total += t.observations.size();
  s.mean_track_length = static_cast<double>(total) / static_cast<double>(s.n_tracks);
  return s;
}

ReconMetrics recon_metrics(const FeatureTrackSet& tracks) {
  if (tracks.tracks.empty()) throw PreconditionError("recon_metrics: track set is empty");
  struct Solved {
    double error_sum = 0.0;
    std::size_t length = 0;
  };
  std::vector<Solved> solved;
  ReconMetrics r;
  for (const auto& track : tracks.tracks) {
    Vec3 x;
    try {
      x = triangulate(track, tracks.cameras, tracks.width, tracks.height);
    } catch (const DegenerateGeometryError&) {
      ++r.degenerate_tracks;
      continue;
    }
    Solved s;
    for (const auto& obs : track.observations) {
      const PinholeCamera& cam = tracks.cameras[static_cast<std::size_t>(obs.frame)];
      s.error_sum += (project_point(cam, x, tracks.width, tracks.height).pixel - obs.pixel).norm();
    }
    s.length = track.observations.size();
    solved.push_back(s);
  }
  if (solved.empty()) throw DegenerateGeometryError("recon_metrics: no track could be triangulated");

  auto mean_error = [](const std::vector<Solved>& set) {
    double err = 0.0;
    std::size_t obs = 0;
    for (const auto& s : set) {
      err += s.error_sum;
      obs += s.length;
    }
    return std::pair{err / static_cast<double>(obs), obs};
  };
  r.n_points = solved.size();
  const auto [eps, n_obs] = mean_error(solved);
  r.reproj_error = eps;
  r.mean_track_length = static_cast<double>(n_obs) / static_cast<double>(r.n_points);
  if (solved.size() <= kTopTracks) {
    r.reproj_error_top1000 = r.reproj_error;
  } else {
    std::vector<std::size_t> order(solved.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return solved[a].error_sum / static_cast<double>(solved[a].length) <
             solved[b].error_sum / static_cast<double>(solved[b].length);
    });
    std::vector<Solved> best;
    for (std::size_t i = 0; i < kTopTracks; ++i) best.push_back(solved[order[i]]);
    r.reproj_error_top1000 = mean_error(best).first;
  }
  return r;
}

double pose_confidence(const PoseConfidenceGrid& grid) {
  if (grid.frames.empty()) throw PreconditionError("pose_confidence: grid is empty");
  double sum = 0.0;
  for (const auto& frame : grid.frames) {
    for (double c : frame) {
      if (!(c >= 0.0 && c <= 1.0)) throw PreconditionError("pose_confidence: cell outside [0, 1]");
      sum += c;
    }
  }
  return std::clamp(sum / static_cast<double>(grid.frames.size() * kPoseKeypoints), 0.0, 1.0);
}

std::string encode_tracks(const FeatureTrackSet& tracks) {
  json j;
  j["schema"] = 1;
  j["width"] = tracks.width;
  j["height"] = tracks.height;
  json cams = json::array();
  for (const auto& c : tracks.cameras) {
    const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> r = c.rotation;
    cams.push_back({{"position", json_io::to_json_array(c.position)},
                    {"rotation", json_io::to_json_array(r.reshaped<Eigen::RowMajor>())},
                    {"focal_mm", c.focal_mm},
                    {"sensor_height_mm", c.sensor_height_mm}});
  }
  j["cameras"] = std::move(cams);
  json list = json::array();
  for (const auto& t : tracks.tracks) {
    json jt;
    jt["point_id"] = t.point_id;
    if (t.true_point) jt["true_point"] = json_io::to_json_array(*t.true_point);
    json obs = json::array();
    for (const auto& o : t.observations) obs.push_back({o.frame, o.pixel.x(), o.pixel.y()});
    jt["observations"] = std::move(obs);
    list.push_back(std::move(jt));
  }
  j["tracks"] = std::move(list);
  return j.dump() + "\n";
}

FeatureTrackSet decode_tracks(std::string_view text) {
  using namespace json_io;
  const json j = parse(text);
  const std::string root;
  expect_keys(j, root, {"schema", "width", "height", "cameras", "tracks"});
  if (as_int(require(j, root, "schema"), "/schema") != 1) throw ParseError("/schema", "unsupported schema version");
  FeatureTrackSet out;
  const auto width = as_int(require(j, root, "width"), "/width");
  const auto height = as_int(require(j, root, "height"), "/height");
  if (width < 1 || height < 1 || width * height > kMaxRenderPixels) {
    throw ParseError("/width", "image size out of range");
  }
  out.width = static_cast<int>(width);
  out.height = static_cast<int>(height);

  const json& cams = as_array(require(j, root, "cameras"), "/cameras");
  for (std::size_t i = 0; i < cams.size(); ++i) {
    const std::string path = child("/cameras", i);
    expect_keys(cams[i], path, {"position", "rotation", "focal_mm", "sensor_height_mm"});
    PinholeCamera c;
    c.position = as_vec<3>(require(cams[i], path, "position"), child(path, "position"));
    const Eigen::Matrix<double, 9, 1> r = as_vec<9>(require(cams[i], path, "rotation"), child(path, "rotation"));
    c.rotation = r.reshaped<Eigen::RowMajor>(3, 3);
    c.focal_mm = as_double(require(cams[i], path, "focal_mm"), child(path, "focal_mm"));
    c.sensor_height_mm = as_double(require(cams[i], path, "sensor_height_mm"), child(path, "sensor_height_mm"));
    if (!(c.focal_mm > 0.0) || !(c.sensor_height_mm > 0.0)) throw ParseError(path, "focal length and sensor must be positive");
    out.cameras.push_back(c);
  }

  const json& list = as_array(require(j, root, "tracks"), "/tracks");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = child("/tracks", i);
    expect_keys(list[i], path, {"point_id", "true_point", "observations"});
    Track t;
    t.point_id = static_cast<int>(as_int(require(list[i], path, "point_id"), child(path, "point_id")));
    if (list[i].contains("true_point")) t.true_point = as_vec<3>(list[i].at("true_point"), child(path, "true_point"));
    const std::string obs_path = child(path, "observations");
    const json& obs = as_array(require(list[i], path, "observations"), obs_path);
    for (std::size_t k = 0; k < obs.size(); ++k) {
      const Eigen::Vector3d o = as_vec<3>(obs[k], child(obs_path, k));
      Observation ob;
      ob.frame = static_cast<int>(o[0]);
      if (static_cast<double>(ob.frame) != o[0] || ob.frame < 0 ||
          static_cast<std::size_t>(ob.frame) >= out.cameras.size()) {
        throw ParseError(child(obs_path, k), "frame index must name a camera");
      }
      if (!t.observations.empty() && ob.frame <= t.observations.back().frame) {
        throw ParseError(child(obs_path, k), "frame indices must be strictly increasing");
      }
      ob.pixel = o.tail<2>();
      t.observations.push_back(ob);
    }
    if (t.observations.size() < 2) throw ParseError(obs_path, "a track needs at least two observations");
    out.tracks.push_back(std::move(t));
  }
  return out;
}

std::string metrics_to_json(const ReconMetrics& metrics) {
  json j;
  j["N"] = metrics.n_points;
  j["T"] = metrics.mean_track_length;
  j["eps_proj"] = metrics.reproj_error;
  j["eps_proj_top1000"] = metrics.reproj_error_top1000;
  j["degenerate_tracks"] = metrics.degenerate_tracks;
  return j.dump(2);
}

}  // namespace synthvid
