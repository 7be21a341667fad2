// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "synthvid/camera_rig.hpp"
#include "synthvid/mesh.hpp"

namespace synthvid {

struct Observation {
  int frame = 0;
  Eigen::Vector2d pixel = Eigen::Vector2d::Zero();
  bool operator==(const Observation&) const = default;
};

/// 2D observations of one 3D point, frames strictly increasing.
struct Track {
  int point_id = 0;
  std::optional<Vec3> true_point;
  std::vector<Observation> observations;
  bool operator==(const Track&) const = default;
};

struct FeatureTrackSet {
  std::vector<Track> tracks;
  std::vector<PinholeCamera> cameras;
  int width = 0;
  int height = 0;
};

/// Every vertex is a candidate point. It is observed in frame k when it
/// projects inside the image in front of the camera and belongs to at least
/// one triangle facing the camera. Pixels get isotropic Gaussian noise of
/// `pixel_noise_sigma`; tracks with fewer than two observations are dropped.
FeatureTrackSet generate_tracks(const Mesh& mesh, const CameraTrajectory& trajectory, int width,
                                int height, double pixel_noise_sigma, std::uint64_t seed);

/// Linear (DLT) triangulation in normalized camera coordinates, solved by
/// SVD. Throws PreconditionError with fewer than two observations and
/// DegenerateGeometryError when the rays admit no unique point.
Vec3 triangulate(const Track& track, const std::vector<PinholeCamera>& cameras, int width, int height);

inline constexpr std::size_t kTopTracks = 1000;

/// N, T, mean reprojection error and its top-1000 variant, in pixels.
struct ReconMetrics {
  std::size_t n_points = 0;
  double mean_track_length = 0.0;
  double reproj_error = 0.0;
  double reproj_error_top1000 = 0.0;
  std::size_t degenerate_tracks = 0;
};

/// Track count and mean length of a track set, before triangulation.
struct TrackStats {
  std::size_t n_tracks = 0;
  double mean_track_length = 0.0;
};

TrackStats track_stats(const FeatureTrackSet& tracks);

/// Triangulates every track; degenerate tracks are skipped and lower N.
/// The top-1000 error averages the observation errors of the 1000 tracks
/// with the smallest per-track mean error, and equals the full mean when
/// N <= 1000. Throws PreconditionError on an empty set and
/// DegenerateGeometryError when no track can be triangulated.
ReconMetrics recon_metrics(const FeatureTrackSet& tracks);

inline constexpr int kPoseKeypoints = 17;

struct PoseConfidenceGrid {
  std::vector<std::array<double, kPoseKeypoints>> frames;
};

/// Mean over all (frame, keypoint) cells. Throws PreconditionError on an
/// empty grid or a cell outside [0, 1].
double pose_confidence(const PoseConfidenceGrid& grid);

/// Gym and Dance pose confidence of the reference model, for display only.
inline constexpr double kReferencePoseConfidenceGym = 0.791;
inline constexpr double kReferencePoseConfidenceDance = 0.837;

std::string encode_tracks(const FeatureTrackSet& tracks);
FeatureTrackSet decode_tracks(std::string_view text);

/// {"N", "T", "eps_proj", "eps_proj_top1000", "degenerate_tracks"}.
std::string metrics_to_json(const ReconMetrics& metrics);

}  // namespace synthvid
