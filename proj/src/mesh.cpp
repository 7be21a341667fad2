// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/mesh.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "synthvid/error.hpp"
#include "synthvid/json_io.hpp"

namespace synthvid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Flips any triangle whose normal disagrees with `outward` at its centroid.
void orient(const std::vector<Vec3>& v, std::vector<Mesh::Triangle>& tris,
            const std::function<Vec3(const Vec3&)>& outward) {
  for (auto& t : tris) {
    const Vec3 n = (v[t[1]] - v[t[0]]).cross(v[t[2]] - v[t[0]]);
    const Vec3 c = (v[t[0]] + v[t[1]] + v[t[2]]) / 3.0;
    if (n.dot(outward(c)) < 0.0) std::swap(t[1], t[2]);
  }
}

}  // namespace

Mesh::Mesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles, std::vector<Rgb> colors)
    : vertices_(std::move(vertices)) {
  if (colors.size() != triangles.size()) {
    throw PreconditionError("Mesh: need exactly one colour per triangle");
  }
  const int n = static_cast<int>(vertices_.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    for (int idx : t) {
      if (idx < 0 || idx >= n) {
        throw PreconditionError("Mesh: triangle " + std::to_string(i) + " references vertex " +
                                std::to_string(idx) + " of " + std::to_string(n));
      }
    }
    const Vec3 cross = (vertices_[t[1]] - vertices_[t[0]]).cross(vertices_[t[2]] - vertices_[t[0]]);
    if (!(cross.norm() > 1e-14)) continue;
    triangles_.push_back(t);
    colors_.push_back(colors[i]);
  }
}

Vec3 Mesh::center() const {
  if (vertices_.empty()) return Vec3::Zero();
  Vec3 lo = vertices_.front(), hi = vertices_.front();
  for (const auto& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return 0.5 * (lo + hi);
}

double Mesh::bounding_radius() const {
  const Vec3 c = center();
  double r = 0.0;
  for (const auto& p : vertices_) r = std::max(r, (p - c).norm());
  return r;
}

Vec3 Mesh::face_normal(std::size_t tri) const {
  const auto& t = triangles_[tri];
  return (vertices_[t[1]] - vertices_[t[0]]).cross(vertices_[t[2]] - vertices_[t[0]]);
}

Vec3 Mesh::centroid(std::size_t tri) const {
  const auto& t = triangles_[tri];
  return (vertices_[t[0]] + vertices_[t[1]] + vertices_[t[2]]) / 3.0;
}

Mesh Mesh::transformed(const Eigen::Matrix3d& rotation, const Vec3& pivot, const Vec3& offset) const {
  Mesh out = *this;
  for (auto& p : out.vertices_) p = rotation * (p - pivot) + pivot + offset;
  return out;
}

Mesh Mesh::normalized() const {
  Mesh out = *this;
  const Vec3 c = center();
  const double r = bounding_radius();
  if (!(r > 0.0)) return out;
  for (auto& p : out.vertices_) p = (p - c) / r;
  return out;
}

Mesh make_cube(const Rgb& color) {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) v.emplace_back(i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0);
  std::vector<Mesh::Triangle> t{{0, 1, 3}, {0, 3, 2}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
                                {2, 3, 7}, {2, 7, 6}, {0, 2, 6}, {0, 6, 4}, {1, 3, 7}, {1, 7, 5}};
  orient(v, t, [](const Vec3& c) { return c; });
  return Mesh(std::move(v), std::move(t), std::vector<Rgb>(12, color));
}

Mesh make_uv_sphere(int segments, int rings, const Rgb& color) {
  if (segments < 3 || rings < 2) throw PreconditionError("make_uv_sphere: too few segments/rings");
  std::vector<Vec3> v;
  v.emplace_back(0.0, 0.0, 1.0);
  for (int i = 1; i < rings; ++i) {
    const double theta = std::numbers::pi * i / rings;
    for (int j = 0; j < segments; ++j) {
      const double phi = kTwoPi * j / segments;
      v.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    }
  }
  v.emplace_back(0.0, 0.0, -1.0);
  const int south = static_cast<int>(v.size()) - 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * segments + (j % segments); };

  std::vector<Mesh::Triangle> t;
  for (int j = 0; j < segments; ++j) t.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i + 1 < rings; ++i) {
    for (int j = 0; j < segments; ++j) {
      t.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      t.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }
  for (int j = 0; j < segments; ++j) t.push_back({ring(rings - 1, j), south, ring(rings - 1, j + 1)});
  orient(v, t, [](const Vec3& c) { return c; });
  const std::size_t n = t.size();
  return Mesh(std::move(v), std::move(t), std::vector<Rgb>(n, color));
}

Mesh make_torus(int segments, int sides, double tube_ratio, const Rgb& color) {
  if (segments < 3 || sides < 3) throw PreconditionError("make_torus: too few segments/sides");
  if (!(tube_ratio > 0.0 && tube_ratio < 1.0)) throw PreconditionError("make_torus: tube ratio in (0,1)");
  std::vector<Vec3> v;
  for (int i = 0; i < segments; ++i) {
    const double u = kTwoPi * i / segments;
    for (int j = 0; j < sides; ++j) {
      const double w = kTwoPi * j / sides;
      const double rr = 1.0 + tube_ratio * std::cos(w);
      v.emplace_back(rr * std::cos(u), rr * std::sin(u), tube_ratio * std::sin(w));
    }
  }
  auto idx = [&](int i, int j) { return (i % segments) * sides + (j % sides); };
  std::vector<Mesh::Triangle> t;
  for (int i = 0; i < segments; ++i) {
    for (int j = 0; j < sides; ++j) {
      t.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
      t.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
    }
  }
  orient(v, t, [](const Vec3& c) {
    const Vec3 ring = Vec3(c.x(), c.y(), 0.0).normalized();
    return Vec3(c - ring);
  });
  const std::size_t n = t.size();
  return Mesh(std::move(v), std::move(t), std::vector<Rgb>(n, color));
}

Mesh make_cylinder(int segments, const Rgb& color) {
  if (segments < 3) throw PreconditionError("make_cylinder: too few segments");
  std::vector<Vec3> v;
  for (int j = 0; j < segments; ++j) {
    const double phi = kTwoPi * j / segments;
    v.emplace_back(std::cos(phi), std::sin(phi), -1.0);
    v.emplace_back(std::cos(phi), std::sin(phi), 1.0);
  }
  const int bottom = static_cast<int>(v.size());
  v.emplace_back(0.0, 0.0, -1.0);
  const int top = bottom + 1;
  v.emplace_back(0.0, 0.0, 1.0);
  std::vector<Mesh::Triangle> t;
  for (int j = 0; j < segments; ++j) {
    const int a = 2 * j, b = 2 * ((j + 1) % segments);
    t.push_back({a, b, b + 1});
    t.push_back({a, b + 1, a + 1});
    t.push_back({bottom, b, a});
    t.push_back({top, a + 1, b + 1});
  }
  orient(v, t, [](const Vec3& c) {
    // Caps face along the axis, the side faces radially.
    if (std::abs(c.z()) > 0.999) return Vec3(0.0, 0.0, c.z());
    return Vec3(c.x(), c.y(), 0.0);
  });
  const std::size_t n = t.size();
  return Mesh(std::move(v), std::move(t), std::vector<Rgb>(n, color));
}

bool is_primitive(std::string_view name) {
  return name == "cube" || name == "sphere" || name == "torus" || name == "cylinder";
}

Mesh primitive_mesh(std::string_view name) {
  if (name == "cube") return make_cube(Rgb(0.80, 0.45, 0.30)).normalized();
  if (name == "sphere") return make_uv_sphere(32, 16, Rgb(0.35, 0.55, 0.80)).normalized();
  if (name == "torus") return make_torus(32, 16, 0.35, Rgb(0.85, 0.75, 0.30)).normalized();
  if (name == "cylinder") return make_cylinder(32, Rgb(0.45, 0.75, 0.45)).normalized();
  throw MissingEntryError("unknown primitive \"" + std::string(name) + "\"");
}

namespace {

int parse_face_index(std::string_view token, int vertex_count, int line) {
  const auto slash = token.find('/');
  const std::string_view head = token.substr(0, slash);
  int idx = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
  if (ec != std::errc() || ptr != head.data() + head.size() || idx == 0) {
    throw ParseError("line " + std::to_string(line), "bad face index \"" + std::string(token) + "\"");
  }
  const int resolved = idx > 0 ? idx - 1 : vertex_count + idx;
  if (resolved < 0 || resolved >= vertex_count) {
    throw ParseError("line " + std::to_string(line),
                     "face index " + std::to_string(idx) + " out of range");
  }
  return resolved;
}

}  // namespace

Mesh parse_obj(std::string_view text, const Rgb& color) {
  std::vector<Vec3> v;
  std::vector<Mesh::Triangle> t;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x() >> p.y() >> p.z())) {
        throw ParseError("line " + std::to_string(line_no), "vertex needs three coordinates");
      }
      v.push_back(p);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string tok;
      while (ls >> tok) poly.push_back(parse_face_index(tok, static_cast<int>(v.size()), line_no));
      if (poly.size() < 3) throw ParseError("line " + std::to_string(line_no), "face needs three vertices");
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) t.push_back({poly[0], poly[k], poly[k + 1]});
    }
  }
  const std::size_t n = t.size();
  return Mesh(std::move(v), std::move(t), std::vector<Rgb>(n, color));
}

Mesh load_obj(const std::string& path, const Rgb& color) {
  return parse_obj(json_io::read_file(path), color);
}

}  // namespace synthvid
