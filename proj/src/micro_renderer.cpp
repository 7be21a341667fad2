// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include "synthvid/micro_renderer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "synthvid/error.hpp"

namespace synthvid {

namespace {

constexpr double kNearPlane = 1e-3;

struct ScreenVertex {
  double x, y, z;
};

double edge(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

struct Target {
  Frame color;
  std::vector<double> depth;
};

void put(Target& t, int x, int y, double z, const std::array<std::uint8_t, 3>& rgb) {
  const std::size_t idx = static_cast<std::size_t>(y) * t.color.width + x;
  if (!(z < t.depth[idx])) return;
  t.depth[idx] = z;
  std::uint8_t* px = t.color.at(x, y);
  px[0] = rgb[0];
  px[1] = rgb[1];
  px[2] = rgb[2];
}

void raster_triangle(Target& t, const ScreenVertex& v0, const ScreenVertex& v1, const ScreenVertex& v2,
                     const std::array<std::uint8_t, 3>& rgb) {
  const double area = edge(v0, v1, v2.x, v2.y);
  if (area == 0.0 || !std::isfinite(area)) return;
  const int w = t.color.width, h = t.color.height;
  const double min_x = std::min({v0.x, v1.x, v2.x}), max_x = std::max({v0.x, v1.x, v2.x});
  const double min_y = std::min({v0.y, v1.y, v2.y}), max_y = std::max({v0.y, v1.y, v2.y});
  if (max_x < 0.0 || max_y < 0.0 || min_x > w || min_y > h) return;
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
  const int x1 = std::min(w - 1, static_cast<int>(std::ceil(max_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
  const int y1 = std::min(h - 1, static_cast<int>(std::ceil(max_y)));
  for (int y = y0; y <= y1; ++y) {
    const double py = y + 0.5;
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double b0 = edge(v1, v2, px, py) / area;
      const double b1 = edge(v2, v0, px, py) / area;
      const double b2 = edge(v0, v1, px, py) / area;
      if (b0 < 0.0 || b1 < 0.0 || b2 < 0.0) continue;
      // Depth is affine in 1/z across a projected triangle.
      const double inv_z = b0 / v0.z + b1 / v1.z + b2 / v2.z;
      put(t, x, y, 1.0 / inv_z, rgb);
    }
  }
}

std::array<std::uint8_t, 3> to_rgb8(const Rgb& c) {
  return {to_byte(c.x()), to_byte(c.y()), to_byte(c.z())};
}

// Ray cast against the room box; returns false if the ray misses it.
bool room_hit(const Vec3& origin, const Vec3& dir, double& t_hit, Vec3& normal) {
  const Vec3 lo(-kRoomHalfWidth, -kRoomHalfWidth, kRoomFloor);
  const Vec3 hi(kRoomHalfWidth, kRoomHalfWidth, kRoomCeiling);
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int near_axis = -1, far_axis = -1;
  double near_sign = 0.0, far_sign = 0.0;
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (origin[a] < lo[a] || origin[a] > hi[a]) return false;
      continue;
    }
    double ta = (lo[a] - origin[a]) / dir[a];
    double tb = (hi[a] - origin[a]) / dir[a];
    // Outward normal sign of the slab face hit at ta / tb.
    double sa = -1.0, sb = 1.0;
    if (ta > tb) {
      std::swap(ta, tb);
      std::swap(sa, sb);
    }
    if (ta > t_near) {
      t_near = ta;
      near_axis = a;
      near_sign = sa;
    }
    if (tb < t_far) {
      t_far = tb;
      far_axis = a;
      far_sign = sb;
    }
  }
  if (t_far < std::max(t_near, 0.0)) return false;
  normal = Vec3::Zero();
  if (t_near > 0.0) {
    t_hit = t_near;
    normal[near_axis] = near_sign;
  } else {
    t_hit = t_far;
    normal[far_axis] = -far_sign;
  }
  return true;
}

void fill_background(Target& t, const PinholeCamera& camera, const LightingSpec& lighting,
                     const EnvSpec& env) {
  const int w = t.color.width, h = t.color.height;
  if (env.scene_type == SceneType::Empty) {
    const Rgba bg = env.background_color.value_or(Rgba(0.0, 0.0, 0.0, 1.0));
    const auto rgb = to_rgb8(bg.head<3>());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) std::copy(rgb.begin(), rgb.end(), t.color.at(x, y));
    }
    return;
  }
  const Rgb wall = env.scene_color.value_or(Rgb::Constant(0.5));
  const double f = camera.focal_px(h);
  const Eigen::Matrix3d to_world = camera.rotation.transpose();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec3 d_cam((x + 0.5 - 0.5 * w) / f, (y + 0.5 - 0.5 * h) / f, 1.0);
      const Vec3 d = to_world * d_cam;
      double t_hit = 0.0;
      Vec3 n;
      std::array<std::uint8_t, 3> rgb;
      if (room_hit(camera.position, d, t_hit, n)) {
        rgb = to_rgb8(shade_lambert(wall, n, camera.position + t_hit * d, lighting));
        // With d_cam.z == 1 the ray parameter equals camera-space depth.
        t.depth[static_cast<std::size_t>(y) * w + x] = t_hit;
      } else {
        rgb = to_rgb8(wall * lighting.ambient_intensity);
      }
      std::copy(rgb.begin(), rgb.end(), t.color.at(x, y));
    }
  }
}

// Clips a camera-space polygon against z >= kNearPlane.
std::vector<Vec3> clip_near(const std::array<Vec3, 3>& tri) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3& a = tri[i];
    const Vec3& b = tri[(i + 1) % 3];
    const bool a_in = a.z() >= kNearPlane, b_in = b.z() >= kNearPlane;
    if (a_in) out.push_back(a);
    if (a_in != b_in) {
      const double s = (kNearPlane - a.z()) / (b.z() - a.z());
      Vec3 p = a + s * (b - a);
      p.z() = kNearPlane;
      out.push_back(p);
    }
  }
  return out;
}

std::string num(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  std::string s(buf.data(), res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string triplet(const Eigen::Ref<const Eigen::VectorXd>& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += num(v[i]);
  }
  return s + ")";
}

}  // namespace

Frame::Frame(int w, int h) : width(w), height(h) {
  if (w <= 0 || h <= 0) throw PreconditionError("Frame: dimensions must be positive");
  pixels.assign(static_cast<std::size_t>(w) * h * 3, 0);
}

std::uint8_t to_byte(double channel) {
  const double c = std::clamp(std::isnan(channel) ? 0.0 : channel, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

Rgb shade_lambert(const Rgb& base, const Vec3& normal, const Vec3& point, const LightingSpec& lighting) {
  Rgb light = Rgb::Constant(lighting.ambient_intensity);
  for (const auto& l : lighting.lights) {
    const Vec3 to_light = l.position - point;
    const double len = to_light.norm();
    if (!(len > 0.0)) continue;
    const double lambert = std::max(0.0, normal.dot(to_light / len));
    light += l.intensity * lambert * kelvin_to_rgb(l.color_temp_k);
  }
  return base.cwiseProduct(light);
}

Frame render_frame(const Mesh& mesh, const PinholeCamera& camera, const LightingSpec& lighting,
                   const EnvSpec& env, int width, int height) {
  Target t{Frame(width, height), std::vector<double>(static_cast<std::size_t>(width) * height,
                                                     std::numeric_limits<double>::infinity())};
  fill_background(t, camera, lighting, env);

  const double f = camera.focal_px(height);
  const auto& verts = mesh.vertices();
  const auto& tris = mesh.triangles();
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const Vec3 n = mesh.face_normal(i);
    const Vec3& a = verts[tris[i][0]];
    if (!(n.dot(a - camera.position) < 0.0)) continue;  // back-facing or edge-on
    const auto rgb = to_rgb8(shade_lambert(mesh.colors()[i], n.normalized(), mesh.centroid(i), lighting));
    const std::array<Vec3, 3> pc{camera.to_camera(a), camera.to_camera(verts[tris[i][1]]),
                                 camera.to_camera(verts[tris[i][2]])};
    const auto poly = clip_near(pc);
    if (poly.size() < 3) continue;
    std::vector<ScreenVertex> sv;
    sv.reserve(poly.size());
    for (const auto& p : poly) sv.push_back({f * p.x() / p.z() + 0.5 * width, f * p.y() / p.z() + 0.5 * height, p.z()});
    for (std::size_t k = 1; k + 1 < sv.size(); ++k) raster_triangle(t, sv[0], sv[k], sv[k + 1], rgb);
  }
  return std::move(t.color);
}

Frame render_at_quality(const Mesh& mesh, const PinholeCamera& camera, const LightingSpec& lighting,
                        const EnvSpec& env, int width, int height, RenderQuality quality) {
  if (quality == RenderQuality::High) return render_frame(mesh, camera, lighting, env, width, height);
  const int lw = std::max(1, width / 2), lh = std::max(1, height / 2);
  const Frame low = render_frame(mesh, camera, lighting, env, lw, lh);
  Frame out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(lh - 1, y * lh / height);
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(lw - 1, x * lw / width);
      std::copy_n(low.at(sx, sy), 3, out.at(x, y));
    }
  }
  return out;
}

Mesh animate_mesh(const SceneConfig& cfg, const Mesh& mesh, int frame) {
  const auto& anim = cfg.object_animation;
  const double time = static_cast<double>(frame) / cfg.fps;
  switch (anim.kind) {
    case AnimationKind::None:
      return mesh;
    case AnimationKind::Spin: {
      const double angle = std::fmod(anim.spin_deg_per_s * time, 360.0) * std::numbers::pi / 180.0;
      if (angle == 0.0) return mesh;
      const Eigen::Matrix3d r = Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
      return mesh.transformed(r, mesh.center(), Vec3::Zero());
    }
    case AnimationKind::Translate:
      if (frame == 0) return mesh;
      return mesh.transformed(Eigen::Matrix3d::Identity(), Vec3::Zero(), time * anim.velocity);
  }
  return mesh;
}

Frame render_clip_frame(const SceneConfig& cfg, const Mesh& mesh, const CameraTrajectory& trajectory,
                        int frame) {
  return render_at_quality(animate_mesh(cfg, mesh, frame), trajectory.frames.at(frame), cfg.lighting,
                           cfg.environment, cfg.render.width, cfg.render.height, cfg.render.quality);
}

std::vector<Frame> render_video(const SceneConfig& cfg, const Mesh& mesh) {
  const Vec3 center = mesh.empty() ? Vec3::Zero() : mesh.center();
  const double radius = mesh.empty() ? 1.0 : mesh.bounding_radius();
  const CameraTrajectory traj = generate_trajectory(cfg, center, radius);
  std::vector<Frame> frames;
  frames.reserve(cfg.n_frames);
  for (int k = 0; k < cfg.n_frames; ++k) frames.push_back(render_clip_frame(cfg, mesh, traj, k));
  return frames;
}

SceneConfig golden_cube_scene() {
  SceneConfig cfg;
  cfg.object_ref = "cube";
  cfg.object_animation.kind = AnimationKind::Spin;
  cfg.object_animation.spin_deg_per_s = 30.0;
  cfg.camera.focus_type = FocusType::Fixed;
  cfg.camera.focus_position = FocusPosition::Upper;
  cfg.camera.movement_type = MovementType::Spin;
  cfg.camera.movement_value = 90.0;
  cfg.camera.initial_position = Vec3(3.0, -5.0, 2.5);
  cfg.camera.coverage = 0.6;
  cfg.lighting.lights = {Light{Vec3(4.0, -3.0, 6.0), 4000.0, 0.8}, Light{Vec3(-5.0, -2.0, 4.0), 8000.0, 0.5}};
  cfg.lighting.ambient_intensity = 0.15;
  cfg.environment.scene_type = SceneType::Basic;
  cfg.environment.scene_color = Rgb(0.55, 0.6, 0.65);
  cfg.render = RenderSpec{96, 72, RenderQuality::High, EngineTarget::Internal};
  cfg.seed = 7;
  cfg.n_frames = 12;
  cfg.fps = 24;
  return cfg;
}

Mesh resolve_object(const std::string& object_ref) {
  if (is_primitive(object_ref)) return primitive_mesh(object_ref);
  return load_obj(object_ref).normalized();
}

std::uint64_t frame_hash(const Frame& frame) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (int v : {frame.width, frame.height}) {
    const auto u = static_cast<std::uint32_t>(v);
    for (int s = 0; s < 32; s += 8) feed(static_cast<std::uint8_t>(u >> s));
  }
  for (std::uint8_t b : frame.pixels) feed(b);
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void write_ppm(const Frame& frame, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "P6\n" << frame.width << ' ' << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()), static_cast<std::streamsize>(frame.pixels.size()));
  if (!out) throw Error("failed writing " + path);
}

Frame read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  auto token = [&]() {
    std::string tok;
    while (tok.empty()) {
      const int c = in.get();
      if (c == EOF) throw ParseError(path, "truncated PPM header");
      if (c == '#') {
        std::string skip;
        std::getline(in, skip);
      } else if (!std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        while (in.peek() != EOF && !std::isspace(in.peek())) tok.push_back(static_cast<char>(in.get()));
      }
    }
    return tok;
  };
  if (token() != "P6") throw ParseError(path, "not a binary PPM (P6)");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::logic_error&) {
    throw ParseError(path, "malformed PPM header");
  }
  if (maxval != 255 || w <= 0 || h <= 0) throw ParseError(path, "unsupported PPM header");
  in.get();
  Frame f(w, h);
  in.read(reinterpret_cast<char*>(f.pixels.data()), static_cast<std::streamsize>(f.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(f.pixels.size())) throw ParseError(path, "truncated pixel data");
  return f;
}

void write_frames(const std::vector<Frame>& frames, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.ppm", k);
    write_ppm(frames[k], (std::filesystem::path(dir) / name).string());
  }
}

namespace {

constexpr std::string_view kBlenderTemplate = R"PY(# Generated by synthvid. Emitted for Blender; not executed by synthvid.
import math

import bpy
from mathutils import Matrix

OBJECT_REF = {{OBJECT_REF}}
NUM_FRAMES = {{NUM_FRAMES}}
FPS = {{FPS}}
RESOLUTION = ({{WIDTH}}, {{HEIGHT}})
RESOLUTION_PERCENTAGE = {{RESOLUTION_PERCENTAGE}}
SCENE_TYPE = "{{SCENE_TYPE}}"
SCENE_COLOR = {{SCENE_COLOR}}
BACKGROUND_COLOR = {{BACKGROUND_COLOR}}
ROOM_BOUNDS = ({{ROOM_LO}}, {{ROOM_HI}})
AMBIENT = {{AMBIENT}}
SENSOR_HEIGHT_MM = {{SENSOR_HEIGHT}}

# (position, linear rgb, intensity)
LIGHTS = [
{{LIGHTS}}]

# (frame, camera-to-world matrix rows, focal length in mm)
CAMERA_KEYS = [
{{CAMERA_KEYS}}]

# (frame, location offset, rotation about z in degrees)
OBJECT_KEYS = [
{{OBJECT_KEYS}}]

PRIMITIVES = {
    "cube": lambda: bpy.ops.mesh.primitive_cube_add(),
    "sphere": lambda: bpy.ops.mesh.primitive_uv_sphere_add(segments=32, ring_count=16),
    "torus": lambda: bpy.ops.mesh.primitive_torus_add(major_radius=1.0, minor_radius=0.35),
    "cylinder": lambda: bpy.ops.mesh.primitive_cylinder_add(vertices=32, depth=2.0),
}


def reset_scene():
    bpy.ops.wm.read_factory_settings(use_empty=True)
    scene = bpy.context.scene
    scene.frame_start = 0
    scene.frame_end = NUM_FRAMES - 1
    scene.render.fps = FPS
    scene.render.resolution_x, scene.render.resolution_y = RESOLUTION
    scene.render.resolution_percentage = RESOLUTION_PERCENTAGE
    return scene


def add_object():
    if OBJECT_REF in PRIMITIVES:
        PRIMITIVES[OBJECT_REF]()
    else:
        bpy.ops.wm.obj_import(filepath=OBJECT_REF)
    obj = bpy.context.selected_objects[0]
    coords = [v.co for v in obj.data.vertices]
    lo = [min(c[i] for c in coords) for i in range(3)]
    hi = [max(c[i] for c in coords) for i in range(3)]
    mid = [(a + b) / 2 for a, b in zip(lo, hi)]
    radius = max(math.dist(c, mid) for c in coords)
    for v in obj.data.vertices:
        v.co = [(v.co[i] - mid[i]) / radius for i in range(3)]
    for frame, offset, angle in OBJECT_KEYS:
        obj.location = offset
        obj.rotation_euler = (0.0, 0.0, math.radians(angle))
        obj.keyframe_insert(data_path="location", frame=frame)
        obj.keyframe_insert(data_path="rotation_euler", frame=frame)


def add_environment(scene):
    world = bpy.data.worlds.new("synthvid")
    scene.world = world
    world.use_nodes = True
    background = world.node_tree.nodes["Background"]
    background.inputs[1].default_value = AMBIENT
    if SCENE_TYPE == "Empty":
        background.inputs[0].default_value = BACKGROUND_COLOR
        return
    lo, hi = ROOM_BOUNDS
    bpy.ops.mesh.primitive_cube_add()
    room = bpy.context.active_object
    room.scale = [(b - a) / 2 for a, b in zip(lo, hi)]
    room.location = [(a + b) / 2 for a, b in zip(lo, hi)]
    bpy.ops.object.mode_set(mode="EDIT")
    bpy.ops.mesh.flip_normals()
    bpy.ops.object.mode_set(mode="OBJECT")
    material = bpy.data.materials.new("room")
    material.diffuse_color = SCENE_COLOR + (1.0,)
    room.data.materials.append(material)


def add_lights():
    for i, (position, rgb, intensity) in enumerate(LIGHTS):
        data = bpy.data.lights.new(f"light{i}", type="POINT")
        data.color = rgb
        data.energy = intensity * 1000.0
        light = bpy.data.objects.new(f"light{i}", data)
        light.location = position
        bpy.context.collection.objects.link(light)


def add_camera(scene):
    data = bpy.data.cameras.new("camera")
    data.sensor_fit = "VERTICAL"
    data.sensor_height = SENSOR_HEIGHT_MM
    camera = bpy.data.objects.new("camera", data)
    bpy.context.collection.objects.link(camera)
    scene.camera = camera
    for frame, rows, lens in CAMERA_KEYS:
        camera.matrix_world = Matrix(rows)
        data.lens = lens
        camera.keyframe_insert(data_path="location", frame=frame)
        camera.keyframe_insert(data_path="rotation_euler", frame=frame)
        data.keyframe_insert(data_path="lens", frame=frame)


def main():
    scene = reset_scene()
    add_object()
    add_environment(scene)
    add_lights()
    add_camera(scene)


main()
)PY";

std::string substitute(std::string_view tpl, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = tpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    const auto close = tpl.find("}}", open);
    out.append(tpl.substr(pos, open - pos));
    const std::string key(tpl.substr(open + 2, close - open - 2));
    const auto it = values.find(key);
    if (it == values.end()) throw Error("engine template: no value for " + key);
    out += it->second;
    pos = close + 2;
  }
  out.append(tpl.substr(pos));
  return out;
}

}  // namespace

std::string emit_engine_script(const SceneConfig& cfg) {
  if (cfg.render.engine_target != EngineTarget::BlenderScript) {
    throw PreconditionError("emit_engine_script: engine_target must be BlenderScript");
  }
  // The script normalizes the asset to the unit sphere at the origin.
  const CameraTrajectory traj = generate_trajectory(cfg, Vec3::Zero(), 1.0);

  std::map<std::string, std::string> v;
  v["OBJECT_REF"] = nlohmann::json(cfg.object_ref).dump();
  v["NUM_FRAMES"] = std::to_string(cfg.n_frames);
  v["FPS"] = std::to_string(cfg.fps);
  v["WIDTH"] = std::to_string(cfg.render.width);
  v["HEIGHT"] = std::to_string(cfg.render.height);
  v["RESOLUTION_PERCENTAGE"] = cfg.render.quality == RenderQuality::Low ? "50" : "100";
  v["SCENE_TYPE"] = std::string(to_string(cfg.environment.scene_type));
  v["SCENE_COLOR"] = cfg.environment.scene_color ? triplet(*cfg.environment.scene_color) : "None";
  v["BACKGROUND_COLOR"] = cfg.environment.background_color ? triplet(*cfg.environment.background_color) : "None";
  v["ROOM_LO"] = triplet(Vec3(-kRoomHalfWidth, -kRoomHalfWidth, kRoomFloor));
  v["ROOM_HI"] = triplet(Vec3(kRoomHalfWidth, kRoomHalfWidth, kRoomCeiling));
  v["AMBIENT"] = num(cfg.lighting.ambient_intensity);
  v["SENSOR_HEIGHT"] = num(kSensorHeightMm);

  std::string lights;
  for (const auto& l : cfg.lighting.lights) {
    lights += "    (" + triplet(l.position) + ", " + triplet(kelvin_to_rgb(l.color_temp_k)) + ", " +
              num(l.intensity) + "),\n";
  }
  v["LIGHTS"] = lights;

  std::string cams, objs;
  for (int k = 0; k < cfg.n_frames; ++k) {
    const auto& c = traj.frames[k];
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 1>(0, 0) = c.right();
    m.block<3, 1>(0, 1) = c.up();
    m.block<3, 1>(0, 2) = -c.forward();
    m.block<3, 1>(0, 3) = c.position;
    std::string rows = "(";
    for (int r = 0; r < 4; ++r) rows += (r ? ", " : "") + triplet(m.row(r).transpose());
    rows += ")";
    cams += "    (" + std::to_string(k) + ", " + rows + ", " + num(c.focal_mm) + "),\n";

    const double time = static_cast<double>(k) / cfg.fps;
    const auto& anim = cfg.object_animation;
    const Vec3 offset = anim.kind == AnimationKind::Translate ? Vec3(time * anim.velocity) : Vec3::Zero();
    const double angle = anim.kind == AnimationKind::Spin ? anim.spin_deg_per_s * time : 0.0;
    objs += "    (" + std::to_string(k) + ", " + triplet(offset) + ", " + num(angle) + "),\n";
  }
  v["CAMERA_KEYS"] = cams;
  v["OBJECT_KEYS"] = objs;
  return substitute(kBlenderTemplate, v);
}

}  // namespace synthvid
