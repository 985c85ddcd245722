/*
Copyright 2026 The Auralize Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "aural/scene/scene.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aural/base/logging.h"

namespace aural {
namespace {

constexpr double kDegenerateAreaThreshold = 1e-10;  // m^2

[[noreturn]] void Fail(const std::string& source, int line,
                       const std::string& message) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " +
                           message);
}

std::vector<std::string> Tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) {
    if (token[0] == '#') break;
    tokens.push_back(token);
  }
  return tokens;
}

double ParseDouble(const std::string& source, int line,
                   const std::string& token, const char* what) {
  try {
    size_t consumed = 0;
    const double value = std::stod(token, &consumed);
    if (consumed != token.size() || !std::isfinite(value)) {
      Fail(source, line, std::string("invalid ") + what + " '" + token + "'");
    }
    return value;
  } catch (const std::logic_error&) {
    Fail(source, line, std::string("invalid ") + what + " '" + token + "'");
  }
}

int ParseInt(const std::string& source, int line, const std::string& token,
             const char* what) {
  int value = 0;
  const auto result =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
    Fail(source, line, std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

bool ParseFlag(const std::string& source, int line, const std::string& token,
               const char* what) {
  if (token == "0") return false;
  if (token == "1") return true;
  Fail(source, line, std::string(what) + " must be 0 or 1, got '" + token +
                         "'");
}

enum class BindingKind { kNone, kMaterial, kLabel };

struct RawTriangle {
  int v0 = 0, v1 = 0, v2 = 0;
  BindingKind binding = BindingKind::kNone;
  std::string binding_name;
  int line = 0;
};

struct RawMesh {
  std::vector<Vec3> vertices;
  std::vector<RawTriangle> triangles;
};

struct RawObject {
  int id = 0;
  std::string mesh_name;
  Vec3 translation;
  double yaw = 0.0;
  bool dynamic = false;
  bool occluder = true;
  BindingKind binding = BindingKind::kNone;
  std::string binding_name;
  int line = 0;
};

// Reads positions and faces from a minimal OBJ file (v/f records only;
// polygons are fan-triangulated; texture/normal indices are ignored).
RawMesh LoadObjMesh(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open OBJ file '" + path + "'");
  }
  RawMesh mesh;
  std::string line;
  int line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    const auto tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) Fail(path, line_number, "vertex needs x y z");
      Vec3 v{ParseDouble(path, line_number, tokens[1], "coordinate"),
             ParseDouble(path, line_number, tokens[2], "coordinate"),
             ParseDouble(path, line_number, tokens[3], "coordinate")};
      if (!IsFinite(v)) Fail(path, line_number, "non-finite vertex");
      mesh.vertices.push_back(v);
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        Fail(path, line_number, "face needs at least 3 indices");
      }
      std::vector<int> indices;
      for (size_t i = 1; i < tokens.size(); ++i) {
        const std::string head = tokens[i].substr(0, tokens[i].find('/'));
        const int raw = ParseInt(path, line_number, head, "face index");
        if (raw <= 0 || raw > static_cast<int>(mesh.vertices.size())) {
          Fail(path, line_number,
               "face index " + std::to_string(raw) + " out of range");
        }
        indices.push_back(raw - 1);
      }
      for (size_t i = 1; i + 1 < indices.size(); ++i) {
        mesh.triangles.push_back({indices[0], indices[i], indices[i + 1],
                                  BindingKind::kNone, "", line_number});
      }
    }
    // All other OBJ records are ignored.
  }
  return mesh;
}

// Parses a trailing [mat <name> | label <label>] binding.
void ParseBinding(const std::string& source, int line,
                  const std::vector<std::string>& tokens, size_t start,
                  BindingKind* kind, std::string* name) {
  *kind = BindingKind::kNone;
  name->clear();
  if (start >= tokens.size()) return;
  if (tokens.size() != start + 2) {
    Fail(source, line, "expected 'mat <name>' or 'label <label>'");
  }
  if (tokens[start] == "mat") {
    *kind = BindingKind::kMaterial;
  } else if (tokens[start] == "label") {
    *kind = BindingKind::kLabel;
  } else {
    Fail(source, line, "unknown binding '" + tokens[start] +
                           "' (expected 'mat' or 'label')");
  }
  *name = tokens[start + 1];
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  AURAL_CHECK(result.ec == std::errc());
  return std::string(buffer, result.ptr);
}

bool MeshIsClosed(const TriangleMesh& mesh) {
  // Closed orientable surface: every undirected edge is shared by exactly
  // two triangles with opposite directions.
  std::map<std::pair<int, int>, std::pair<int, int>> edges;
  const auto add_edge = [&edges](int a, int b) {
    const bool forward = a < b;
    const auto key = forward ? std::make_pair(a, b) : std::make_pair(b, a);
    auto& entry = edges[key];
    (forward ? entry.first : entry.second) += 1;
  };
  for (const auto& tri : mesh.triangles) {
    add_edge(tri.v0, tri.v1);
    add_edge(tri.v1, tri.v2);
    add_edge(tri.v2, tri.v0);
  }
  if (edges.empty()) return false;
  for (const auto& [key, counts] : edges) {
    if (counts.first != 1 || counts.second != 1) return false;
  }
  return true;
}

}  // namespace

const SceneObject* Scene::FindObject(int id) const {
  for (const auto& object : objects) {
    if (object.id == id) return &object;
  }
  return nullptr;
}

const SourceSpec* Scene::FindSource(int id) const {
  for (const auto& source : sources) {
    if (source.id == id) return &source;
  }
  return nullptr;
}

Aabb ComputeSceneBounds(const Scene& scene) {
  Aabb bounds;
  for (const auto& object : scene.objects) {
    const auto& mesh = scene.meshes[static_cast<size_t>(object.mesh_index)];
    for (const auto& v : mesh.vertices) {
      bounds.Expand(TransformPoint(object, v));
    }
  }
  return bounds;
}

double TriangleArea(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * Norm(Cross(b - a, c - a));
}

Scene ParseScene(const std::string& text, const std::string& source_name,
                 const std::string& base_dir,
                 std::vector<std::string>* warnings) {
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;

  Scene scene;
  scene.material_table = BuiltinMaterialTable();

  std::map<std::string, RawMesh> raw_meshes;
  std::vector<RawObject> raw_objects;
  bool seen_version = false;
  bool seen_listener = false;

  RawMesh* open_mesh = nullptr;
  int open_mesh_line = 0;
  std::string open_mesh_name;

  while (std::getline(stream, line)) {
    ++line_number;
    const auto tokens = Tokenize(line);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];

    if (!seen_version) {
      if (keyword != "scene" || tokens.size() != 2) {
        Fail(source_name, line_number, "expected header 'scene 1'");
      }
      const int version = ParseInt(source_name, line_number, tokens[1],
                                   "scene version");
      if (version != 1) {
        Fail(source_name, line_number,
             "unsupported scene version " + std::to_string(version));
      }
      seen_version = true;
      continue;
    }

    if (open_mesh != nullptr) {
      if (keyword == "v") {
        if (tokens.size() != 4) {
          Fail(source_name, line_number, "vertex needs x y z");
        }
        Vec3 v{ParseDouble(source_name, line_number, tokens[1], "coordinate"),
               ParseDouble(source_name, line_number, tokens[2], "coordinate"),
               ParseDouble(source_name, line_number, tokens[3], "coordinate")};
        open_mesh->vertices.push_back(v);
      } else if (keyword == "t") {
        if (tokens.size() < 4) {
          Fail(source_name, line_number, "triangle needs three indices");
        }
        RawTriangle tri;
        tri.v0 = ParseInt(source_name, line_number, tokens[1], "vertex index");
        tri.v1 = ParseInt(source_name, line_number, tokens[2], "vertex index");
        tri.v2 = ParseInt(source_name, line_number, tokens[3], "vertex index");
        tri.line = line_number;
        const int n = static_cast<int>(open_mesh->vertices.size());
        for (const int idx : {tri.v0, tri.v1, tri.v2}) {
          if (idx < 0 || idx >= n) {
            Fail(source_name, line_number,
                 "vertex index " + std::to_string(idx) + " out of range");
          }
        }
        ParseBinding(source_name, line_number, tokens, 4, &tri.binding,
                     &tri.binding_name);
        open_mesh->triangles.push_back(tri);
      } else if (keyword == "endmesh") {
        open_mesh = nullptr;
      } else {
        Fail(source_name, line_number,
             "unexpected '" + keyword + "' inside mesh '" + open_mesh_name +
                 "' opened at line " + std::to_string(open_mesh_line));
      }
      continue;
    }

    if (keyword == "material") {
      if (tokens.size() != 14) {
        Fail(source_name, line_number,
             "material needs a name, 6 absorption and 6 scattering values");
      }
      AcousticMaterial material;
      material.name = tokens[1];
      for (size_t b = 0; b < kNumBands; ++b) {
        material.absorption[b] = ParseDouble(
            source_name, line_number, tokens[2 + b], "absorption");
        material.scattering[b] = ParseDouble(
            source_name, line_number, tokens[8 + b], "scattering");
      }
      try {
        scene.material_table.AddMaterial(material);
      } catch (const std::runtime_error& error) {
        Fail(source_name, line_number, error.what());
      }
    } else if (keyword == "default_material") {
      if (tokens.size() != 2) {
        Fail(source_name, line_number, "default_material needs a name");
      }
      try {
        scene.material_table.SetDefaultMaterial(tokens[1]);
      } catch (const std::runtime_error& error) {
        Fail(source_name, line_number, error.what());
      }
    } else if (keyword == "map") {
      if (tokens.size() != 3) {
        Fail(source_name, line_number, "map needs <label> <material>");
      }
      try {
        scene.material_table.SetSemanticMapping(tokens[1], tokens[2]);
      } catch (const std::runtime_error& error) {
        Fail(source_name, line_number, error.what());
      }
    } else if (keyword == "mesh") {
      if (tokens.size() < 3) {
        Fail(source_name, line_number,
             "mesh needs <name> inline|obj [path]");
      }
      const std::string& name = tokens[1];
      if (raw_meshes.count(name) != 0) {
        Fail(source_name, line_number, "duplicate mesh name '" + name + "'");
      }
      if (tokens[2] == "inline") {
        open_mesh = &raw_meshes[name];
        open_mesh_line = line_number;
        open_mesh_name = name;
      } else if (tokens[2] == "obj") {
        if (tokens.size() != 4) {
          Fail(source_name, line_number, "mesh obj needs a path");
        }
        const std::filesystem::path obj_path =
            std::filesystem::path(tokens[3]).is_absolute()
                ? std::filesystem::path(tokens[3])
                : std::filesystem::path(base_dir) / tokens[3];
        try {
          raw_meshes[name] = LoadObjMesh(obj_path.string());
        } catch (const std::runtime_error& error) {
          Fail(source_name, line_number, error.what());
        }
      } else {
        Fail(source_name, line_number,
             "unknown mesh kind '" + tokens[2] + "'");
      }
    } else if (keyword == "object") {
      if (tokens.size() < 9) {
        Fail(source_name, line_number,
             "object needs <id> <mesh> <x> <y> <z> <yaw> <dynamic> "
             "<occluder> [mat <m> | label <l>]");
      }
      RawObject object;
      object.id = ParseInt(source_name, line_number, tokens[1], "object id");
      object.mesh_name = tokens[2];
      object.translation = {
          ParseDouble(source_name, line_number, tokens[3], "coordinate"),
          ParseDouble(source_name, line_number, tokens[4], "coordinate"),
          ParseDouble(source_name, line_number, tokens[5], "coordinate")};
      object.yaw = ParseDouble(source_name, line_number, tokens[6], "yaw");
      object.dynamic =
          ParseFlag(source_name, line_number, tokens[7], "dynamic flag");
      object.occluder =
          ParseFlag(source_name, line_number, tokens[8], "occluder flag");
      ParseBinding(source_name, line_number, tokens, 9, &object.binding,
                   &object.binding_name);
      object.line = line_number;
      raw_objects.push_back(object);
    } else if (keyword == "source") {
      if (tokens.size() != 7 && tokens.size() != 9) {
        Fail(source_name, line_number,
             "source needs <id> <x> <y> <z> <gain> <nearfield> "
             "[signal <path>]");
      }
      SourceSpec source;
      source.id = ParseInt(source_name, line_number, tokens[1], "source id");
      source.position = {
          ParseDouble(source_name, line_number, tokens[2], "coordinate"),
          ParseDouble(source_name, line_number, tokens[3], "coordinate"),
          ParseDouble(source_name, line_number, tokens[4], "coordinate")};
      source.gain = ParseDouble(source_name, line_number, tokens[5], "gain");
      if (source.gain < 0.0) {
        Fail(source_name, line_number, "source gain must be >= 0");
      }
      source.near_field_enabled =
          ParseFlag(source_name, line_number, tokens[6], "nearfield flag");
      if (tokens.size() == 9) {
        if (tokens[7] != "signal") {
          Fail(source_name, line_number,
               "expected 'signal <path>', got '" + tokens[7] + "'");
        }
        source.signal_path = tokens[8];
      }
      for (const auto& existing : scene.sources) {
        if (existing.id == source.id) {
          Fail(source_name, line_number,
               "duplicate source id " + std::to_string(source.id));
        }
      }
      scene.sources.push_back(source);
    } else if (keyword == "listener") {
      if (tokens.size() != 5 && tokens.size() != 7) {
        Fail(source_name, line_number,
             "listener needs <x> <y> <z> <yaw> [head <radius>]");
      }
      if (seen_listener) {
        Fail(source_name, line_number, "duplicate listener declaration");
      }
      seen_listener = true;
      scene.listener.position = {
          ParseDouble(source_name, line_number, tokens[1], "coordinate"),
          ParseDouble(source_name, line_number, tokens[2], "coordinate"),
          ParseDouble(source_name, line_number, tokens[3], "coordinate")};
      scene.listener.yaw =
          ParseDouble(source_name, line_number, tokens[4], "yaw");
      if (tokens.size() == 7) {
        if (tokens[5] != "head") {
          Fail(source_name, line_number,
               "expected 'head <radius>', got '" + tokens[5] + "'");
        }
        scene.listener.head_radius =
            ParseDouble(source_name, line_number, tokens[6], "head radius");
      }
      if (!(scene.listener.head_radius > 0.05 &&
            scene.listener.head_radius < 0.15)) {
        Fail(source_name, line_number,
             "head radius must lie in (0.05, 0.15) m");
      }
    } else {
      Fail(source_name, line_number, "unknown directive '" + keyword + "'");
    }
  }

  if (!seen_version) {
    Fail(source_name, line_number == 0 ? 1 : line_number,
         "empty scene file (expected header 'scene 1')");
  }
  if (open_mesh != nullptr) {
    Fail(source_name, line_number,
         "mesh '" + open_mesh_name + "' opened at line " +
             std::to_string(open_mesh_line) + " is missing 'endmesh'");
  }

  // Resolve every triangle's material. A mesh referenced by objects with
  // different bindings is materialized once per distinct binding.
  std::map<std::tuple<std::string, int, std::string>, int> resolved_meshes;
  std::set<int> object_ids;
  bool any_static = false;
  for (const auto& raw : raw_objects) {
    if (!object_ids.insert(raw.id).second) {
      Fail(source_name, raw.line,
           "duplicate object id " + std::to_string(raw.id));
    }
    const auto mesh_it = raw_meshes.find(raw.mesh_name);
    if (mesh_it == raw_meshes.end()) {
      Fail(source_name, raw.line,
           "unknown mesh '" + raw.mesh_name + "'");
    }
    const auto key = std::make_tuple(
        raw.mesh_name, static_cast<int>(raw.binding), raw.binding_name);
    auto resolved_it = resolved_meshes.find(key);
    if (resolved_it == resolved_meshes.end()) {
      TriangleMesh mesh;
      mesh.vertices = mesh_it->second.vertices;
      mesh.triangles.reserve(mesh_it->second.triangles.size());
      for (const auto& tri : mesh_it->second.triangles) {
        BindingKind kind = tri.binding;
        const std::string* name = &tri.binding_name;
        if (kind == BindingKind::kNone) {
          kind = raw.binding;
          name = &raw.binding_name;
        }
        int material = scene.material_table.default_index();
        if (kind == BindingKind::kMaterial) {
          const auto index = scene.material_table.FindMaterial(*name);
          if (!index) {
            Fail(source_name, tri.line > 0 ? tri.line : raw.line,
                 "unknown material '" + *name + "'");
          }
          material = *index;
        } else if (kind == BindingKind::kLabel) {
          material = scene.material_table.ResolveLabel(*name, warnings);
        }
        mesh.triangles.push_back({tri.v0, tri.v1, tri.v2, material});
      }
      resolved_it =
          resolved_meshes
              .emplace(key, static_cast<int>(scene.meshes.size()))
              .first;
      scene.meshes.push_back(std::move(mesh));
    }

    SceneObject object;
    object.id = raw.id;
    object.mesh_index = resolved_it->second;
    object.translation = raw.translation;
    object.yaw = raw.yaw;
    object.dynamic = raw.dynamic;
    object.occluder = raw.occluder;
    scene.objects.push_back(object);
    if (!raw.dynamic) any_static = true;
  }

  if (scene.objects.empty() || !any_static) {
    throw std::runtime_error(source_name +
                             ": scene needs at least one static object");
  }

  if (warnings != nullptr) {
    for (const auto& object : scene.objects) {
      const auto& mesh = scene.meshes[static_cast<size_t>(object.mesh_index)];
      for (size_t k = 0; k < mesh.triangles.size(); ++k) {
        const auto& tri = mesh.triangles[k];
        const double area =
            TriangleArea(mesh.vertices[static_cast<size_t>(tri.v0)],
                         mesh.vertices[static_cast<size_t>(tri.v1)],
                         mesh.vertices[static_cast<size_t>(tri.v2)]);
        if (area <= kDegenerateAreaThreshold) {
          warnings->push_back("degenerate triangle: object " +
                              std::to_string(object.id) + " triangle " +
                              std::to_string(k) + " (area " +
                              FormatDouble(area) + " m^2)");
        }
      }
    }
  }

  scene.bounds = ComputeSceneBounds(scene);
  return scene;
}

Scene LoadScene(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open scene file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  return ParseScene(buffer.str(), path, base_dir, warnings);
}

std::string SerializeScene(const Scene& scene) {
  std::ostringstream out;
  out << "scene 1\n";
  for (const auto& material : scene.material_table.materials()) {
    out << "material " << material.name;
    for (const double a : material.absorption) out << ' ' << FormatDouble(a);
    for (const double s : material.scattering) out << ' ' << FormatDouble(s);
    out << '\n';
  }
  out << "default_material "
      << scene.material_table.material(scene.material_table.default_index())
             .name
      << '\n';
  for (const auto& [label, material] : scene.material_table.semantic_map()) {
    out << "map " << label << ' ' << material << '\n';
  }
  for (size_t m = 0; m < scene.meshes.size(); ++m) {
    const auto& mesh = scene.meshes[m];
    out << "mesh m" << m << " inline\n";
    for (const auto& v : mesh.vertices) {
      out << "v " << FormatDouble(v.x) << ' ' << FormatDouble(v.y) << ' '
          << FormatDouble(v.z) << '\n';
    }
    for (const auto& tri : mesh.triangles) {
      out << "t " << tri.v0 << ' ' << tri.v1 << ' ' << tri.v2 << " mat "
          << scene.material_table.material(tri.material).name << '\n';
    }
    out << "endmesh\n";
  }
  for (const auto& object : scene.objects) {
    out << "object " << object.id << " m" << object.mesh_index << ' '
        << FormatDouble(object.translation.x) << ' '
        << FormatDouble(object.translation.y) << ' '
        << FormatDouble(object.translation.z) << ' '
        << FormatDouble(object.yaw) << ' ' << (object.dynamic ? 1 : 0) << ' '
        << (object.occluder ? 1 : 0) << '\n';
  }
  for (const auto& source : scene.sources) {
    out << "source " << source.id << ' ' << FormatDouble(source.position.x)
        << ' ' << FormatDouble(source.position.y) << ' '
        << FormatDouble(source.position.z) << ' '
        << FormatDouble(source.gain) << ' '
        << (source.near_field_enabled ? 1 : 0);
    if (!source.signal_path.empty()) out << " signal " << source.signal_path;
    out << '\n';
  }
  out << "listener " << FormatDouble(scene.listener.position.x) << ' '
      << FormatDouble(scene.listener.position.y) << ' '
      << FormatDouble(scene.listener.position.z) << ' '
      << FormatDouble(scene.listener.yaw) << " head "
      << FormatDouble(scene.listener.head_radius) << '\n';
  return out.str();
}

uint64_t Fnv1a64(const void* data, size_t size, uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t hash = seed;
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

uint64_t SceneContentHash(const Scene& scene) {
  const std::string serialized = SerializeScene(scene);
  return Fnv1a64(serialized.data(), serialized.size());
}

SurfaceStats ComputeSurfaceStatistics(const Scene& scene) {
  SurfaceStats stats;
  std::array<double, kNumBands> weighted{};
  for (const auto& object : scene.objects) {
    const auto& mesh = scene.meshes[static_cast<size_t>(object.mesh_index)];
    for (const auto& tri : mesh.triangles) {
      const Vec3 a = TransformPoint(
          object, mesh.vertices[static_cast<size_t>(tri.v0)]);
      const Vec3 b = TransformPoint(
          object, mesh.vertices[static_cast<size_t>(tri.v1)]);
      const Vec3 c = TransformPoint(
          object, mesh.vertices[static_cast<size_t>(tri.v2)]);
      const double area = TriangleArea(a, b, c);
      stats.total_area += area;
      const auto& material = scene.material_table.material(tri.material);
      for (size_t band = 0; band < kNumBands; ++band) {
        weighted[band] += area * material.absorption[band];
      }
    }
  }
  if (stats.total_area > 0.0) {
    for (size_t band = 0; band < kNumBands; ++band) {
      stats.band_avg_absorption[band] = weighted[band] / stats.total_area;
    }
  }

  stats.volume_valid = false;
  double volume = 0.0;
  bool any_static = false;
  bool all_closed = true;
  for (const auto& object : scene.objects) {
    if (object.dynamic) continue;
    any_static = true;
    const auto& mesh = scene.meshes[static_cast<size_t>(object.mesh_index)];
    if (!MeshIsClosed(mesh)) {
      all_closed = false;
      break;
    }
    double signed_volume = 0.0;
    for (const auto& tri : mesh.triangles) {
      const Vec3 a = TransformPoint(
          object, mesh.vertices[static_cast<size_t>(tri.v0)]);
      const Vec3 b = TransformPoint(
          object, mesh.vertices[static_cast<size_t>(tri.v1)]);
      const Vec3 c = TransformPoint(
          object, mesh.vertices[static_cast<size_t>(tri.v2)]);
      signed_volume += Dot(a, Cross(b, c)) / 6.0;
    }
    volume += std::fabs(signed_volume);
  }
  if (any_static && all_closed) {
    stats.volume = volume;
    stats.volume_valid = true;
  }
  return stats;
}

}  // namespace aural
