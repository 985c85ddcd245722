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

#ifndef AURAL_SCENE_MATERIAL_H_
#define AURAL_SCENE_MATERIAL_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aural/base/constants.h"

namespace aural {

// Per-octave-band acoustic surface description. Absorption removes energy
// on reflection; scattering is the probability that a reflection is
// diffuse rather than specular.
struct AcousticMaterial {
  std::string name;
  std::array<double, kNumBands> absorption{};
  std::array<double, kNumBands> scattering{};

  bool operator==(const AcousticMaterial&) const = default;
};

// Ordered material collection plus the semantic-label mapping used to
// assign materials to mesh categories ("wall", "floor", ...). A designated
// default material always exists; unknown labels resolve to it with a
// warning rather than failing.
class MaterialTable {
 public:
  // Adds or replaces a material. Coefficients must lie in [0, 1].
  void AddMaterial(const AcousticMaterial& material);

  std::optional<int> FindMaterial(const std::string& name) const;

  // Maps a semantic label to a material name; the target must exist.
  void SetSemanticMapping(const std::string& label,
                          const std::string& material_name);

  void SetDefaultMaterial(const std::string& name);

  // Resolves one label via the semantic map. Unmapped labels get the
  // default material and append a warning to |warnings| if provided.
  int ResolveLabel(const std::string& label,
                   std::vector<std::string>* warnings = nullptr) const;

  std::vector<int> ResolveLabels(
      std::span<const std::string> labels,
      std::vector<std::string>* warnings = nullptr) const;

  const AcousticMaterial& material(int index) const {
    return materials_[static_cast<size_t>(index)];
  }
  int size() const { return static_cast<int>(materials_.size()); }
  int default_index() const { return default_index_; }
  const std::vector<AcousticMaterial>& materials() const { return materials_; }
  const std::map<std::string, std::string>& semantic_map() const {
    return semantic_map_;
  }

  bool operator==(const MaterialTable& other) const {
    return materials_ == other.materials_ &&
           semantic_map_ == other.semantic_map_ &&
           default_index_ == other.default_index_;
  }

 private:
  std::vector<AcousticMaterial> materials_;
  std::map<std::string, std::string> semantic_map_;
  int default_index_ = -1;
};

// The built-in table shipped with the engine. Coefficient values are
// engine constants (documented in the README), chosen from typical
// published ranges for the named surface types.
MaterialTable BuiltinMaterialTable();

}  // namespace aural

#endif  // AURAL_SCENE_MATERIAL_H_
