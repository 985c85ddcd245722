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

#include "aural/scene/material.h"

#include <stdexcept>

#include "aural/base/logging.h"

namespace aural {

void MaterialTable::AddMaterial(const AcousticMaterial& material) {
  if (material.name.empty()) {
    throw std::runtime_error("material name must be non-empty");
  }
  for (size_t b = 0; b < kNumBands; ++b) {
    if (!(material.absorption[b] >= 0.0 && material.absorption[b] <= 1.0) ||
        !(material.scattering[b] >= 0.0 && material.scattering[b] <= 1.0)) {
      throw std::runtime_error("material '" + material.name +
                               "': coefficients must lie in [0, 1]");
    }
  }
  for (auto& existing : materials_) {
    if (existing.name == material.name) {
      existing = material;
      return;
    }
  }
  materials_.push_back(material);
  if (default_index_ < 0) default_index_ = 0;
}

std::optional<int> MaterialTable::FindMaterial(const std::string& name) const {
  for (size_t i = 0; i < materials_.size(); ++i) {
    if (materials_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

void MaterialTable::SetSemanticMapping(const std::string& label,
                                       const std::string& material_name) {
  if (!FindMaterial(material_name)) {
    throw std::runtime_error("semantic map target '" + material_name +
                             "' is not in the material table");
  }
  semantic_map_[label] = material_name;
}

void MaterialTable::SetDefaultMaterial(const std::string& name) {
  const auto index = FindMaterial(name);
  if (!index) {
    throw std::runtime_error("default material '" + name +
                             "' is not in the material table");
  }
  default_index_ = *index;
}

int MaterialTable::ResolveLabel(const std::string& label,
                                std::vector<std::string>* warnings) const {
  AURAL_CHECK(default_index_ >= 0);
  const auto it = semantic_map_.find(label);
  if (it != semantic_map_.end()) {
    const auto index = FindMaterial(it->second);
    AURAL_CHECK(index.has_value());
    return *index;
  }
  if (warnings != nullptr) {
    warnings->push_back("unknown semantic label '" + label +
                        "', using default material '" +
                        materials_[static_cast<size_t>(default_index_)].name +
                        "'");
  }
  return default_index_;
}

std::vector<int> MaterialTable::ResolveLabels(
    std::span<const std::string> labels,
    std::vector<std::string>* warnings) const {
  std::vector<int> indices;
  indices.reserve(labels.size());
  for (const auto& label : labels) {
    indices.push_back(ResolveLabel(label, warnings));
  }
  return indices;
}

MaterialTable BuiltinMaterialTable() {
  MaterialTable table;
  table.AddMaterial({"default",
                     {0.10, 0.05, 0.06, 0.07, 0.09, 0.08},
                     {0.10, 0.12, 0.15, 0.18, 0.20, 0.22}});
  table.AddMaterial({"concrete_block_painted",
                     {0.10, 0.05, 0.06, 0.07, 0.09, 0.08},
                     {0.10, 0.12, 0.15, 0.18, 0.20, 0.22}});
  table.AddMaterial({"glass",
                     {0.35, 0.25, 0.18, 0.12, 0.07, 0.04},
                     {0.05, 0.05, 0.05, 0.05, 0.05, 0.05}});
  table.AddMaterial({"wood_panel",
                     {0.28, 0.22, 0.17, 0.09, 0.10, 0.11},
                     {0.10, 0.10, 0.12, 0.12, 0.12, 0.12}});
  table.AddMaterial({"curtain_heavy",
                     {0.14, 0.35, 0.55, 0.72, 0.70, 0.65},
                     {0.30, 0.40, 0.50, 0.60, 0.60, 0.60}});
  table.AddMaterial({"carpet",
                     {0.02, 0.06, 0.14, 0.37, 0.60, 0.65},
                     {0.10, 0.15, 0.20, 0.25, 0.30, 0.30}});
  table.SetDefaultMaterial("default");
  table.SetSemanticMapping("wall", "concrete_block_painted");
  table.SetSemanticMapping("ceiling", "concrete_block_painted");
  table.SetSemanticMapping("window", "glass");
  table.SetSemanticMapping("floor", "wood_panel");
  table.SetSemanticMapping("curtain", "curtain_heavy");
  table.SetSemanticMapping("carpet", "carpet");
  return table;
}

}  // namespace aural
