// Copyright 2026 The EpiKG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "epikg/kgraph/graph.hpp"

namespace epikg::kgraph {

inline constexpr int kGraphSchemaVersion = 1;

// {schema_version, patient_id, nodes: [...], edges: [...]}, keys in a fixed
// order so identical graphs serialize to identical bytes.
std::string to_json(const GraphSnapshot& g);

// Throws SchemaError with a JSON-pointer path on any schema violation.
std::unique_ptr<PatientGraph> from_json(std::string_view json_text);

void save_graph(const GraphSnapshot& g, const std::filesystem::path& path);
std::unique_ptr<PatientGraph> load_graph(const std::filesystem::path& path);

}  // namespace epikg::kgraph
