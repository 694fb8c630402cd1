/*
 * Copyright 2026 The textclf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "json.hpp"
#include "textclf/classifiers.hpp"

namespace textclf {

// Hyperparameters only, e.g. {"alpha": 1.0} for NB.
nlohmann::json spec_to_json(const ModelSpec& spec);
// Reads {"kind": "...", <hyperparameters>}; omitted fields keep their defaults,
// unknown fields are rejected.
ModelSpec spec_from_json(const nlohmann::json& j);

// {"kind", "hyperparameters", "categories", "dimension", "payload"}.
nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

}  // namespace textclf
