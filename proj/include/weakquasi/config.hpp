// Copyright 2026 The weakquasi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scenario documents for the command-line runner. A document is a YAML
// mapping (JSON is accepted as a subset); the recognized fields are listed
// in README.md.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weakquasi/sweep.hpp"

namespace weakquasi {

enum class Quantity {
  PWeak,
  CQ,
  MHQ,
  WeakCQ,
  WeakMHQ,
  Coherence,
  MhqReconstructed,
  Thresholds,
};

const char *quantity_name(Quantity q);
std::optional<Quantity> quantity_from_name(const std::string &name);
const std::vector<Quantity> &all_quantities();

struct ScenarioConfig {
  Scenario scenario;
  SweepOptions sweep;
  std::vector<Quantity> outputs;
};

/// Parses and validates a scenario document. Failures throw Error with kind
/// Config and a "<source>:<line>: field '<name>': ..." diagnostic.
ScenarioConfig parse_config(const std::string &text, const std::string &source = "<config>");
ScenarioConfig load_config(const std::filesystem::path &path);

}  // namespace weakquasi
