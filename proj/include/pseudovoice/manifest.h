// include/pseudovoice/manifest.h

// Copyright 2026  Pseudovoice Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pseudovoice/anonymizer.h"

namespace pseudovoice {

// One corpus utterance.  Relative paths are resolved against the directory
// of the manifest file they came from.
struct ManifestRow {
  std::string utterance_id;
  std::string path;
  std::string speaker_id;
  std::string split;  // "enrolment" | "test" | free label
};

// One verification trial; ids must resolve against the manifest.
struct TrialRow {
  std::string enrolment_utterance_id;
  std::string test_utterance_id;
  bool is_target = false;
};

// CSV with header utterance_id,path,speaker_id,split.  Duplicate utterance
// ids, missing fields and malformed rows raise ParseError with the line
// number.
std::vector<ManifestRow> load_manifest(const std::filesystem::path& path);

// CSV with header enrol_id,test_id,label; label is "target" or "non-target".
std::vector<TrialRow> load_trials(const std::filesystem::path& path);

// Flat key=value text: alpha | alpha_min+alpha_max, lpc_order, frame_ms,
// hop_ms, seed, split.  '#' starts a comment.  Unknown or duplicate keys
// raise ParseError; invalid ranges raise ConfigError.
AnonymisationConfig load_config(const std::filesystem::path& path);

}  // namespace pseudovoice
