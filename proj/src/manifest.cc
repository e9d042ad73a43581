// src/manifest.cc

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

#include "pseudovoice/manifest.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "pseudovoice/errors.h"

namespace pseudovoice {

namespace {

std::string location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + " line " + std::to_string(line);
}

// Plain CSV split; fields may not contain commas, which the formats here
// never need.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(strip_cr(line));
  if (in.bad()) throw IoError("read failure on " + path.string());
  return lines;
}

double parse_double(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(where + ": not a number: '" + text + "'");
  return value;
}

int parse_int(const std::string& text, const std::string& where) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(where + ": not an integer: '" + text + "'");
  return value;
}

}  // namespace

std::vector<ManifestRow> load_manifest(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || lines[0] != "utterance_id,path,speaker_id,split")
    throw ParseError(location(path, 1) +
                     ": expected header utterance_id,path,speaker_id,split");

  std::vector<ManifestRow> rows;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> fields = split_csv(lines[i]);
    if (fields.size() != 4)
      throw ParseError(location(path, i + 1) + ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    ManifestRow row{fields[0], fields[1], fields[2], fields[3]};
    if (row.utterance_id.empty())
      throw ParseError(location(path, i + 1) + ": empty utterance_id");
    if (row.path.empty())
      throw ParseError(location(path, i + 1) + ": empty path");
    if (row.speaker_id.empty())
      throw ParseError(location(path, i + 1) + ": empty speaker_id");
    if (row.split.empty())
      throw ParseError(location(path, i + 1) + ": empty split");
    if (!seen_ids.insert(row.utterance_id).second)
      throw ParseError(location(path, i + 1) + ": duplicate utterance_id '" +
                       row.utterance_id + "'");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TrialRow> load_trials(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || lines[0] != "enrol_id,test_id,label")
    throw ParseError(location(path, 1) +
                     ": expected header enrol_id,test_id,label");

  std::vector<TrialRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> fields = split_csv(lines[i]);
    if (fields.size() != 3)
      throw ParseError(location(path, i + 1) + ": expected 3 fields, got " +
                       std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      throw ParseError(location(path, i + 1) + ": empty utterance id");
    bool is_target = false;
    if (fields[2] == "target")
      is_target = true;
    else if (fields[2] == "non-target")
      is_target = false;
    else
      throw ParseError(location(path, i + 1) +
                       ": label must be target or non-target, got '" +
                       fields[2] + "'");
    rows.push_back({fields[0], fields[1], is_target});
  }
  return rows;
}

AnonymisationConfig load_config(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);

  AnonymisationConfig config;
  std::set<std::string> seen;
  bool have_alpha = false;
  bool have_min = false;
  bool have_max = false;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
      line.pop_back();
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(location(path, i + 1) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    const std::string where = location(path, i + 1);
    if (!seen.insert(key).second)
      throw ParseError(where + ": duplicate key '" + key + "'");

    if (key == "alpha") {
      config.alpha = parse_double(value, where);
      have_alpha = true;
    } else if (key == "alpha_min") {
      config.alpha_min = parse_double(value, where);
      have_min = true;
    } else if (key == "alpha_max") {
      config.alpha_max = parse_double(value, where);
      have_max = true;
    } else if (key == "lpc_order") {
      config.lpc_order = parse_int(value, where);
    } else if (key == "frame_ms") {
      config.frame_ms = parse_double(value, where);
    } else if (key == "hop_ms") {
      config.hop_ms = parse_double(value, where);
    } else if (key == "seed") {
      config.secret_seed = value;
    } else if (key == "split") {
      config.split = value;
    } else {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }

  if (have_alpha && (have_min || have_max))
    throw ParseError(path.string() +
                     ": alpha and alpha_min/alpha_max are mutually exclusive");
  if (have_min != have_max)
    throw ParseError(path.string() +
                     ": alpha_min and alpha_max must be given together");
  config.mode = have_min ? AlphaMode::kUniform : AlphaMode::kFixed;
  config.validate();
  return config;
}

}  // namespace pseudovoice
