// Copyright 2026 The nasforge Authors.
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

#include "nasforge/orchestrator/checkpoint.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/evaluator/evaluator.h"
#include "nasforge/nn/tensor_io.h"

namespace nasforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr char kControllerFile[] = "controller.bin";
constexpr char kEvaluatorFile[] = "evaluator.bin";
constexpr char kRngFile[] = "rng.json";
constexpr char kMetaFile[] = "meta.json";

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw CheckpointError("cannot write " + path.string());
}

json ReadJson(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CheckpointError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string NasforgeHome() {
  if (const char* home = std::getenv("NASFORGE_HOME"); home && *home) return home;
  if (const char* home = std::getenv("HOME"); home && *home) {
    return (fs::path(home) / ".nasforge").string();
  }
  return ".nasforge";
}

std::string DefaultCheckpointRoot() {
  return (fs::path(NasforgeHome()) / "ckpt").string();
}

std::string EpochDirectory(const std::string& root, int epoch) {
  return (fs::path(root) / ("epoch_" + std::to_string(epoch))).string();
}

void SaveCheckpoint(const Session& session, const std::string& root,
                    const CheckpointMeta& meta) {
  const fs::path final_dir = EpochDirectory(root, meta.epoch);
  const fs::path staging = fs::path(root) / (".epoch_" + std::to_string(meta.epoch) + ".tmp");
  std::error_code ec;
  fs::remove_all(staging, ec);
  fs::create_directories(staging);

  session.controller().Save((staging / kControllerFile).string());

  nn::TensorFile evaluator;
  evaluator.kind = "evaluator/" + session.evaluator().type_name();
  session.evaluator().Save(evaluator.tensors);
  nn::WriteTensorFile((staging / kEvaluatorFile).string(), evaluator);

  json rng = json::object();
  for (const auto& [kind, state] : session.streams().States()) rng[kind] = state;
  WriteText(staging / kRngFile, rng.dump(1));

  json m = {{"epoch", meta.epoch},
            {"evaluations", meta.evaluations},
            {"has_best", meta.has_best},
            {"best_genotype", meta.best_genotype},
            {"best_reward", meta.best_reward},
            {"max_inflight_observed", meta.max_inflight_observed},
            {"max_staleness", meta.max_staleness},
            {"seed", session.seed()},
            {"controller", session.controller().type_name()},
            {"evaluator", session.evaluator().type_name()}};
  WriteText(staging / kMetaFile, m.dump(1));

  fs::remove_all(final_dir, ec);
  fs::rename(staging, final_dir);
}

CheckpointMeta LoadCheckpoint(Session& session, const std::string& directory) {
  const fs::path dir(directory);
  const json m = ReadJson(dir / kMetaFile);
  const json rng = ReadJson(dir / kRngFile);
  CheckpointMeta meta;
  std::map<std::string, std::string> states;
  try {
    if (m.at("controller").get<std::string>() != session.controller().type_name()) {
      throw CheckpointError("checkpoint controller '" +
                            m.at("controller").get<std::string>() +
                            "' does not match the session");
    }
    meta.epoch = m.at("epoch").get<int>();
    meta.evaluations = m.at("evaluations").get<int64_t>();
    meta.has_best = m.at("has_best").get<bool>();
    meta.best_genotype = m.at("best_genotype").get<Genotype>();
    meta.best_reward = m.at("best_reward").get<double>();
    meta.max_inflight_observed = m.at("max_inflight_observed").get<int>();
    meta.max_staleness = m.at("max_staleness").get<int64_t>();
    states = rng.get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw CheckpointError(directory + ": " + e.what());
  }
  nn::TensorFile evaluator = nn::ReadTensorFile((dir / kEvaluatorFile).string());
  if (evaluator.kind != "evaluator/" + session.evaluator().type_name()) {
    throw CheckpointError("checkpoint evaluator '" + evaluator.kind +
                          "' does not match the session");
  }
  session.controller().Load((dir / kControllerFile).string());
  session.evaluator().Load(evaluator.tensors);
  session.streams().Restore(states);
  return meta;
}

std::optional<int> LatestCheckpointEpoch(const std::string& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return std::nullopt;
  static const std::regex kPattern("epoch_([0-9]+)");
  std::optional<int> best;
  for (const auto& entry : fs::directory_iterator(root, ec)) {
    std::smatch match;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, match, kPattern)) continue;
    if (!fs::exists(entry.path() / kMetaFile)) continue;
    const int epoch = std::stoi(match[1]);
    if (!best || epoch > *best) best = epoch;
  }
  return best;
}

}  // namespace nasforge
