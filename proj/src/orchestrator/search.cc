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

#include "nasforge/orchestrator/search.h"

#include <cmath>
#include <condition_variable>
#include <deque>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/evaluator/evaluator.h"
#include "nasforge/evaluator/weights_manager.h"
#include "nasforge/orchestrator/checkpoint.h"
#include "nasforge/search_space/search_space.h"

namespace nasforge {
namespace {

using nlohmann::json;

json Number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void CheckConfig(const TrainerConfig& config) {
  if (config.epochs < 1) throw ConfigError("trainer: epochs must be >= 1");
  if (config.samples_per_epoch < 0 || config.evaluator_updates_per_epoch < 0 ||
      config.checkpoint_every < 0) {
    throw ConfigError("trainer: counts must be >= 0");
  }
}

// Bookkeeping shared by both loops: resume, logging, best-so-far, epoch
// summaries and checkpoints.
class SearchRun {
 public:
  SearchRun(Session& session, const TrainerConfig& config,
            const SearchOptions& options)
      : session_(session), config_(config), options_(options) {
    CheckConfig(config_);
    if (options_.resume && !options_.checkpoint_dir.empty()) {
      if (auto latest = LatestCheckpointEpoch(options_.checkpoint_dir)) {
        const CheckpointMeta meta = LoadCheckpoint(
            session_, EpochDirectory(options_.checkpoint_dir, *latest));
        first_epoch_ = meta.epoch + 1;
        report_.resumed = true;
        report_.last_epoch = meta.epoch;
        report_.has_best = meta.has_best;
        report_.best_genotype = meta.best_genotype;
        report_.best_reward = meta.best_reward;
        report_.max_inflight_observed = meta.max_inflight_observed;
        report_.max_staleness = meta.max_staleness;
        evaluations_ = meta.evaluations;
      }
    }
    if (!options_.log_path.empty()) {
      log_.open(options_.log_path,
                report_.resumed ? std::ios::app : std::ios::trunc);
      if (!log_) throw Error("cannot open search log " + options_.log_path);
    }
  }

  int first_epoch() const { return first_epoch_; }

  void BeginEpoch() {
    epoch_evaluations_ = 0;
    epoch_reward_sum_ = 0.0;
  }

  void Record(EvaluationRecord record) {
    ++evaluations_;
    if (record.failed) {
      ++report_.failed;
    } else {
      ++epoch_evaluations_;
      epoch_reward_sum_ += record.reward;
      if (!report_.has_best || record.reward > report_.best_reward) {
        report_.has_best = true;
        report_.best_reward = record.reward;
        report_.best_genotype = session_.search_space().Canonicalize(record.genotype);
      }
    }
    report_.max_inflight_observed =
        std::max(report_.max_inflight_observed, record.inflight);
    report_.max_staleness = std::max(report_.max_staleness, record.staleness);
    if (log_.is_open()) log_ << RecordToJson(record) << '\n';
    if (options_.on_record) options_.on_record(record);
    report_.evaluations.push_back(std::move(record));
  }

  // Runs the evaluator updates, closes the epoch and checkpoints it.
  // Returns false when the run should stop here.
  bool EndEpoch(int epoch) {
    double loss = 0.0;
    int with_loss = 0;
    for (int u = 0; u < config_.evaluator_updates_per_epoch; ++u) {
      UpdateStats stats;
      try {
        stats = session_.evaluator().UpdateEvaluator(session_.controller());
      } catch (const std::exception& e) {
        throw Error(fmt::format("epoch {} update {}: {}", epoch, u, e.what()));
      }
      if (auto it = stats.find("loss"); it != stats.end()) {
        loss += it->second;
        ++with_loss;
      }
    }
    EpochSummary summary;
    summary.epoch = epoch;
    summary.evaluations = epoch_evaluations_;
    summary.mean_reward =
        epoch_evaluations_ > 0 ? epoch_reward_sum_ / epoch_evaluations_ : 0.0;
    summary.best_so_far = report_.has_best ? report_.best_reward : 0.0;
    summary.update_loss = with_loss > 0 ? loss / with_loss : 0.0;
    report_.epochs.push_back(summary);
    report_.last_epoch = epoch;
    if (log_.is_open()) {
      json j = {{"epoch_summary", epoch},
                {"evaluations", summary.evaluations},
                {"mean_reward", Number(summary.mean_reward)},
                {"best_so_far", Number(summary.best_so_far)},
                {"update_loss", Number(summary.update_loss)}};
      log_ << j.dump() << '\n';
    }
    if (!options_.checkpoint_dir.empty() && config_.checkpoint_every > 0 &&
        epoch % config_.checkpoint_every == 0) {
      CheckpointMeta meta;
      meta.epoch = epoch;
      meta.evaluations = evaluations_;
      meta.has_best = report_.has_best;
      meta.best_genotype = report_.best_genotype;
      meta.best_reward = report_.best_reward;
      meta.max_inflight_observed = report_.max_inflight_observed;
      meta.max_staleness = report_.max_staleness;
      SaveCheckpoint(session_, options_.checkpoint_dir, meta);
    }
    return options_.stop_after_epoch < 0 || epoch < options_.stop_after_epoch;
  }

  SearchReport Finish() {
    if (log_.is_open()) {
      log_ << SummaryToJson(report_) << '\n';
      log_.flush();
    }
    return std::move(report_);
  }

  EvaluationRecord MakeRecord(int epoch, int step, const DiscreteRollout& r) const {
    EvaluationRecord record;
    record.epoch = epoch;
    record.step = step;
    record.genotype = r.genotype;
    record.genotype_text = session_.search_space().ToString(r.genotype);
    if (r.HasReward()) record.reward = r.reward();
    for (const auto& [name, value] : r.perf) {
      if (name != kRewardKey) record.metrics[name] = value;
    }
    return record;
  }

 private:
  Session& session_;
  const TrainerConfig& config_;
  const SearchOptions& options_;
  SearchReport report_;
  std::ofstream log_;
  int first_epoch_ = 1;
  int64_t evaluations_ = 0;
  int epoch_evaluations_ = 0;
  double epoch_reward_sum_ = 0.0;
};

}  // namespace

std::string RecordToJson(const EvaluationRecord& record) {
  json metrics = json::object();
  for (const auto& [name, value] : record.metrics) metrics[name] = Number(value);
  json j = {{"epoch", record.epoch},
            {"step", record.step},
            {"genotype", record.genotype_text},
            {"reward", record.failed ? json(nullptr) : Number(record.reward)},
            {"metrics", metrics},
            {"staleness", record.staleness},
            {"inflight", record.inflight}};
  if (record.failed) {
    j["failed"] = true;
    j["error"] = record.error;
  }
  if (record.attempts > 1) j["attempts"] = record.attempts;
  return j.dump();
}

std::string SummaryToJson(const SearchReport& report) {
  json j = {{"summary", true},
            {"evaluations", report.evaluations.size()},
            {"failed", report.failed},
            {"last_epoch", report.last_epoch},
            {"best_reward", report.has_best ? Number(report.best_reward) : json(nullptr)},
            {"max_inflight", report.max_inflight_observed},
            {"max_staleness", report.max_staleness}};
  return j.dump();
}

SearchReport SimpleSearch(Session& session, const TrainerConfig& config,
                          const SearchOptions& options) {
  SearchRun run(session, config, options);
  for (int epoch = run.first_epoch(); epoch <= config.epochs; ++epoch) {
    run.BeginEpoch();
    for (int step = 0; step < config.samples_per_epoch; ++step) {
      DiscreteRollout rollout;
      try {
        rollout = session.controller().Sample(1).front();
        rollout.candidate = session.weights_manager().AssembleCandidate(rollout);
        session.evaluator().EvaluateRollout(rollout);
        const DiscreteRollout evaluated[] = {rollout};
        session.controller().Step(evaluated);
      } catch (const std::exception& e) {
        throw Error(fmt::format("epoch {} step {}: {}", epoch, step, e.what()));
      }
      run.Record(run.MakeRecord(epoch, step, rollout));
    }
    if (!run.EndEpoch(epoch)) break;
  }
  return run.Finish();
}

namespace {

struct Ticket {
  int step = 0;
  int attempts = 0;
  int inflight = 0;
  int64_t version = 0;
  DiscreteRollout rollout;
  std::exception_ptr error;
};

// Evaluation workers fed through a queue; results come back in completion
// order. The destructor stops and joins every worker.
class WorkerPool {
 public:
  WorkerPool(const Evaluator& evaluator, int workers) : evaluator_(evaluator) {
    for (int i = 0; i < workers; ++i) threads_.emplace_back([this] { Work(); });
  }
  ~WorkerPool() {
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
    }
    work_cv_.notify_all();
    for (auto& t : threads_) t.join();
  }

  void Submit(Ticket ticket) {
    {
      std::lock_guard lock(mutex_);
      work_.push_back(std::move(ticket));
    }
    work_cv_.notify_one();
  }

  Ticket Next() {
    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [this] { return !done_.empty(); });
    Ticket t = std::move(done_.front());
    done_.pop_front();
    return t;
  }

 private:
  void Work() {
    for (;;) {
      Ticket ticket;
      {
        std::unique_lock lock(mutex_);
        work_cv_.wait(lock, [this] { return stop_ || !work_.empty(); });
        if (stop_) return;
        ticket = std::move(work_.front());
        work_.pop_front();
      }
      try {
        evaluator_.EvaluateRollout(ticket.rollout);
        ticket.error = nullptr;
      } catch (...) {
        ticket.error = std::current_exception();
      }
      {
        std::lock_guard lock(mutex_);
        done_.push_back(std::move(ticket));
      }
      done_cv_.notify_one();
    }
  }

  const Evaluator& evaluator_;
  std::mutex mutex_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  std::deque<Ticket> work_;
  std::deque<Ticket> done_;
  bool stop_ = false;
  std::vector<std::thread> threads_;
};

std::string ExceptionMessage(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace

SearchReport AsyncSearch(Session& session, const TrainerConfig& config,
                         const AsyncConfig& async, const SearchOptions& options) {
  if (async.num_workers < 1) throw ConfigError("async: num_workers must be >= 1");
  if (async.num_workers > 1 && !session.evaluator().concurrent_evaluation()) {
    throw ConfigError("async: the " + session.evaluator().type_name() +
                      " evaluator cannot evaluate concurrently; use one worker");
  }
  const int max_inflight = async.EffectiveMaxInflight();
  SearchRun run(session, config, options);
  Controller& controller = session.controller();
  WorkerPool pool(session.evaluator(), async.num_workers);
  for (int epoch = run.first_epoch(); epoch <= config.epochs; ++epoch) {
    run.BeginEpoch();
    const int budget = config.samples_per_epoch;
    int dispatched = 0;
    int completed = 0;
    int inflight = 0;
    while (completed < budget) {
      while (dispatched < budget && inflight < max_inflight) {
        Ticket ticket;
        ticket.step = dispatched;
        try {
          ticket.rollout = controller.Sample(1).front();
          ticket.rollout.candidate =
              session.weights_manager().AssembleCandidate(ticket.rollout);
        } catch (const std::exception& e) {
          throw Error(fmt::format("epoch {} step {}: {}", epoch, dispatched, e.what()));
        }
        ticket.attempts = 1;
        ticket.version = controller.step_count();
        ticket.inflight = ++inflight;
        ++dispatched;
        pool.Submit(std::move(ticket));
      }
      Ticket done = pool.Next();
      --inflight;
      if (done.error) {
        if (done.attempts < 2) {
          ++done.attempts;
          done.error = nullptr;
          done.rollout.perf.clear();
          ++inflight;
          pool.Submit(std::move(done));
          continue;
        }
        EvaluationRecord record = run.MakeRecord(epoch, done.step, done.rollout);
        record.failed = true;
        record.error = ExceptionMessage(done.error);
        record.attempts = done.attempts;
        record.inflight = done.inflight;
        record.staleness = controller.step_count() - done.version;
        ++completed;
        run.Record(std::move(record));
        continue;
      }
      const int64_t staleness = controller.step_count() - done.version;
      try {
        const DiscreteRollout evaluated[] = {done.rollout};
        controller.Step(evaluated);
      } catch (const std::exception& e) {
        throw Error(fmt::format("epoch {} step {}: {}", epoch, done.step, e.what()));
      }
      EvaluationRecord record = run.MakeRecord(epoch, done.step, done.rollout);
      record.attempts = done.attempts;
      record.inflight = done.inflight;
      record.staleness = staleness;
      ++completed;
      run.Record(std::move(record));
    }
    if (!run.EndEpoch(epoch)) break;
  }
  return run.Finish();
}

SearchReport RunSearch(Session& session, const SearchOptions& options) {
  const Trainer& trainer = session.trainer();
  if (trainer.is_async()) {
    return AsyncSearch(session, trainer.config(), trainer.async_config(), options);
  }
  return SimpleSearch(session, trainer.config(), options);
}

}  // namespace nasforge
