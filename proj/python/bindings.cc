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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nasforge/common/error.h"
#include "nasforge/core/config.h"
#include "nasforge/core/registry.h"
#include "nasforge/core/session.h"
#include "nasforge/evaluator/evaluator.h"
#include "nasforge/hwcost/device.h"
#include "nasforge/hwcost/pipeline.h"
#include "nasforge/orchestrator/genotype_file.h"
#include "nasforge/orchestrator/search.h"
#include "nasforge/orchestrator/workflow.h"
#include "nasforge/search_space/blockwise_space.h"
#include "nasforge/search_space/search_space.h"

namespace py = pybind11;

namespace nasforge {
namespace {

using Perf = std::map<std::string, double>;

// An assembled session built from YAML text.
class PySession {
 public:
  explicit PySession(const std::string& config_text)
      : session_(AssembleSession(ParseConfig(config_text, ComponentRegistry::Global()),
                                 ComponentRegistry::Global())) {}

  py::dict Search(const std::string& log_path, const std::string& checkpoint_dir,
                  bool resume, int stop_after_epoch) {
    SearchOptions options;
    options.log_path = log_path;
    options.checkpoint_dir = checkpoint_dir;
    options.resume = resume;
    options.stop_after_epoch = stop_after_epoch;
    SearchReport report;
    {
      py::gil_scoped_release release;
      report = RunSearch(session_, options);
    }
    py::dict out;
    out["evaluations"] = report.evaluations.size();
    out["failed"] = report.failed;
    out["last_epoch"] = report.last_epoch;
    out["resumed"] = report.resumed;
    if (report.has_best) {
      out["best_genotype"] = session_.search_space().ToString(report.best_genotype);
      out["best_reward"] = report.best_reward;
    } else {
      out["best_genotype"] = py::none();
      out["best_reward"] = py::none();
    }
    py::list epochs;
    for (const auto& e : report.epochs) {
      py::dict d;
      d["epoch"] = e.epoch;
      d["mean_reward"] = e.mean_reward;
      d["best_so_far"] = e.best_so_far;
      epochs.append(d);
    }
    out["epochs"] = epochs;
    return out;
  }

  std::vector<py::dict> Derive(int n) { return Records(nasforge::Derive(session_, n)); }

  std::vector<py::dict> EvalArch(const std::vector<std::string>& genotypes) {
    std::vector<GenotypeEntry> entries;
    for (size_t i = 0; i < genotypes.size(); ++i) {
      entries.push_back(GenotypeEntry{static_cast<int>(i + 1), genotypes[i], "", ""});
    }
    return Records(nasforge::EvalArch(session_, entries));
  }

  std::vector<std::string> RandomSample(int n) { return nasforge::RandomSample(session_, n); }

  Perf Evaluate(const std::string& genotype) {
    auto records = nasforge::EvalArch(session_, {GenotypeEntry{1, genotype, "", ""}});
    if (!records.front().ok()) throw Error(records.front().error);
    return records.front().perf;
  }

  Genotype Parse(const std::string& text) const { return session_.search_space().Parse(text); }

  std::string Format(const Genotype& genotype) const {
    const SearchSpace& space = session_.search_space();
    space.Validate(genotype);
    return space.ToString(space.Canonicalize(genotype));
  }

  std::string SpaceType() const { return session_.search_space().type_name(); }
  std::string SpaceSize() const { return BigCountToString(session_.search_space().SpaceSize()); }
  std::vector<int> Cardinalities() const { return session_.search_space().cardinalities(); }

 private:
  static std::vector<py::dict> Records(const std::vector<ArchRecord>& records) {
    std::vector<py::dict> out;
    for (const auto& r : records) {
      py::dict d;
      d["genotype"] = r.genotype;
      d["perf"] = r.perf;
      d["error"] = r.ok() ? py::object(py::none()) : py::object(py::str(r.error));
      out.push_back(d);
    }
    return out;
  }

  Session session_;
};

std::vector<py::dict> Hwcost(const std::string& device, uint64_t seed, int n_train, int n_test,
                             int epochs, const std::vector<std::string>& models) {
  PipelineOptions options;
  auto kind = ParseDeviceKind(device);
  if (!kind) throw ConfigError("device must be gpu_like or fpga_like, got '" + device + "'");
  options.device.kind = *kind;
  options.seed = seed;
  options.n_train = n_train;
  options.n_test = n_test;
  options.model_options.epochs = epochs;
  if (!models.empty()) {
    options.models.clear();
    for (const auto& name : models) {
      auto m = ParseCostModelKind(name);
      if (!m) throw ConfigError("unknown cost model '" + name + "'");
      options.models.push_back(*m);
    }
  }
  PipelineResult result;
  {
    py::gil_scoped_release release;
    result = RunCostPipeline(BlockwiseSpace{}, options);
  }
  std::vector<py::dict> rows;
  for (const auto& row : result.report.rows) {
    py::dict d;
    d["model"] = row.model;
    d["rmse"] = row.rmse;
    d["improvement_vs_sum"] = row.improvement_vs_sum;
    rows.push_back(d);
  }
  return rows;
}

std::vector<std::tuple<std::string, std::string, std::string>> Registry() {
  std::vector<std::tuple<std::string, std::string, std::string>> out;
  for (const RegistryEntry* e : ComponentRegistry::Global().Entries()) {
    out.emplace_back(std::string(ComponentKindName(e->kind)), e->name, e->description);
  }
  return out;
}

}  // namespace
}  // namespace nasforge

PYBIND11_MODULE(_nasforge, m) {
  using namespace nasforge;
  m.doc() = "Modular neural architecture search";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<ConfigError> config_error(m, "ConfigError", error.ptr());
  static py::exception<GenotypeError> genotype_error(m, "GenotypeError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      config_error(e.what());
    } catch (const GenotypeError& e) {
      genotype_error(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("registry", &Registry, "Registered (kind, name, description) triples.");
  m.def(
      "sample_config", [] { return SampleConfigText(ComponentRegistry::Global()); },
      "Default search configuration as commented YAML.");
  m.def(
      "final_sample_config", [] { return FinalSampleConfigText(ComponentRegistry::Global()); },
      "Default final-training configuration as commented YAML.");
  m.def("hwcost", &Hwcost, py::arg("device") = "gpu_like", py::arg("seed") = 0,
        py::arg("n_train") = 2000, py::arg("n_test") = 1000, py::arg("epochs") = 200,
        py::arg("models") = std::vector<std::string>{},
        "Fit the cost models and compare them with naive addition.");

  py::class_<PySession>(m, "Session")
      .def(py::init<const std::string&>(), py::arg("config_text"))
      .def("search", &PySession::Search, py::arg("log_path") = "",
           py::arg("checkpoint_dir") = "", py::arg("resume") = false,
           py::arg("stop_after_epoch") = -1)
      .def("derive", &PySession::Derive, py::arg("n"))
      .def("eval_arch", &PySession::EvalArch, py::arg("genotypes"))
      .def("random_sample", &PySession::RandomSample, py::arg("n"))
      .def("evaluate", &PySession::Evaluate, py::arg("genotype"))
      .def("parse", &PySession::Parse, py::arg("text"))
      .def("format", &PySession::Format, py::arg("genotype"))
      .def_property_readonly("space_type", &PySession::SpaceType)
      .def_property_readonly("space_size", &PySession::SpaceSize)
      .def_property_readonly("cardinalities", &PySession::Cardinalities);
}
