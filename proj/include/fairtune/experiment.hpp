#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairtune/bench.hpp"
#include "fairtune/classifier.hpp"
#include "fairtune/dataset.hpp"
#include "fairtune/measurement.hpp"
#include "fairtune/mitigator.hpp"
#include "fairtune/task_config.hpp"

namespace fairtune {

/// One end-to-end experiment: a task, a model kind, reward metrics, and the
/// seeds it repeats over. Loaded from a JSON spec file.
struct ExperimentSpec {
    std::string name;
    std::string method_label = "rl";
    std::string task_config_path;        // JSON TaskConfig
    std::string dataset;                 // CSV path, or "synthetic"
    SyntheticSpec synthetic;             // used when dataset == "synthetic"
    ModelKind model = ModelKind::lr;
    TrainSettings train;
    MeasurementConfig measurement;
    MitigationSettings mitigation;
    std::vector<std::uint64_t> repeat_seeds;
    std::size_t bench_repetitions = 50;
    std::string output_dir;

    void validate() const;
};

ExperimentSpec load_experiment_spec(const std::string& path);

/// Everything a stage needs besides the spec: dataset root (CLI flag or the
/// FAIRTUNE_DATA_ROOT environment variable), worker bound, optional log sink.
struct StageContext {
    ExperimentSpec spec;
    std::string data_root;
    std::size_t workers = 1;
    std::ostream* log = nullptr;
};

/// "<dataset_name>-<sensitive_column>", the task label used in result tables.
std::string task_label(const TaskConfig& task);

/// Resolves the spec's dataset to a concrete CSV path (generating the
/// synthetic file under the output dir on first use).
std::string resolve_dataset_path(const StageContext& ctx);

/// Loads the task config + dataset the spec points at.
TaskDataset load_task_dataset(const StageContext& ctx, TaskConfig* task_out = nullptr);

// Pipeline stages. Each reads its inputs from, and writes its artifacts
// under, spec.output_dir; all writes are atomic. Errors are annotated with
// the stage name.
void stage_prepare(const StageContext& ctx);
void stage_train_base(const StageContext& ctx);
void stage_mitigate(const StageContext& ctx);
void stage_bench(const StageContext& ctx);
void stage_report(const StageContext& ctx);

/// prepare -> train-base -> mitigate -> bench -> report.
void cmd_run(const StageContext& ctx);

/// CLI-level overrides applied on top of a loaded spec.
struct SpecOverrides {
    std::string output_dir;            // --out
    std::string task_config;           // --task
    std::string model;                 // --model
    std::vector<std::uint64_t> seeds;  // --seed-override, replaces repeat_seeds
};

void apply_overrides(ExperimentSpec& spec, const SpecOverrides& overrides);

/// Runs the base spec once per reward-metric combination in the grid file
/// and writes one consolidated table sorted by mean win-win share.
void cmd_ablate(const std::string& grid_path, const SpecOverrides& overrides,
                const std::string& data_root, std::size_t workers, std::ostream* log);

/// Bounded-thread fan-out over n items; rethrows the first worker error.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fairtune
