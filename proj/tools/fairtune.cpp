#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fairtune/dataset.hpp"
#include "fairtune/experiment.hpp"

namespace {

struct CommonArgs {
    std::string spec_path;
    fairtune::SpecOverrides overrides;
    std::string data_root;
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--spec", args.spec_path, "experiment spec JSON")->required();
    cmd->add_option("--out", args.overrides.output_dir, "override the spec's output_dir");
    cmd->add_option("--workers", args.workers, "worker thread bound");
    cmd->add_option("--seed-override", args.overrides.seeds,
                    "replace repeat_seeds (repeatable)");
    cmd->add_option("--task", args.overrides.task_config, "override the task config path");
    cmd->add_option("--model", args.overrides.model, "override the model kind (lr|svm|nn)");
    cmd->add_option("--data-root", args.data_root,
                    "dataset root directory (default: $FAIRTUNE_DATA_ROOT)");
}

fairtune::StageContext make_context(const CommonArgs& args) {
    fairtune::ExperimentSpec spec = fairtune::load_experiment_spec(args.spec_path);
    fairtune::apply_overrides(spec, args.overrides);
    fairtune::StageContext ctx;
    ctx.spec = std::move(spec);
    ctx.data_root = args.data_root;
    ctx.workers = args.workers;
    ctx.log = &std::cout;
    return ctx;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fairtune: fairness-utility trade-off tuning for small tabular classifiers"};
    app.require_subcommand(1);

    const char* env_root = std::getenv("FAIRTUNE_DATA_ROOT");

    CommonArgs stage_args;
    if (env_root) stage_args.data_root = env_root;

    struct StageCmd {
        const char* name;
        const char* help;
        void (*fn)(const fairtune::StageContext&);
    };
    const StageCmd stages[] = {
        {"prepare", "load/generate the dataset and write its manifest",
         fairtune::stage_prepare},
        {"train-base", "train the base classifier per seed", fairtune::stage_train_base},
        {"mitigate", "run the RL mitigation loop per seed", fairtune::stage_mitigate},
        {"bench", "build mutation baselines and classify frontier models",
         fairtune::stage_bench},
        {"report", "summarize bench results and cross-check them", fairtune::stage_report},
        {"run", "all stages: prepare, train-base, mitigate, bench, report", fairtune::cmd_run},
    };
    for (const StageCmd& stage : stages)
        add_common(app.add_subcommand(stage.name, stage.help), stage_args);

    CommonArgs ablate_args;
    if (env_root) ablate_args.data_root = env_root;
    CLI::App* ablate = app.add_subcommand(
        "ablate", "run the full pipeline per reward-metric combination in a grid file");
    ablate->add_option("--spec", ablate_args.spec_path, "ablation grid JSON")->required();
    ablate->add_option("--out", ablate_args.overrides.output_dir,
                       "override the grid's output_dir");
    ablate->add_option("--workers", ablate_args.workers, "worker thread bound");
    ablate->add_option("--seed-override", ablate_args.overrides.seeds,
                       "replace repeat_seeds (repeatable)");
    ablate->add_option("--task", ablate_args.overrides.task_config,
                       "override the task config path");
    ablate->add_option("--model", ablate_args.overrides.model,
                       "override the model kind (lr|svm|nn)");
    ablate->add_option("--data-root", ablate_args.data_root,
                       "dataset root directory (default: $FAIRTUNE_DATA_ROOT)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ablate->parsed()) {
            fairtune::cmd_ablate(ablate_args.spec_path, ablate_args.overrides,
                                 ablate_args.data_root, ablate_args.workers, &std::cout);
            return 0;
        }
        for (const StageCmd& stage : stages) {
            if (app.get_subcommand(stage.name)->parsed()) {
                stage.fn(make_context(stage_args));
                return 0;
            }
        }
        std::cerr << "error: no command selected\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
