#include "fairtune/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fairtune/csv.hpp"
#include "fairtune/digest.hpp"
#include "fairtune/errors.hpp"
#include "fairtune/rng.hpp"

namespace fairtune {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void log_line(const StageContext& ctx, const std::string& line) {
    if (ctx.log) *ctx.log << line << "\n";
}

std::string resolve_against(const fs::path& base_dir, const std::string& path) {
    if (path.empty()) return path;
    fs::path p(path);
    return p.is_absolute() ? p.string() : (base_dir / p).lexically_normal().string();
}

std::string seed_dir(const ExperimentSpec& spec, std::uint64_t seed) {
    return spec.output_dir + "/seeds/" + std::to_string(seed);
}

// Annotates any stage failure with the stage name (CLI contract).
template <typename Fn>
void run_stage(const char* name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        throw std::runtime_error("stage " + std::string(name) + ": " + e.what());
    }
}

TrainSettings train_from_json(const nlohmann::json& j) {
    TrainSettings t;
    t.learning_rate = j.value("learning_rate", t.learning_rate);
    t.epochs = j.value("epochs", t.epochs);
    t.l2 = j.value("l2", t.l2);
    t.batch_size = j.value("batch_size", t.batch_size);
    return t;
}

MeasurementConfig measurement_from_json(const nlohmann::json& j) {
    MeasurementConfig m;
    if (j.contains("fairness")) m.fairness = j.at("fairness").get<std::vector<std::string>>();
    if (j.contains("utility")) m.utility = j.at("utility").get<std::vector<std::string>>();
    m.lambda = j.value("lambda", m.lambda);
    return m;
}

MitigationSettings mitigation_from_json(const nlohmann::json& j) {
    MitigationSettings s;
    s.lr = j.value("lr", s.lr);
    s.scaling = j.value("scaling", s.scaling);
    s.max_steps = j.value("max_steps", s.max_steps);
    s.utility_floor = j.value("utility_floor", s.utility_floor);
    s.episodes = j.value("episodes", s.episodes);
    s.policy_lr = j.value("policy_lr", s.policy_lr);
    s.discount = j.value("discount", s.discount);
    s.baseline_momentum = j.value("baseline_momentum", s.baseline_momentum);
    s.tuning_batch = j.value("tuning_batch", s.tuning_batch);
    return s;
}

}  // namespace

void ExperimentSpec::validate() const {
    if (name.empty()) throw ConfigError("experiment spec: name is empty");
    if (task_config_path.empty()) throw ConfigError("experiment spec: task_config is empty");
    if (dataset.empty()) throw ConfigError("experiment spec: dataset is empty");
    if (output_dir.empty()) throw ConfigError("experiment spec: output_dir is empty");
    if (repeat_seeds.empty())
        throw ConfigError("experiment spec: repeat_seeds must list at least one seed");
    std::vector<std::uint64_t> seeds = repeat_seeds;
    std::sort(seeds.begin(), seeds.end());
    if (std::adjacent_find(seeds.begin(), seeds.end()) != seeds.end())
        throw ConfigError("experiment spec: repeat_seeds contains duplicates");
    if (bench_repetitions == 0)
        throw ConfigError("experiment spec: bench_repetitions must be positive");
    train.validate();
    measurement.validate();
    mitigation.validate();
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open experiment spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("experiment spec " + path + ": " + e.what());
    }
    const fs::path base_dir = fs::path(path).parent_path();
    try {
        ExperimentSpec spec;
        spec.name = j.at("name").get<std::string>();
        spec.method_label = j.value("method_label", spec.method_label);
        spec.task_config_path =
            resolve_against(base_dir, j.at("task_config").get<std::string>());
        spec.dataset = j.at("dataset").get<std::string>();
        if (j.contains("synthetic")) {
            const auto& sj = j.at("synthetic");
            spec.synthetic.rows = sj.value("rows", spec.synthetic.rows);
            spec.synthetic.label_shift = sj.value("label_shift", spec.synthetic.label_shift);
            spec.synthetic.qual_shift = sj.value("qual_shift", spec.synthetic.qual_shift);
            spec.synthetic.noise_sd = sj.value("noise_sd", spec.synthetic.noise_sd);
            spec.synthetic.seed = sj.value("seed", spec.synthetic.seed);
        }
        spec.model = model_kind_from_string(j.value("model", "lr"));
        if (j.contains("train")) spec.train = train_from_json(j.at("train"));
        if (j.contains("measurement"))
            spec.measurement = measurement_from_json(j.at("measurement"));
        if (j.contains("mitigation"))
            spec.mitigation = mitigation_from_json(j.at("mitigation"));
        spec.repeat_seeds = j.at("repeat_seeds").get<std::vector<std::uint64_t>>();
        spec.bench_repetitions = j.value("bench_repetitions", spec.bench_repetitions);
        spec.output_dir = resolve_against(base_dir, j.at("output_dir").get<std::string>());
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("experiment spec " + path + ": " + e.what());
    }
}

void apply_overrides(ExperimentSpec& spec, const SpecOverrides& overrides) {
    if (!overrides.output_dir.empty()) spec.output_dir = overrides.output_dir;
    if (!overrides.task_config.empty()) spec.task_config_path = overrides.task_config;
    if (!overrides.model.empty()) spec.model = model_kind_from_string(overrides.model);
    if (!overrides.seeds.empty()) spec.repeat_seeds = overrides.seeds;
    spec.validate();
}

std::string task_label(const TaskConfig& task) {
    return task.dataset_name + "-" + task.sensitive_column;
}

std::string resolve_dataset_path(const StageContext& ctx) {
    if (ctx.spec.dataset == "synthetic") return ctx.spec.output_dir + "/data/synthetic.csv";
    const fs::path p(ctx.spec.dataset);
    if (p.is_absolute() || ctx.data_root.empty()) return p.string();
    return (fs::path(ctx.data_root) / p).string();
}

TaskDataset load_task_dataset(const StageContext& ctx, TaskConfig* task_out) {
    const TaskConfig task = load_task_config(ctx.spec.task_config_path);
    if (task_out) *task_out = task;
    return load_csv(resolve_dataset_path(ctx), task);
}

// --- prepare ----------------------------------------------------------------

namespace {

void prepare_impl(const StageContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const std::string path = resolve_dataset_path(ctx);

    if (spec.dataset == "synthetic") {
        const std::string content = synthetic_csv(spec.synthetic);
        std::ifstream existing(path, std::ios::binary);
        std::ostringstream current;
        if (existing) current << existing.rdbuf();
        if (!existing || current.str() != content) write_file_atomic(path, content);
        log_line(ctx, "prepare: generated synthetic dataset at " + path);
    } else if (!fs::exists(path)) {
        throw IoError("dataset file not found: " + path +
                      " (set FAIRTUNE_DATA_ROOT or see README for download steps)");
    }

    TaskConfig task;
    const TaskDataset ds = load_task_dataset(ctx, &task);
    const std::string digest = sha256_file(path);

    const std::string manifest_path = spec.output_dir + "/dataset_manifest.txt";
    std::ifstream old_manifest(manifest_path);
    if (old_manifest) {
        std::string line;
        while (std::getline(old_manifest, line)) {
            if (line.rfind("sha256 ", 0) == 0 && line.substr(7) != digest)
                throw DataError("dataset at " + path +
                                " changed since it was prepared (manifest sha256 mismatch)");
        }
    }

    std::ostringstream m;
    m << "fairtune-dataset-manifest v1\n";
    m << "task " << task_label(task) << "\n";
    m << "path " << path << "\n";
    m << "sha256 " << digest << "\n";
    m << "rows_kept " << ds.features.rows << "\n";
    m << "rows_dropped " << ds.dropped_rows << "\n";
    m << "feature_columns " << ds.features.cols << "\n";
    m << "split " << ds.train_idx.size() << " " << ds.tune_idx.size() << " "
      << ds.test_idx.size() << "\n";
    write_file_atomic(manifest_path, m.str());
    log_line(ctx, "prepare: " + std::to_string(ds.features.rows) + " rows kept, " +
                      std::to_string(ds.dropped_rows) + " dropped, " +
                      std::to_string(ds.features.cols) + " encoded features");
}

}  // namespace

void stage_prepare(const StageContext& ctx) {
    run_stage("prepare", [&] { prepare_impl(ctx); });
}

// --- train-base -------------------------------------------------------------

namespace {

void train_base_impl(const StageContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const TaskDataset ds = load_task_dataset(ctx);
    parallel_for(spec.repeat_seeds.size(), ctx.workers, [&](std::size_t i) {
        const std::uint64_t seed = spec.repeat_seeds[i];
        TrainSettings settings = spec.train;
        settings.seed = seed;
        ParamClassifier clf = init_classifier(spec.model, ds.features.cols, seed);
        clf = train_base(clf, ds, settings);
        save_model(clf, seed_dir(spec, seed) + "/base.model");
    });
    for (std::uint64_t seed : spec.repeat_seeds) {
        const ParamClassifier clf = load_model(seed_dir(spec, seed) + "/base.model");
        const double acc = accuracy(predict_bundle(clf, ds, ds.test_idx));
        log_line(ctx, "train-base: seed " + std::to_string(seed) + " test accuracy " +
                          fmt2(acc));
    }
}

}  // namespace

void stage_train_base(const StageContext& ctx) {
    run_stage("train-base", [&] { train_base_impl(ctx); });
}

// --- mitigate ---------------------------------------------------------------

namespace {

void mitigate_impl(const StageContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const TaskDataset ds = load_task_dataset(ctx);
    parallel_for(spec.repeat_seeds.size(), ctx.workers, [&](std::size_t i) {
        const std::uint64_t seed = spec.repeat_seeds[i];
        const std::string dir = seed_dir(spec, seed);
        if (!fs::exists(dir + "/base.model"))
            throw IoError("missing " + dir + "/base.model (run train-base first)");
        const ParamClassifier base = load_model(dir + "/base.model");

        MitigationSettings settings = spec.mitigation;
        settings.seed = seed;
        const MitigationResult result = mitigate(base, ds, spec.measurement, settings);

        std::ostringstream steps;
        steps << "episode,t,reward,f_tune,u_tune\n";
        for (const StepRecord& s : result.steps)
            steps << s.episode << "," << s.t << "," << fmt(s.reward) << "," << fmt(s.f_bar)
                  << "," << fmt(s.u_bar) << "\n";
        write_file_atomic(dir + "/steps.csv", steps.str());

        const std::vector<std::size_t> hull = upper_hull(result.frontier);
        std::map<std::size_t, std::size_t> hull_rank;  // frontier index -> hull position
        for (std::size_t k = 0; k < hull.size(); ++k) hull_rank[hull[k]] = k;

        std::ostringstream fr;
        fr << "model_id,f_bar,u_bar,on_hull,is_base,file\n";
        for (std::size_t m = 0; m < result.frontier.models.size(); ++m) {
            const FrontierEntry& entry = result.frontier.models[m];
            const bool is_base = entry.theta == base.theta;
            const auto rank = hull_rank.find(m);
            std::string file;
            if (rank != hull_rank.end()) {
                file = "models/hull_" + std::to_string(rank->second) + ".model";
                ParamClassifier saved = base;
                saved.theta = entry.theta;
                save_model(saved, dir + "/" + file);
            }
            fr << "f" << m << "," << fmt(entry.f_bar) << "," << fmt(entry.u_bar) << ","
               << (rank != hull_rank.end() ? 1 : 0) << "," << (is_base ? 1 : 0) << "," << file
               << "\n";
        }
        write_file_atomic(dir + "/frontier.csv", fr.str());

        std::ostringstream log;
        log << "base f_bar " << fmt(result.base_f_bar) << "\n";
        log << "base u_bar " << fmt(result.base_u_bar) << "\n";
        log << "frontier size " << result.frontier.models.size() << "\n";
        log << "hull size " << hull.size() << "\n";
        for (std::size_t e = 0; e < result.episode_returns.size(); ++e)
            log << "episode " << e << " return " << fmt(result.episode_returns[e]) << "\n";
        for (const std::string& d : result.diagnostics) log << "diagnostic " << d << "\n";
        write_file_atomic(dir + "/mitigation_log.txt", log.str());
    });
    for (std::uint64_t seed : spec.repeat_seeds)
        log_line(ctx, "mitigate: seed " + std::to_string(seed) + " artifacts at " +
                          seed_dir(spec, seed));
}

}  // namespace

void stage_mitigate(const StageContext& ctx) {
    run_stage("mitigate", [&] { mitigate_impl(ctx); });
}

// --- bench ------------------------------------------------------------------

namespace {

struct ScatterRow {
    std::string model_id;
    double u = 0.0;
    double f = 0.0;
    Region region = Region::bad;
};

struct SeedBench {
    // Parallel to default_pairs(): scatter rows of this seed's hull models.
    std::vector<std::vector<ScatterRow>> per_pair;
};

SeedBench bench_one_seed(const StageContext& ctx, const TaskDataset& ds, std::uint64_t seed,
                         const std::vector<MetricPair>& pairs) {
    const ExperimentSpec& spec = ctx.spec;
    const std::string dir = seed_dir(spec, seed);
    if (!fs::exists(dir + "/frontier.csv"))
        throw IoError("missing " + dir + "/frontier.csv (run mitigate first)");
    const ParamClassifier base = load_model(dir + "/base.model");
    const PredictionBundle anchor = predict_bundle(base, ds, ds.test_idx);

    const CsvTable frontier = read_csv(dir + "/frontier.csv");
    const std::size_t col_on_hull = frontier.column("on_hull");
    const std::size_t col_is_base = frontier.column("is_base");
    const std::size_t col_file = frontier.column("file");

    std::vector<std::pair<std::string, ParamClassifier>> mitigated;  // (hull id, model)
    for (const auto& row : frontier.rows) {
        if (row[col_on_hull] != "1" || row[col_is_base] == "1") continue;
        const std::string& file = row[col_file];
        const std::string id =
            "s" + std::to_string(seed) + "-" +
            fs::path(file).stem().string();  // e.g. s7-hull_2
        mitigated.emplace_back(id, load_model(dir + "/" + file));
    }

    SeedBench out;
    out.per_pair.resize(pairs.size());
    std::vector<PredictionBundle> bundles;
    bundles.reserve(mitigated.size());
    for (const auto& [id, clf] : mitigated) bundles.push_back(predict_bundle(clf, ds, ds.test_idx));

    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const MetricPair& pair = pairs[p];
        const BaselineCurve curve =
            build_baseline(anchor, pair, spec.bench_repetitions,
                           mix_seed(mix_seed(seed, "bench"), pair.name()));
        for (std::size_t m = 0; m < mitigated.size(); ++m) {
            ScatterRow row;
            row.model_id = mitigated[m].first;
            row.u = standardize(metric_spec(pair.utility), raw_metric(pair.utility, bundles[m]));
            row.f =
                standardize(metric_spec(pair.fairness), raw_metric(pair.fairness, bundles[m]));
            row.region = classify(row.u, row.f, curve);
            out.per_pair[p].push_back(std::move(row));
        }
    }
    return out;
}

void bench_impl(const StageContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    TaskConfig task;
    const TaskDataset ds = load_task_dataset(ctx, &task);
    const std::vector<MetricPair> pairs = default_pairs();

    std::vector<SeedBench> by_seed(spec.repeat_seeds.size());
    parallel_for(spec.repeat_seeds.size(), ctx.workers, [&](std::size_t i) {
        by_seed[i] = bench_one_seed(ctx, ds, spec.repeat_seeds[i], pairs);
    });

    std::size_t total_models = 0;
    for (const SeedBench& sb : by_seed) total_models += sb.per_pair.front().size();
    if (total_models == 0)
        throw DataError("no mitigated models on any seed's hull; nothing to bench");

    std::vector<PairProportions> proportions;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::ostringstream scatter;
        scatter << "model_id,u,f,region\n";
        std::vector<Region> labels;
        for (const SeedBench& sb : by_seed)
            for (const ScatterRow& row : sb.per_pair[p]) {
                scatter << csv_line(
                    {row.model_id, fmt(row.u), fmt(row.f), to_string(row.region)});
                labels.push_back(row.region);
            }
        write_file_atomic(spec.output_dir + "/bench/scatter_" + pairs[p].name() + ".csv",
                          scatter.str());
        proportions.push_back(aggregate_pair(pairs[p], labels));
    }

    const std::array<double, kRegionCount> mean = mean_proportions(proportions);
    const Region region_order[] = {Region::win_win, Region::good, Region::inverted,
                                   Region::bad, Region::lose_lose};
    std::ostringstream table;
    table << "method,task,model,pair,region,proportion\n";
    const std::string task_name = task_label(task);
    const std::string model_name = to_string(spec.model);
    for (const PairProportions& pp : proportions)
        for (Region r : region_order)
            table << csv_line({spec.method_label, task_name, model_name, pp.pair.name(),
                               to_string(r),
                               fmt(pp.proportions[static_cast<std::size_t>(r)])});
    for (Region r : region_order)
        table << csv_line({spec.method_label, task_name, model_name, "mean", to_string(r),
                           fmt(mean[static_cast<std::size_t>(r)])});
    write_file_atomic(spec.output_dir + "/bench/regions.csv", table.str());

    log_line(ctx, "bench: " + std::to_string(total_models) + " mitigated models, mean win-win " +
                      fmt2(100.0 * mean[0]) + "%");
}

}  // namespace

void stage_bench(const StageContext& ctx) {
    run_stage("bench", [&] { bench_impl(ctx); });
}

// --- report -----------------------------------------------------------------

namespace {

void report_impl(const StageContext& ctx) {
    const ExperimentSpec& spec = ctx.spec;
    const std::string regions_path = spec.output_dir + "/bench/regions.csv";
    if (!fs::exists(regions_path))
        throw IoError("missing " + regions_path + " (run bench first)");
    const CsvTable regions = read_csv(regions_path);
    const std::size_t col_pair = regions.column("pair");
    const std::size_t col_region = regions.column("region");
    const std::size_t col_prop = regions.column("proportion");
    const std::size_t col_method = regions.column("method");
    const std::size_t col_task = regions.column("task");
    const std::size_t col_model = regions.column("model");
    if (regions.rows.empty()) throw DataError("regions table is empty");

    // Recompute every per-pair proportion from the scatter files; the table
    // must be reproducible from them (no hidden state).
    const std::vector<MetricPair> pairs = default_pairs();
    std::map<std::string, PairProportions> recomputed;
    for (const MetricPair& pair : pairs) {
        const CsvTable scatter =
            read_csv(spec.output_dir + "/bench/scatter_" + pair.name() + ".csv");
        const std::size_t col_r = scatter.column("region");
        std::vector<Region> labels;
        for (const auto& row : scatter.rows) labels.push_back(region_from_string(row[col_r]));
        recomputed[pair.name()] = aggregate_pair(pair, labels);
    }

    std::vector<PairProportions> ordered;
    for (const MetricPair& pair : pairs) ordered.push_back(recomputed[pair.name()]);
    const std::array<double, kRegionCount> mean = mean_proportions(ordered);

    for (const auto& row : regions.rows) {
        const std::string& pair = row[col_pair];
        const Region region = region_from_string(row[col_region]);
        const double stored = std::stod(row[col_prop]);
        const double expect = pair == "mean"
                                  ? mean[static_cast<std::size_t>(region)]
                                  : recomputed.at(pair)
                                        .proportions[static_cast<std::size_t>(region)];
        if (std::fabs(stored - expect) > 1e-12)
            throw DataError("regions.csv disagrees with scatter files for pair " + pair +
                            " region " + row[col_region]);
    }

    const std::string method = regions.rows.front()[col_method];
    const std::string task = regions.rows.front()[col_task];
    const std::string model = regions.rows.front()[col_model];
    const std::size_t models_benched = ordered.front().count;

    std::ostringstream summary;
    summary << "experiment " << spec.name << "\n";
    summary << "method " << method << "  task " << task << "  model " << model << "\n";
    summary << "seeds " << spec.repeat_seeds.size() << "  mitigated models benched "
            << models_benched << "\n\n";
    summary << "region shares per metric pair (win-win / good / inverted / bad / lose-lose)\n";
    const Region region_order[] = {Region::win_win, Region::good, Region::inverted,
                                   Region::bad, Region::lose_lose};
    auto share_line = [&region_order](const std::array<double, kRegionCount>& p) {
        std::string line;
        for (Region r : region_order) {
            if (!line.empty()) line += " / ";
            line += fmt2(100.0 * p[static_cast<std::size_t>(r)]) + "%";
        }
        return line;
    };
    for (const PairProportions& pp : ordered)
        summary << "  " << pp.pair.name() << ": " << share_line(pp.proportions) << "\n";
    summary << "  mean: " << share_line(mean) << "\n";
    write_file_atomic(spec.output_dir + "/report/summary.txt", summary.str());

    std::ostringstream long_csv;
    long_csv << "method,task,model,pair,region,proportion,count\n";
    for (const PairProportions& pp : ordered)
        for (Region r : region_order)
            long_csv << csv_line({method, task, model, pp.pair.name(), to_string(r),
                                  fmt(pp.proportions[static_cast<std::size_t>(r)]),
                                  std::to_string(pp.count)});
    for (Region r : region_order)
        long_csv << csv_line({method, task, model, "mean", to_string(r),
                              fmt(mean[static_cast<std::size_t>(r)]),
                              std::to_string(models_benched)});
    write_file_atomic(spec.output_dir + "/report/report_long.csv", long_csv.str());

    log_line(ctx, "report: mean region shares " + share_line(mean));
}

}  // namespace

void stage_report(const StageContext& ctx) {
    run_stage("report", [&] { report_impl(ctx); });
}

void cmd_run(const StageContext& ctx) {
    stage_prepare(ctx);
    stage_train_base(ctx);
    stage_mitigate(ctx);
    stage_bench(ctx);
    stage_report(ctx);
}

// --- ablate -----------------------------------------------------------------

namespace {

std::string slug(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else if (!out.empty() && out.back() != '-')
            out.push_back('-');
    }
    while (!out.empty() && out.back() == '-') out.pop_back();
    if (out.empty()) throw ConfigError("ablation combination label slugs to nothing");
    return out;
}

double read_mean_win_win(const std::string& regions_path) {
    const CsvTable table = read_csv(regions_path);
    const std::size_t col_pair = table.column("pair");
    const std::size_t col_region = table.column("region");
    const std::size_t col_prop = table.column("proportion");
    for (const auto& row : table.rows)
        if (row[col_pair] == "mean" && row[col_region] == "win-win")
            return std::stod(row[col_prop]);
    throw DataError("no mean win-win row in " + regions_path);
}

}  // namespace

void cmd_ablate(const std::string& grid_path, const SpecOverrides& overrides,
                const std::string& data_root, std::size_t workers, std::ostream* log) {
    std::ifstream in(grid_path);
    if (!in) throw IoError("cannot open ablation grid: " + grid_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("ablation grid " + grid_path + ": " + e.what());
    }
    const fs::path base_dir = fs::path(grid_path).parent_path();

    struct ComboResult {
        std::string label;
        bool is_default = false;
        double win_win = 0.0;
    };
    std::vector<ComboResult> results;
    std::string grid_out;
    try {
        const std::string base_spec_path =
            resolve_against(base_dir, j.at("base_spec").get<std::string>());
        grid_out = overrides.output_dir.empty()
                       ? resolve_against(base_dir, j.at("output_dir").get<std::string>())
                       : overrides.output_dir;
        const auto& combos = j.at("combinations");
        if (combos.empty()) throw ConfigError("ablation grid lists no combinations");

        for (const auto& combo : combos) {
            ComboResult result;
            result.label = combo.at("label").get<std::string>();
            result.is_default = combo.value("default", false);

            ExperimentSpec spec = load_experiment_spec(base_spec_path);
            SpecOverrides combo_overrides = overrides;
            combo_overrides.output_dir.clear();  // per-combo dirs live under grid_out
            apply_overrides(spec, combo_overrides);
            spec.measurement.fairness =
                combo.at("fairness").get<std::vector<std::string>>();
            spec.measurement.utility = combo.at("utility").get<std::vector<std::string>>();
            spec.measurement.lambda = combo.value("lambda", spec.measurement.lambda);
            spec.measurement.validate();
            spec.method_label = result.label;
            spec.name = spec.name + "-" + slug(result.label);
            spec.output_dir = grid_out + "/" + slug(result.label);

            StageContext ctx{spec, data_root, workers, log};
            if (log) *log << "== ablate " << result.label << " ==\n";
            cmd_run(ctx);
            result.win_win = read_mean_win_win(spec.output_dir + "/bench/regions.csv");
            results.push_back(result);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("ablation grid " + grid_path + ": " + e.what());
    }

    std::stable_sort(results.begin(), results.end(),
                     [](const ComboResult& a, const ComboResult& b) {
                         return a.win_win != b.win_win ? a.win_win > b.win_win
                                                       : a.label < b.label;
                     });
    const double best = results.front().win_win;

    std::ostringstream table;
    table << "rank,reward_metrics,win_win_pct,pct_of_best,is_default\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        // When every configuration ties at zero, each one matches the best.
        const double pct = best > 0.0 ? 100.0 * results[i].win_win / best : 100.0;
        char pct_buf[32];
        std::snprintf(pct_buf, sizeof(pct_buf), "%.1f", pct);
        table << csv_line({std::to_string(i + 1), results[i].label,
                           fmt2(100.0 * results[i].win_win), pct_buf,
                           results[i].is_default ? "1" : "0"});
    }
    write_file_atomic(grid_out + "/ablation.csv", table.str());
    if (log) {
        *log << "ablation table (" << results.size() << " reward configurations):\n";
        for (std::size_t i = 0; i < results.size(); ++i)
            *log << "  " << (i + 1) << ". " << results[i].label << "  win-win "
                 << fmt2(100.0 * results[i].win_win) << "%"
                 << (results[i].is_default ? "  [default]" : "") << "\n";
    }
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t pool = std::max<std::size_t>(1, std::min(workers, n));
    if (pool == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t w = 0; w < pool; ++w)
        threads.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (std::thread& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace fairtune
