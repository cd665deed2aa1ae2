// Command-line front end: segment scans, evaluate predictions, export colored
// clouds and generate synthetic scenes. All pipeline parameters come from a
// flat key/value config file; every key can be overridden with --set.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "groundseg/errors.hpp"
#include "groundseg/eval.hpp"
#include "groundseg/pipeline.hpp"
#include "groundseg/ply.hpp"
#include "groundseg/scan_io.hpp"
#include "groundseg/synth.hpp"

namespace fs = std::filesystem;
using namespace groundseg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

Config load_config_with_overrides(const std::string &config_path,
                                  const std::vector<std::string> &overrides) {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    for (const std::string &assignment : overrides) cfg.apply_override(assignment);
    return cfg;
}

SensorModel load_model(const std::string &sensor_path) {
    return sensor_path.empty() ? SensorModel::default_64() : SensorModel::load(sensor_path);
}

LabelRemap load_remap(const std::string &remap_path) {
    return remap_path.empty() ? LabelRemap::semantic_kitti() : LabelRemap::load(remap_path);
}

// Accepts label files or directories of *.label files, sorted.
std::vector<fs::path> expand_label_args(const std::vector<std::string> &args) {
    std::vector<fs::path> files;
    for (const std::string &arg : args) {
        fs::path p(arg);
        if (fs::is_directory(p)) {
            std::vector<fs::path> dir_files;
            for (const auto &entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && entry.path().extension() == ".label")
                    dir_files.push_back(entry.path());
            std::sort(dir_files.begin(), dir_files.end());
            files.insert(files.end(), dir_files.begin(), dir_files.end());
        } else {
            files.push_back(p);
        }
    }
    return files;
}

struct SegmentArgs {
    std::vector<std::string> scans;
    std::string sensor_path;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    std::string timing_csv;
    std::string grid_dump_dir;
    int jobs = 1;
};

int run_segment(const SegmentArgs &args) {
    const Config cfg = load_config_with_overrides(args.config_path, args.overrides);
    const PipelineConfig pipeline_cfg = PipelineConfig::from_config(cfg);
    const SensorModel model = load_model(args.sensor_path);
    pipeline_cfg.validate(model);

    fs::create_directories(args.out_dir);

    struct Row {
        std::string id;
        double ms = 0.0;
        bool ok = false;
    };
    std::vector<Row> rows(args.scans.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> any_failed{false};
    std::mutex log_mutex;

    auto worker = [&]() {
        Pipeline pipeline(model, pipeline_cfg);
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= args.scans.size()) break;
            const fs::path scan_path(args.scans[i]);
            Row &row = rows[i];
            row.id = scan_path.stem().string();
            try {
                PointCloud cloud = load_scan(scan_path);
                if (!cloud.empty()) assign_rings(cloud, model);
                const SegmentResult seg = pipeline.segment(cloud);
                write_prediction_labels(fs::path(args.out_dir) / (row.id + ".label"), seg.labels);
                if (!args.grid_dump_dir.empty()) {
                    fs::create_directories(args.grid_dump_dir);
                    std::ofstream grid_out(fs::path(args.grid_dump_dir) / (row.id + "_grid.csv"));
                    dump_grid_csv(pipeline.last_grid(), grid_out);
                }
                row.ms = seg.report.segment_ms;
                row.ok = true;
                if (seg.report.mrf_fallback) {
                    std::lock_guard<std::mutex> lock(log_mutex);
                    std::cerr << row.id << ": MRF seeding found no seeds; coarse labels kept\n";
                }
            } catch (const std::exception &e) {
                any_failed = true;
                std::lock_guard<std::mutex> lock(log_mutex);
                std::cerr << row.id << ": " << e.what() << "\n";
            }
        }
    };

    const int jobs = std::max(1, args.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread &t : pool) t.join();
    }

    if (!args.timing_csv.empty()) {
        std::ofstream out(args.timing_csv);
        out << "scan_id,runtime_ms\n";
        for (const Row &row : rows)
            if (row.ok) out << row.id << ',' << row.ms << '\n';
    }
    return any_failed ? kExitPartial : kExitOk;
}

struct EvalArgs {
    std::vector<std::string> pred;
    std::vector<std::string> truth;
    std::string remap_path;
    std::string out_csv;
};

int run_eval(const EvalArgs &args) {
    const LabelRemap remap = load_remap(args.remap_path);
    const std::vector<fs::path> pred_files = expand_label_args(args.pred);
    const std::vector<fs::path> truth_files = expand_label_args(args.truth);
    if (pred_files.size() != truth_files.size())
        throw ConfigError("eval: prediction and truth file counts differ");
    if (pred_files.empty()) throw ConfigError("eval: no label files given");

    std::vector<std::string> ids;
    std::vector<ScanMetrics> metrics;
    bool any_failed = false;
    for (std::size_t i = 0; i < pred_files.size(); ++i) {
        try {
            const std::vector<LabelState> pred = load_prediction_labels(pred_files[i], remap);
            const std::vector<ClassLabel> truth = load_labels(truth_files[i], remap, pred.size());
            metrics.push_back(score_scan(pred, truth));
            ids.push_back(pred_files[i].stem().string());
        } catch (const std::exception &e) {
            any_failed = true;
            std::cerr << pred_files[i].string() << ": " << e.what() << "\n";
        }
    }
    if (metrics.empty()) throw ConfigError("eval: every scan failed");

    std::ofstream out(args.out_csv);
    if (!out) throw ConfigError("eval: cannot write " + args.out_csv);
    write_metrics_csv(out, ids, metrics);

    const SequenceSummary summary = aggregate(metrics);
    if (summary.iou_g.mean) std::cout << "mean iou_g: " << *summary.iou_g.mean << "\n";
    if (summary.recall_o.mean) std::cout << "mean recall_o: " << *summary.recall_o.mean << "\n";
    return any_failed ? kExitPartial : kExitOk;
}

int run_export(const std::string &scan_path, const std::string &labels_path, const std::string &out_path,
               const std::string &remap_path) {
    PointCloud cloud = load_scan(scan_path);
    const std::vector<LabelState> labels = load_prediction_labels(labels_path, load_remap(remap_path));
    if (labels.size() != cloud.size())
        throw ConfigError("export: label count does not match scan point count");
    std::ofstream out(out_path);
    if (!out) throw ConfigError("export: cannot write " + out_path);
    write_ply(out, cloud, labels);
    return kExitOk;
}

int run_synth(const std::string &scene_path, const std::string &sensor_path,
              const std::string &out_scan, const std::string &out_labels) {
    const SensorModel model = load_model(sensor_path);
    const SceneSpec spec = SceneSpec::load(scene_path);
    const SynthResult synth = generate(spec, model);
    write_scan(out_scan, synth.cloud);
    write_truth_labels(out_labels, synth.truth);
    std::cout << "generated " << synth.cloud.size() << " points\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"coarse-to-fine LiDAR ground segmentation"};
    app.require_subcommand(1);

    SegmentArgs seg;
    CLI::App *cmd_segment = app.add_subcommand("segment", "segment scans into ground/obstacle labels");
    cmd_segment->add_option("scans", seg.scans, "scan files (.bin)")->required();
    cmd_segment->add_option("--sensor", seg.sensor_path, "sensor model config");
    cmd_segment->add_option("--config", seg.config_path, "pipeline config file");
    cmd_segment->add_option("--set", seg.overrides, "override a config key (key=value)");
    cmd_segment->add_option("--out-dir", seg.out_dir, "output directory for .label files");
    cmd_segment->add_option("--timing-csv", seg.timing_csv, "write per-scan runtimes");
    cmd_segment->add_option("--dump-grid", seg.grid_dump_dir, "dump per-scan polar grid CSVs here");
    cmd_segment->add_option("--jobs", seg.jobs, "worker threads (scan-level parallelism)");

    EvalArgs ev;
    CLI::App *cmd_eval = app.add_subcommand("eval", "score predictions against ground truth");
    cmd_eval->add_option("--pred", ev.pred, "prediction label files or directories")->required();
    cmd_eval->add_option("--truth", ev.truth, "ground-truth label files or directories")->required();
    cmd_eval->add_option("--remap", ev.remap_path, "label remap config (default: SemanticKITTI)");
    cmd_eval->add_option("--out", ev.out_csv, "report CSV path")->required();

    std::string exp_scan, exp_labels, exp_out, exp_remap;
    CLI::App *cmd_export = app.add_subcommand("export", "write a colored ASCII PLY");
    cmd_export->add_option("--scan", exp_scan, "scan file")->required();
    cmd_export->add_option("--labels", exp_labels, "label file")->required();
    cmd_export->add_option("--out", exp_out, "output .ply")->required();
    cmd_export->add_option("--remap", exp_remap, "label remap config");

    std::string synth_scene, synth_sensor, synth_scan, synth_labels;
    CLI::App *cmd_synth = app.add_subcommand("synth", "generate a synthetic scan with truth labels");
    cmd_synth->add_option("--scene", synth_scene, "scene spec file")->required();
    cmd_synth->add_option("--sensor", synth_sensor, "sensor model config");
    cmd_synth->add_option("--out-scan", synth_scan, "output scan .bin")->required();
    cmd_synth->add_option("--out-labels", synth_labels, "output truth .label")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_segment->parsed()) return run_segment(seg);
        if (cmd_eval->parsed()) return run_eval(ev);
        if (cmd_export->parsed()) return run_export(exp_scan, exp_labels, exp_out, exp_remap);
        if (cmd_synth->parsed()) return run_synth(synth_scene, synth_sensor, synth_scan, synth_labels);
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitOk;
}
