#include "groundseg/pipeline.hpp"

#include <chrono>
#include <numbers>

#include "groundseg/errors.hpp"

namespace groundseg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

Stage parse_stage(const std::string &name) {
    if (name == "coarse") return Stage::Coarse;
    if (name == "coarse+adjacency" || name == "coarse_adjacency") return Stage::CoarseAdjacency;
    if (name == "full") return Stage::Full;
    throw ConfigError("unknown stage '" + name + "' (expected coarse|coarse+adjacency|full)");
}

std::string stage_name(Stage stage) {
    switch (stage) {
    case Stage::Coarse: return "coarse";
    case Stage::CoarseAdjacency: return "coarse+adjacency";
    default: return "full";
    }
}

PipelineConfig PipelineConfig::from_config(const Config &cfg) {
    PipelineConfig pc;
    pc.stage = parse_stage(cfg.get_or("pipeline.stage", "full"));
    pc.row_min = cfg.get_int("pipeline.row_min", 0);
    pc.row_max = cfg.get_int("pipeline.row_max", -1);

    pc.grid_sectors = cfg.get_int("grid.sectors", 360);
    pc.grid_h_thresh = cfg.get_double("grid.h_thresh", 0.3);

    pc.adjacency_k_deg = cfg.get_double("adjacency.K_deg", 15.0);
    pc.adjacency_window = cfg.get_int("adjacency.window", 3);
    pc.adjacency_row_stride = cfg.get_int("adjacency.row_stride", 2);

    pc.mrf.lambda = cfg.get_double("mrf.lambda", 1.0);
    pc.mrf.sigma = cfg.get_double("mrf.sigma", 1.0);
    pc.mrf.scale_k = cfg.get_double("mrf.scale_k", 100.0);
    pc.mrf.seed_window = cfg.get_int("mrf.seed_window", 5);
    pc.mrf.seed_ratio = cfg.get_double("mrf.seed_ratio", 0.8);
    pc.mrf.epsilon_prob = cfg.get_double("mrf.epsilon_prob", 1e-6);
    pc.mrf.min_pair_distance = cfg.get_double("mrf.min_pair_distance", 0.01);

    const std::string backend = cfg.get_or("simd.backend", "auto");
    if (backend == "scalar")
        pc.backend = simd::Backend::Scalar;
    else if (backend == "avx2")
        pc.backend = simd::Backend::Avx2;
    else if (backend != "auto")
        throw ConfigError("simd.backend must be auto|scalar|avx2");
    return pc;
}

void PipelineConfig::validate(const SensorModel &model) const {
    if (grid_sectors < 1) throw ConfigError("grid.sectors must be >= 1");
    if (!(grid_h_thresh >= 0.0)) throw ConfigError("grid.h_thresh must be >= 0");
    if (!(adjacency_k_deg > 0.0) || adjacency_k_deg >= 90.0)
        throw ConfigError("adjacency.K_deg must be in (0, 90)");
    if (adjacency_window < 0) throw ConfigError("adjacency.window must be >= 0");
    if (adjacency_row_stride < 1) throw ConfigError("adjacency.row_stride must be >= 1");
    if (row_min < 0 || row_min >= model.laser_count())
        throw ConfigError("pipeline.row_min out of range");
    if (row_max >= 0 && (row_max >= model.laser_count() || row_max < row_min))
        throw ConfigError("pipeline.row_max out of range");
    mrf.validate();
}

Pipeline::Pipeline(SensorModel model, PipelineConfig config)
    : model_(std::move(model)), config_(config) {
    model_.validate();
    config_.validate(model_);
    if (config_.backend) simd::set_backend(*config_.backend);
    thresholds_ = PairThresholds::compute(model_, config_.adjacency_k_deg * std::numbers::pi / 180.0,
                                          config_.adjacency_row_stride);
}

SegmentResult Pipeline::segment(const PointCloud &cloud) {
    if (!cloud.empty() && !cloud.rings_assigned())
        throw UsageError("pipeline: rings must be assigned before segmentation");

    SegmentResult result;
    result.report.points = cloud.size();

    const auto t_total = Clock::now();

    const RangeImage image = build_range_image(cloud, model_);
    result.report.evictions = image.evictions;

    auto t = Clock::now();
    grid_ = bin_points(cloud, model_, config_.grid_sectors);
    result.report.grid_ms = ms_since(t);

    t = Clock::now();
    result.labels = coarse_segment(grid_, cloud, config_.grid_h_thresh);
    result.report.coarse_ms = ms_since(t);

    if (config_.stage != Stage::Coarse) {
        t = Clock::now();
        result.labels =
            mark_obstacles(image, cloud, thresholds_, std::move(result.labels), config_.adjacency_window);
        result.report.adjacency_ms = ms_since(t);
    }

    if (config_.stage == Stage::Full) {
        t = Clock::now();
        FineSegmentResult fine = fine_segment(image, cloud, result.labels, config_.mrf, &net_,
                                              config_.row_min, config_.row_max);
        result.report.mrf_ms = ms_since(t);
        result.report.mrf_fallback = fine.fallback;
        result.labels = std::move(fine.labels);
    } else {
        for (LabelState &label : result.labels) label = base_label(label);
    }

    result.report.segment_ms = ms_since(t_total);
    return result;
}

}  // namespace groundseg
