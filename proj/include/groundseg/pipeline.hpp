#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groundseg/adjacency.hpp"
#include "groundseg/config.hpp"
#include "groundseg/maxflow.hpp"
#include "groundseg/mrf.hpp"
#include "groundseg/point_cloud.hpp"
#include "groundseg/polar_grid.hpp"
#include "groundseg/range_image.hpp"
#include "groundseg/sensor_model.hpp"
#include "groundseg/simd/kernels.hpp"

namespace groundseg {

// Stage toggles form a prefix of the pipeline.
enum class Stage {
    Coarse,
    CoarseAdjacency,
    Full,
};

Stage parse_stage(const std::string &name);  // throws ConfigError
std::string stage_name(Stage stage);

struct PipelineConfig {
    Stage stage = Stage::Full;
    int grid_sectors = 360;
    double grid_h_thresh = 0.3;
    double adjacency_k_deg = 15.0;
    int adjacency_window = 3;
    int adjacency_row_stride = 2;
    MrfParams mrf;
    int row_min = 0;
    int row_max = -1;  // -1: all rows fed to the MRF
    std::optional<simd::Backend> backend;  // unset: auto-detect

    // Reads the keys documented in configs/pipeline.cfg; unknown keys under
    // the known prefixes raise ConfigError.
    static PipelineConfig from_config(const Config &cfg);
    void validate(const SensorModel &model) const;
};

struct ScanReport {
    std::size_t points = 0;
    std::size_t evictions = 0;
    bool mrf_fallback = false;
    double grid_ms = 0.0;
    double coarse_ms = 0.0;
    double adjacency_ms = 0.0;
    double mrf_ms = 0.0;
    double segment_ms = 0.0;  // range image + stages; excludes I/O and ring assignment
};

struct SegmentResult {
    std::vector<LabelState> labels;
    ScanReport report;
};

// Per-scan segmentation with reusable scratch (solver allocations survive
// between scans). Instances are not thread-safe; use one per worker.
class Pipeline {
  public:
    Pipeline(SensorModel model, PipelineConfig config);

    // The cloud must have rings assigned (assign_rings or synthetic origin).
    SegmentResult segment(const PointCloud &cloud);

    // Grid of the most recent segment() call, for diagnostics dumps.
    const PolarGrid &last_grid() const { return grid_; }
    const SensorModel &model() const { return model_; }
    const PipelineConfig &config() const { return config_; }

  private:
    SensorModel model_;
    PipelineConfig config_;
    PairThresholds thresholds_;
    FlowNetwork net_;
    PolarGrid grid_;
};

}  // namespace groundseg
