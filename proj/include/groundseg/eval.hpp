#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "groundseg/point_cloud.hpp"

namespace groundseg {

// Ground IoU and key-obstacle recall for one scan. Metrics with an undefined
// denominator are absent rather than zero.
struct ScanMetrics {
    std::size_t tp_g = 0;
    std::size_t fp_g = 0;
    std::size_t fn_g = 0;
    std::size_t tp_o = 0;
    std::size_t fn_o = 0;
    std::optional<double> iou_g;
    std::optional<double> recall_o;
    std::optional<double> runtime_ms;
};

// Prediction states are reduced with base_label(); truth KeyObstacle points
// predicted Obstacle count toward recall, and any non-ground truth predicted
// Ground counts as a ground false positive.
ScanMetrics score_scan(const std::vector<LabelState> &pred, const std::vector<ClassLabel> &truth,
                       std::optional<double> runtime_ms = std::nullopt);

struct MetricSummary {
    std::optional<double> mean, min, max;
    std::size_t count = 0;  // scans where the metric was defined
};

struct SequenceSummary {
    MetricSummary iou_g;
    MetricSummary recall_o;
    MetricSummary runtime_ms;
    std::size_t scans = 0;
};

// Throws UsageError on an empty sequence. Undefined per-scan metrics are
// excluded from the statistics.
SequenceSummary aggregate(const std::vector<ScanMetrics> &scans);

// CSV report: header, one row per scan (scan_id,iou_g,recall_o,runtime_ms,
// undefined fields empty), then a summary row.
void write_metrics_csv(std::ostream &out, const std::vector<std::string> &scan_ids,
                       const std::vector<ScanMetrics> &scans);

}  // namespace groundseg
