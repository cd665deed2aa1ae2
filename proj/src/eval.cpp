#include "groundseg/eval.hpp"

#include <algorithm>
#include <ostream>

#include "groundseg/errors.hpp"

namespace groundseg {

ScanMetrics score_scan(const std::vector<LabelState> &pred, const std::vector<ClassLabel> &truth,
                       std::optional<double> runtime_ms) {
    if (pred.size() != truth.size()) throw UsageError("score_scan: pred/truth length mismatch");

    ScanMetrics m;
    m.runtime_ms = runtime_ms;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool pred_ground = base_label(pred[i]) == LabelState::Ground;
        const bool truth_ground = truth[i] == ClassLabel::Ground;
        if (pred_ground && truth_ground) ++m.tp_g;
        if (pred_ground && !truth_ground) ++m.fp_g;
        if (!pred_ground && truth_ground) ++m.fn_g;
        if (truth[i] == ClassLabel::KeyObstacle) {
            if (!pred_ground)
                ++m.tp_o;
            else
                ++m.fn_o;
        }
    }
    if (m.tp_g + m.fp_g + m.fn_g > 0)
        m.iou_g = static_cast<double>(m.tp_g) / static_cast<double>(m.tp_g + m.fp_g + m.fn_g);
    if (m.tp_o + m.fn_o > 0)
        m.recall_o = static_cast<double>(m.tp_o) / static_cast<double>(m.tp_o + m.fn_o);
    return m;
}

namespace {

void accumulate(MetricSummary &summary, std::optional<double> value, double &sum) {
    if (!value) return;
    ++summary.count;
    sum += *value;
    summary.min = summary.min ? std::min(*summary.min, *value) : *value;
    summary.max = summary.max ? std::max(*summary.max, *value) : *value;
}

void finish(MetricSummary &summary, double sum) {
    if (summary.count > 0) summary.mean = sum / static_cast<double>(summary.count);
}

void put(std::ostream &out, std::optional<double> v) {
    if (v) out << *v;
}

}  // namespace

SequenceSummary aggregate(const std::vector<ScanMetrics> &scans) {
    if (scans.empty()) throw UsageError("aggregate: empty sequence");
    SequenceSummary s;
    s.scans = scans.size();
    double iou_sum = 0.0, recall_sum = 0.0, runtime_sum = 0.0;
    for (const ScanMetrics &m : scans) {
        accumulate(s.iou_g, m.iou_g, iou_sum);
        accumulate(s.recall_o, m.recall_o, recall_sum);
        accumulate(s.runtime_ms, m.runtime_ms, runtime_sum);
    }
    finish(s.iou_g, iou_sum);
    finish(s.recall_o, recall_sum);
    finish(s.runtime_ms, runtime_sum);
    return s;
}

void write_metrics_csv(std::ostream &out, const std::vector<std::string> &scan_ids,
                       const std::vector<ScanMetrics> &scans) {
    if (scan_ids.size() != scans.size()) throw UsageError("write_metrics_csv: id/metric count mismatch");
    out << "scan_id,iou_g,recall_o,runtime_ms\n";
    for (std::size_t i = 0; i < scans.size(); ++i) {
        out << scan_ids[i] << ',';
        put(out, scans[i].iou_g);
        out << ',';
        put(out, scans[i].recall_o);
        out << ',';
        put(out, scans[i].runtime_ms);
        out << '\n';
    }
    if (!scans.empty()) {
        const SequenceSummary s = aggregate(scans);
        out << "mean,";
        put(out, s.iou_g.mean);
        out << ',';
        put(out, s.recall_o.mean);
        out << ',';
        put(out, s.runtime_ms.mean);
        out << '\n';
    }
}

}  // namespace groundseg
