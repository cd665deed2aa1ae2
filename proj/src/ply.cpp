#include "groundseg/ply.hpp"

#include <ostream>

#include "groundseg/errors.hpp"

namespace groundseg {

void write_ply(std::ostream &out, const PointCloud &cloud, const std::vector<LabelState> &labels) {
    if (labels.size() != cloud.size()) throw UsageError("write_ply: labels/cloud size mismatch");

    out << "ply\n"
        << "format ascii 1.0\n"
        << "element vertex " << cloud.size() << "\n"
        << "property float x\n"
        << "property float y\n"
        << "property float z\n"
        << "property uchar red\n"
        << "property uchar green\n"
        << "property uchar blue\n"
        << "end_header\n";

    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const bool ground = base_label(labels[i]) == LabelState::Ground;
        out << static_cast<float>(cloud.x[i]) << ' ' << static_cast<float>(cloud.y[i]) << ' '
            << static_cast<float>(cloud.z[i]) << ' ';
        if (ground)
            out << "255 192 203\n";  // pink
        else
            out << "255 0 0\n";  // red
    }
}

}  // namespace groundseg
