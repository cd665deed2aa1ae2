#pragma once

#include <iosfwd>
#include <vector>

#include "groundseg/point_cloud.hpp"

namespace groundseg {

// ASCII PLY with per-vertex color: ground pink (255,192,203), obstacle red
// (255,0,0). Labels are reduced with base_label().
void write_ply(std::ostream &out, const PointCloud &cloud, const std::vector<LabelState> &labels);

}  // namespace groundseg
