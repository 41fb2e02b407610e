#pragma once

#include <string>
#include <vector>

#include "graphtic/evaluate.hpp"
#include "graphtic/io.hpp"

namespace graphtic {

/// Scatter of accuracy and completion time against signal and ln(noise), one
/// panel per combination, colored per group type with least-squares trend
/// lines. Self-contained SVG. Responses are joined on instance_id; ids with no
/// complexity row raise std::invalid_argument listing the orphans. Empty
/// responses yield a placeholder plot. Points without a defined ln(noise)
/// (noise = 0) are left out of the noise panels.
std::string render_plot_svg(const std::vector<ComplexityRow>& rows,
                            const std::vector<SessionRecord>& records);

}  // namespace graphtic
