#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nmk {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;  // draw circles at data points
};

/// Standalone line plot: axes with ticks, one polyline per series, legend
/// and a caption line. No plotting dependency; fidelity target is data
/// correctness, not typography.
void write_line_plot_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::string& caption,
                         const std::vector<SvgSeries>& series);

}  // namespace nmk
