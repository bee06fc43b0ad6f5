#pragma once

#include "stylo/stats.hpp"

#include <array>
#include <string>
#include <vector>

namespace stylo::svg {

/// One bar per group with a whisker of +/- one standard error.
struct BarSeries {
    std::string label;
    double mean = 0.0;
    double standard_error = 0.0;  // 0 draws no whisker
};

std::string bar_chart(const std::string& title, const std::string& y_label, const std::vector<BarSeries>& bars);

/// One box per group: whiskers at min/max, box from Q1 to Q3, median line.
struct BoxSeries {
    std::string label;
    Descriptive summary;
};

std::string box_plot(const std::string& title, const std::string& y_label, const std::vector<BoxSeries>& boxes);

struct ScatterGroup {
    std::string label;
    std::vector<std::array<double, 2>> points;
};

/// Groups are coloured in the given order from a fixed palette and listed in
/// a legend.
std::string scatter(const std::string& title, const std::string& x_label, const std::string& y_label,
                    const std::vector<ScatterGroup>& groups);

/// Escapes &, <, >, " and ' for text and attribute content.
std::string escape(const std::string& text);

}  // namespace stylo::svg
