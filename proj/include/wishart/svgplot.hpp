#pragma once

#include <string>

#include "wishart/experiments.hpp"

namespace wishart::xp {

// Minimal line plot: first column is x, every further column a polyline.
// Built from an already-written CSV so plots never feed back into data.
void write_svg_plot(const std::string& csv_path, const std::string& svg_path);

} // namespace wishart::xp
