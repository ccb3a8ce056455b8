#pragma once

#include <string>
#include <vector>

#include "wishart/experiments.hpp"

namespace wishart::xp {

// 17 significant digits (round-trip exact for doubles), '.' decimal
// separator, LF line endings; byte-identical across re-runs.
std::string format_double(double v);
std::string render_csv(const Series& s);
void write_csv(const std::string& path, const Series& s);

// parsed back for plotting
Series read_csv(const std::string& path, const std::string& name);

} // namespace wishart::xp
