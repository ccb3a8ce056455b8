#include "wishart/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "wishart/csvio.hpp"

namespace wishart::xp {

namespace {
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
}

void write_svg_plot(const std::string& csv_path, const std::string& svg_path) {
    const Series s = read_csv(csv_path, "plot");
    if (s.rows.empty() || s.columns.size() < 2) return;

    const double W = 680, H = 440, mL = 60, mR = 16, mT = 18, mB = 42;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& r : s.rows) {
        xmin = std::min(xmin, r[0]);
        xmax = std::max(xmax, r[0]);
        for (size_t c = 1; c < r.size(); ++c) {
            if (!std::isfinite(r[c])) continue;
            ymin = std::min(ymin, r[c]);
            ymax = std::max(ymax, r[c]);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!(ymax > ymin)) ymax = ymin + 1;
    const auto X = [&](double x) { return mL + (x - xmin) / (xmax - xmin) * (W - mL - mR); };
    const auto Y = [&](double y) { return H - mB - (y - ymin) / (ymax - ymin) * (H - mT - mB); };

    std::ofstream f(svg_path, std::ios::binary);
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    f << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    f << "<rect x=\"" << mL << "\" y=\"" << mT << "\" width=\"" << W - mL - mR << "\" height=\""
      << H - mT - mB << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (size_t c = 1; c < s.columns.size(); ++c) {
        f << "<polyline fill=\"none\" stroke=\"" << kColors[(c - 1) % 6]
          << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& r : s.rows)
            if (c < r.size() && std::isfinite(r[c])) f << X(r[0]) << "," << Y(r[c]) << " ";
        f << "\"/>\n";
        f << "<text x=\"" << mL + 8 << "\" y=\"" << mT + 16 + 16 * (c - 1) << "\" fill=\""
          << kColors[(c - 1) % 6] << "\" font-size=\"12\">" << s.columns[c] << "</text>\n";
    }
    f << "<text x=\"" << (W / 2) << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">" << s.columns[0] << "</text>\n";
    f << "</svg>\n";
}

} // namespace wishart::xp
