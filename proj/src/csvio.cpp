#include "wishart/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wishart/errors.hpp"

namespace wishart::xp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const Series& s) {
    std::string out;
    for (size_t c = 0; c < s.columns.size(); ++c) {
        if (c) out += ',';
        out += s.columns[c];
    }
    out += '\n';
    for (const auto& row : s.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, const Series& s) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw input_domain_error("write_csv: cannot open " + path);
    f << render_csv(s);
}

Series read_csv(const std::string& path, const std::string& name) {
    std::ifstream f(path);
    if (!f) throw input_domain_error("read_csv: cannot open " + path);
    Series s;
    s.name = name;
    std::string line;
    if (std::getline(f, line)) {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) s.columns.push_back(cell);
    }
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        s.rows.push_back(std::move(row));
    }
    return s;
}

} // namespace wishart::xp
