#include "lrkitaev/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lrkitaev/error.hpp"

namespace lrk::csv {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Writer::Writer(std::ostream& out, std::vector<std::string> header)
    : out_(out), header_(std::move(header)) {
    row(header_);
}

void Writer::row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) throw DimensionError("CSV row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].find_first_of(",\n") != std::string::npos)
            throw IoError("CSV cell contains a separator: " + cells[i]);
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw IoError("CSV write failed");
}

void Writer::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row(cells);
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    Table t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << contents;
    if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace lrk::csv
