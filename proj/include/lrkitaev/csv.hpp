#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lrk::csv {

// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

// Comma-separated, '.' decimal, LF line endings, header first.
class Writer {
public:
    Writer(std::ostream& out, std::vector<std::string> header);

    // Cells already formatted; width must match the header.
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& values);

    std::size_t columns() const { return header_.size(); }

private:
    std::ostream& out_;
    std::vector<std::string> header_;
};

// Parses a file written by Writer back into header and string cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
Table read_file(const std::string& path);

// Writes text to path, throwing IoError on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace lrk::csv
