#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qcmap::cli {

// One tabular result set. CSV gets '#'-prefixed header comments (version
// stamp first) and a companion gnuplot script; JSON mirrors the records.
struct OutputDoc {
    std::vector<std::string> comments; // without the leading '# '
    std::vector<std::string> columns;
    std::vector<nlohmann::json> records; // objects keyed by column name
    int plot_x = 0;                      // column index plotted as abscissa
    bool emit_plot = true;
};

// Writes <path> (.csv or .json per format) plus <path>.gp next to a CSV.
// Returns the path written. I/O failures throw qcmap::Error with the path.
std::string write_output(const OutputDoc& doc, std::string path, const std::string& format);

} // namespace qcmap::cli
