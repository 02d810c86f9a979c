#include "output.hpp"

#include <fstream>
#include <sstream>

#include "qcmap/errors.hpp"
#include "qcmap/version.hpp"

namespace qcmap::cli {

namespace {

std::string cell(const nlohmann::json& rec, const std::string& col) {
    if (!rec.contains(col) || rec[col].is_null()) return ""; // masked cell
    const auto& v = rec[col];
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream o;
    o.precision(12);
    if (v.is_number_float()) o << v.get<double>();
    else o << v.dump();
    return o.str();
}

std::string strip_ext(const std::string& p) {
    const auto dot = p.find_last_of('.');
    const auto slash = p.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return p;
    return p.substr(0, dot);
}

void write_gnuplot(const OutputDoc& doc, const std::string& csv_path) {
    const std::string gp_path = strip_ext(csv_path) + ".gp";
    std::ofstream out(gp_path);
    if (!out) throw Error("cannot write " + gp_path);
    out << "# gnuplot companion for " << csv_path << "\n";
    out << "set datafile separator ','\n";
    out << "set datafile commentschars '#'\n";
    out << "set xlabel '" << doc.columns[doc.plot_x] << "'\n";
    out << "set key outside\n";
    out << "plot ";
    bool first = true;
    for (std::size_t c = 0; c < doc.columns.size(); ++c) {
        if (static_cast<int>(c) == doc.plot_x) continue;
        if (!first) out << ", \\\n     ";
        out << (first ? "'" + csv_path + "'" : "''") << " using " << doc.plot_x + 1 << ":"
            << c + 1 << " with linespoints title '" << doc.columns[c] << "'";
        first = false;
    }
    out << "\n";
}

} // namespace

std::string write_output(const OutputDoc& doc, std::string path, const std::string& format) {
    if (format == "json") {
        if (strip_ext(path) == path) path += ".json";
        nlohmann::json j;
        j["qcmap_version"] = kVersion;
        for (const auto& c : doc.comments) j["info"].push_back(c);
        j["columns"] = doc.columns;
        j["records"] = doc.records;
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path);
        out << j.dump(2) << "\n";
        return path;
    }

    if (strip_ext(path) == path) path += ".csv";
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# qcmap v" << kVersion << "\n";
    for (const auto& c : doc.comments) out << "# " << c << "\n";
    out << "# ";
    for (std::size_t c = 0; c < doc.columns.size(); ++c)
        out << (c ? "," : "") << doc.columns[c];
    out << "\n";
    for (const auto& rec : doc.records) {
        for (std::size_t c = 0; c < doc.columns.size(); ++c)
            out << (c ? "," : "") << cell(rec, doc.columns[c]);
        out << "\n";
    }
    out.close();
    if (doc.emit_plot && doc.columns.size() > 1) write_gnuplot(doc, path);
    return path;
}

} // namespace qcmap::cli
