#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace dlm {

// Fixed 17-significant-digit rendering: round-trips doubles exactly and keeps
// repeated runs byte-identical.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << '\n';
        }
        return out.str();
    }
};

inline nlohmann::ordered_json report_meta(const std::string& invocation, double seconds) {
    nlohmann::ordered_json meta;
    meta["version"] = "1.0.0";
    meta["invocation"] = invocation;
    meta["seconds"] = seconds;
    return meta;
}

inline void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
}

} // namespace dlm
