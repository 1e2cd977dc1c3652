#pragma once

// Report serialization helpers: deterministic double formatting, CSV
// emission (header row, '.' decimal, LF newlines), atomic file writes
// (write-then-rename).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "efg/errors.hpp"

namespace efg {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("IoError", "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("IoError", "short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

inline std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

} // namespace efg
