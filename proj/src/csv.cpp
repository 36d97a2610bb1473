#include "convdist/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "convdist/errors.hpp"

namespace convdist {

std::string format_g12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string render_csv(std::uint64_t config_hash, std::uint64_t seed,
                       const std::string& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    char meta[128];
    std::snprintf(meta, sizeof(meta), "# config=%016llx seed=%llu version=%s\n",
                  static_cast<unsigned long long>(config_hash),
                  static_cast<unsigned long long>(seed), kToolVersion);
    out += meta;
    out += header;
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw config_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace convdist
