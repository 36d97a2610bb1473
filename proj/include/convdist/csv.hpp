#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace convdist {

inline constexpr const char* kToolVersion = "0.1.0";

// numeric cell format of result files: 12 significant digits
std::string format_g12(double v);

// One metadata comment line (config hash, master seed, tool version), a
// header row, then data rows. Deterministic bytes for a fixed input.
std::string render_csv(std::uint64_t config_hash, std::uint64_t seed,
                       const std::string& header,
                       const std::vector<std::vector<std::string>>& rows);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace convdist
