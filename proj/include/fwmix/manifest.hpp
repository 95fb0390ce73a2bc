#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fwmix {

std::string sha256_file(const std::string& path);  // lowercase hex

struct ManifestEntry {
    std::string name;  // path relative to the output directory
    std::string sha256;
    std::uint64_t bytes = 0;
};

struct RunManifest {
    std::vector<std::pair<std::string, std::string>> config_snapshot;
    std::vector<ManifestEntry> files;
    double total_ms = 0.0;
};

// Key-value text: config.* lines, file.<name>.sha256/.bytes lines, timing.
void write_manifest(const std::string& path, const RunManifest& manifest);

// Parses the file entries back out (used for determinism checks).
std::vector<ManifestEntry> read_manifest_entries(const std::string& path);

}  // namespace fwmix
