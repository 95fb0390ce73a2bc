#include "fwmix/manifest.hpp"

#include <openssl/evp.h>

#include <cstdint>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "fwmix/io.hpp"

namespace fwmix {

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open for hashing");

    using CtxPtr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;
    CtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 init failed");

    char buf[65536];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize got = in.gcount();
        if (got > 0 && EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(got)) != 1)
            throw std::runtime_error("sha256 update failed");
    }

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw std::runtime_error("sha256 final failed");

    static const char* hex = "0123456789abcdef";
    std::string out(len * 2, '0');
    for (unsigned int n = 0; n < len; ++n) {
        out[n * 2] = hex[digest[n] >> 4];
        out[n * 2 + 1] = hex[digest[n] & 0xf];
    }
    return out;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    for (const auto& [key, value] : manifest.config_snapshot)
        out << "config." << key << " = " << value << "\n";
    for (const ManifestEntry& entry : manifest.files) {
        out << "file." << entry.name << ".sha256 = " << entry.sha256 << "\n";
        out << "file." << entry.name << ".bytes = " << entry.bytes << "\n";
    }
    out << "timing.total_ms = " << format_double(manifest.total_ms) << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<ManifestEntry> read_manifest_entries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::vector<ManifestEntry> entries;
    auto find = [&](const std::string& name) -> ManifestEntry& {
        for (ManifestEntry& e : entries)
            if (e.name == name) return e;
        entries.push_back(ManifestEntry{name, {}, 0});
        return entries.back();
    };
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("file.", 0) != 0) continue;
        const auto sep = line.find(" = ");
        if (sep == std::string::npos) throw std::runtime_error(path + ": malformed manifest line");
        const std::string key = line.substr(5, sep - 5);
        const std::string value = line.substr(sep + 3);
        if (key.size() > 7 && key.compare(key.size() - 7, 7, ".sha256") == 0) {
            find(key.substr(0, key.size() - 7)).sha256 = value;
        } else if (key.size() > 6 && key.compare(key.size() - 6, 6, ".bytes") == 0) {
            find(key.substr(0, key.size() - 6)).bytes = std::stoull(value);
        } else {
            throw std::runtime_error(path + ": unexpected manifest key 'file." + key + "'");
        }
    }
    return entries;
}

}  // namespace fwmix
