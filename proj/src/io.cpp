#include "fwmix/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fwmix {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) fail(path, "cannot open for writing");
    return out;
}

double parse_double(const std::string& path, std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) fail(path, "malformed number '" + std::string(text) + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_pgm16(const std::string& path, const RealField2D& image) {
    const auto& g = image.grid;
    if (g.nx <= 0 || g.ny <= 0 || image.samples.size() != g.size())
        throw std::invalid_argument("image shape is inconsistent");
    double peak = 0.0;
    for (double v : image.samples) peak = std::max(peak, v);
    if (peak <= 0.0) peak = 1.0;

    auto out = open_out(path, std::ios::binary);
    out << "P5\n" << g.nx << " " << g.ny << "\n65535\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(g.nx) * 2);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double v = image.samples[static_cast<std::size_t>(j) * g.nx + i];
            long code = std::lround(std::max(v, 0.0) / peak * 65535.0);
            code = std::clamp(code, 0L, 65535L);
            row[static_cast<std::size_t>(i) * 2] = static_cast<unsigned char>(code >> 8);
            row[static_cast<std::size_t>(i) * 2 + 1] = static_cast<unsigned char>(code & 0xff);
        }
        out.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!out) fail(path, "write failed");
}

RealField2D read_pgm16(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::string magic;
    long width = 0, height = 0, maxval = 0;
    in >> magic >> width >> height >> maxval;
    if (!in || magic != "P5") fail(path, "not a binary graymap");
    if (width <= 0 || height <= 0) fail(path, "bad dimensions");
    if (maxval != 65535) fail(path, "expected 16-bit maxval 65535");
    in.get();  // single whitespace byte after the header

    RealField2D image;
    image.grid.nx = static_cast<int>(width);
    image.grid.ny = static_cast<int>(height);
    image.grid.pitch_x = 1.0;
    image.grid.pitch_y = 1.0;
    image.samples.resize(static_cast<std::size_t>(width) * height);
    std::vector<unsigned char> raw(image.samples.size() * 2);
    in.read(reinterpret_cast<char*>(raw.data()), raw.size());
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) fail(path, "truncated pixel data");
    for (std::size_t n = 0; n < image.samples.size(); ++n)
        image.samples[n] = raw[n * 2] * 256.0 + raw[n * 2 + 1];
    return image;
}

void write_profile_csv(const std::string& path, const RadialProfile& profile) {
    if (profile.positions.size() != profile.intensities.size())
        throw std::invalid_argument("profile arrays differ in length");
    auto out = open_out(path);
    out << (profile.unit == ProfileUnit::Micrometers ? "# position_um,intensity\n"
                                                     : "# position_px,intensity\n");
    for (std::size_t n = 0; n < profile.positions.size(); ++n)
        out << format_double(profile.positions[n]) << ","
            << format_double(profile.intensities[n]) << "\n";
    if (!out) fail(path, "write failed");
}

RadialProfile read_profile_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    std::string line;
    if (!std::getline(in, line)) fail(path, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    RadialProfile profile;
    if (line == "# position_um,intensity")
        profile.unit = ProfileUnit::Micrometers;
    else if (line == "# position_px,intensity")
        profile.unit = ProfileUnit::Pixels;
    else
        fail(path, "missing profile header line");

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) fail(path, "expected 'position,intensity' row");
        const double pos = parse_double(path, std::string_view(line).substr(0, comma));
        const double val = parse_double(path, std::string_view(line).substr(comma + 1));
        if (!profile.positions.empty() && pos <= profile.positions.back())
            fail(path, "positions must be strictly increasing");
        if (val < 0.0) fail(path, "intensities must be non-negative");
        profile.positions.push_back(pos);
        profile.intensities.push_back(val);
    }
    return profile;
}

void write_kv_record(const std::string& path, const KvRecord& record) {
    auto out = open_out(path);
    for (const auto& [key, value] : record) out << key << " = " << value << "\n";
    if (!out) fail(path, "write failed");
}

KvRecord fit_record(const AiryFit& fit) {
    return {
        {"eps_ratio", format_double(fit.eps_ratio)},
        {"i0", format_double(fit.i0)},
        {"scale", format_double(fit.scale)},
        {"center", format_double(fit.center)},
        {"residual", format_double(fit.residual)},
        {"iterations", std::to_string(fit.iterations)},
    };
}

}  // namespace fwmix
