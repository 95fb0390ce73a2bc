#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fwmix/field.hpp"
#include "fwmix/profiles.hpp"

namespace fwmix {

// 16-bit binary portable graymap (P5, maxval 65535), big-endian samples.
// Values map linearly from [0, peak] to [0, 65535] with round-half-up; an
// all-zero image divides by one. Byte output is deterministic.
void write_pgm16(const std::string& path, const RealField2D& image);

// Round-trip reader for the writer above. Throws on malformed input.
RealField2D read_pgm16(const std::string& path);

// Two-column CSV with a `# position_um,intensity` header (position_px for
// pixel-unit profiles).
void write_profile_csv(const std::string& path, const RadialProfile& profile);
RadialProfile read_profile_csv(const std::string& path);

// Flat `key = value` records, one per line, written in the given order.
using KvRecord = std::vector<std::pair<std::string, std::string>>;

void write_kv_record(const std::string& path, const KvRecord& record);

KvRecord fit_record(const AiryFit& fit);

std::string format_double(double v);  // shortest round-trip form

}  // namespace fwmix
