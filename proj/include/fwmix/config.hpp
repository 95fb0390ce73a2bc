#pragma once

#include <map>
#include <string>
#include <vector>

#include "fwmix/field.hpp"
#include "fwmix/gain.hpp"
#include "fwmix/sources.hpp"

namespace fwmix {

// Pipeline stages in canonical order. A scenario runs any subsequence.
enum class Stage { Source, Masks, FarField, SoftAperture, LensFt, Slices, Fit };

const char* stage_name(Stage s);

// Thrown by config parsing/validation; `key` names the offending entry.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& key, const std::string& message);
    std::string key;
};

struct ScenarioConfig {
    int grid_nx = 1024;
    int grid_ny = 1024;
    double grid_pitch_um = 4.0;

    OpticalConfig optics;
    GaussianSpec source;
    AnnulusSpec aperture;

    bool slit_enabled = false;
    SlitSpec slit;

    GainParameters gain;
    GainBranch gain_which = GainBranch::Conjugate;
    DkModel dk;
    std::string dk_csv;  // External model input, loaded at run time

    std::vector<Stage> stages;
    int slices_width_px = 1;
    bool raw_scale = false;  // export unnormalized images, scale in manifest

    // Inert experimental context, carried into the manifest only.
    std::map<std::string, double> metadata;
};

// Flat dotted `key = value` text, '#' comments, unknown keys rejected.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string dump_config(const ScenarioConfig& cfg);

// Built-in scenarios: annulus-probe, annulus-slit, fwm-probe, fwm-conjugate.
std::vector<std::string> preset_names();
ScenarioConfig make_preset(const std::string& name);  // throws ConfigError on unknown name

// Stage list must be a subsequence of the canonical order with dependencies
// satisfied (masks/far-field need source, soft-aperture/lens-ft need
// far-field, fit needs slices). Throws ConfigError otherwise.
void validate(const ScenarioConfig& cfg);

}  // namespace fwmix
