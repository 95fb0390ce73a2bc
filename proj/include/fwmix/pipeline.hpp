#pragma once

#include <optional>
#include <string>

#include "fwmix/config.hpp"
#include "fwmix/manifest.hpp"
#include "fwmix/profiles.hpp"

namespace fwmix {

// Thrown when a stage fails numerically; carries the stage for reporting.
struct StageError : std::runtime_error {
    StageError(Stage stage, const std::string& message);
    Stage stage;
};

// In-memory results of a pipeline run, one slot per executed stage.
struct SimulationResult {
    std::optional<ComplexField2D> source_field;
    std::optional<ComplexField2D> masked_field;
    std::optional<ComplexField2D> farfield;
    std::optional<RealField2D> soft_aperture_image;  // intensity x mask
    std::optional<RealField2D> mask_image;
    std::optional<ComplexField2D> focal_field;
    std::optional<RadialProfile> slice_horizontal;
    std::optional<RadialProfile> slice_vertical;
    std::optional<AiryFit> fit_horizontal;
    std::optional<AiryFit> fit_vertical;
    RunManifest manifest;
};

// Runs the configured stages in order, writing per-stage peak-normalized
// images, slice CSVs, fit records, and the manifest into out_dir (created if
// missing). Identical configs produce byte-identical outputs.
SimulationResult run_simulation(const ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace fwmix
