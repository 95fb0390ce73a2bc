#include "fwmix/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fwmix/gain.hpp"
#include "fwmix/io.hpp"
#include "fwmix/propagation.hpp"
#include "fwmix/sources.hpp"

namespace fwmix {

namespace {

namespace fs = std::filesystem;

RealField2D load_dk_matrix(const std::string& path, const GridSpec& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open mismatch matrix");
    RealField2D map;
    map.grid = grid;
    map.samples.reserve(grid.size());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string cell;
        int cols = 0;
        while (std::getline(ss, cell, ',')) {
            map.samples.push_back(std::stod(cell));
            ++cols;
        }
        if (cols != grid.nx)
            throw std::runtime_error(path + ": expected " + std::to_string(grid.nx) +
                                     " columns, got " + std::to_string(cols));
        ++rows;
    }
    if (rows != grid.ny)
        throw std::runtime_error(path + ": expected " + std::to_string(grid.ny) + " rows, got " +
                                 std::to_string(rows));
    return map;
}

struct OutputSink {
    fs::path dir;
    RunManifest& manifest;
    KvRecord scales;
    bool record_scales = false;

    std::string full(const std::string& name) const { return (dir / name).string(); }

    void track(const std::string& name) {
        manifest.files.push_back(ManifestEntry{
            name, sha256_file(full(name)),
            static_cast<std::uint64_t>(fs::file_size(dir / name))});
    }

    void image(const std::string& name, const RealField2D& img) {
        write_pgm16(full(name), img);
        track(name);
        if (record_scales) {
            const double peak = *std::max_element(img.samples.begin(), img.samples.end());
            scales.emplace_back(name, format_double(peak));
        }
    }

    void profile(const std::string& name, const RadialProfile& p) {
        write_profile_csv(full(name), p);
        track(name);
    }

    void record(const std::string& name, const KvRecord& rec) {
        write_kv_record(full(name), rec);
        track(name);
    }
};

template <typename Fn>
auto guarded(Stage stage, Fn&& fn) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

}  // namespace

StageError::StageError(Stage stage_, const std::string& message)
    : std::runtime_error(std::string(stage_name(stage_)) + ": " + message), stage(stage_) {}

SimulationResult run_simulation(const ScenarioConfig& cfg, const std::string& out_dir) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();

    fs::create_directories(out_dir);
    SimulationResult result;
    OutputSink sink{out_dir, result.manifest, {}, cfg.raw_scale};

    {
        std::istringstream snapshot(dump_config(cfg));
        std::string line;
        while (std::getline(snapshot, line)) {
            const auto sep = line.find(" = ");
            if (sep != std::string::npos)
                result.manifest.config_snapshot.emplace_back(line.substr(0, sep),
                                                             line.substr(sep + 3));
        }
    }

    const auto has = [&](Stage s) {
        return std::find(cfg.stages.begin(), cfg.stages.end(), s) != cfg.stages.end();
    };

    // The field handed from stage to stage; after the soft aperture it carries
    // the mask as sqrt(mask) on the amplitude so intensities stay consistent.
    ComplexField2D working;

    if (has(Stage::Source)) {
        guarded(Stage::Source, [&] {
            const GridSpec grid =
                make_grid(cfg.grid_nx, cfg.grid_ny, cfg.grid_pitch_um, Plane::Aperture);
            result.source_field = gaussian_field(grid, cfg.source);
            working = *result.source_field;
            sink.image("source.pgm", intensity(working));
        });
    }

    if (has(Stage::Masks)) {
        guarded(Stage::Masks, [&] {
            RealField2D mask = annulus_mask(working.grid, cfg.aperture);
            if (cfg.slit_enabled) {
                const RealField2D slit = slit_mask(working.grid, cfg.slit);
                for (std::size_t n = 0; n < mask.samples.size(); ++n)
                    mask.samples[n] *= slit.samples[n];
            }
            result.masked_field = ComplexField2D{working.grid, working.samples};
            for (std::size_t n = 0; n < mask.samples.size(); ++n)
                result.masked_field->samples[n] *= mask.samples[n];
            working = *result.masked_field;
            sink.image("masks.pgm", mask);
        });
    }

    if (has(Stage::FarField)) {
        guarded(Stage::FarField, [&] {
            result.farfield = fraunhofer_numeric(working, cfg.optics, {}).field;
            working = *result.farfield;
            sink.image("far-field.pgm", intensity(working));
        });
    }

    if (has(Stage::SoftAperture)) {
        guarded(Stage::SoftAperture, [&] {
            DkModel model = cfg.dk;
            if (model.kind == DkModelKind::External)
                model.external = load_dk_matrix(cfg.dk_csv, working.grid);
            const PhaseMismatchMap dk_map = build_dk_map(working.grid, model, cfg.optics);
            const RealField2D mask = soft_aperture_mask(dk_map, cfg.gain, cfg.gain_which);
            result.mask_image = mask;
            result.soft_aperture_image = apply_soft_aperture(intensity(working), mask);
            for (std::size_t n = 0; n < working.samples.size(); ++n)
                working.samples[n] *= std::sqrt(mask.samples[n]);
            sink.image("soft-aperture.pgm", *result.soft_aperture_image);
            sink.image("mask.pgm", mask);
        });
    }

    if (has(Stage::LensFt)) {
        guarded(Stage::LensFt, [&] {
            result.focal_field = lens_ft(working, cfg.optics, {});
            working = *result.focal_field;
            sink.image("focal.pgm", intensity(working));
        });
    }

    if (has(Stage::Slices)) {
        guarded(Stage::Slices, [&] {
            const RealField2D image =
                result.focal_field    ? intensity(*result.focal_field)
                : result.soft_aperture_image ? *result.soft_aperture_image
                                             : intensity(*result.farfield);
            const int cx = image.grid.nx / 2;
            const int cy = image.grid.ny / 2;
            result.slice_horizontal =
                extract_slice(image, Orientation::Horizontal, cx, cy, cfg.slices_width_px);
            result.slice_vertical =
                extract_slice(image, Orientation::Vertical, cx, cy, cfg.slices_width_px);
            sink.profile("slice-horizontal.csv", *result.slice_horizontal);
            sink.profile("slice-vertical.csv", *result.slice_vertical);
        });
    }

    if (has(Stage::Fit)) {
        guarded(Stage::Fit, [&] {
            result.fit_horizontal = fit_airy(*result.slice_horizontal, {});
            result.fit_vertical = fit_airy(*result.slice_vertical, {});
            sink.record("fit-horizontal.txt", fit_record(*result.fit_horizontal));
            sink.record("fit-vertical.txt", fit_record(*result.fit_vertical));
        });
    }

    if (cfg.raw_scale && !sink.scales.empty()) sink.record("scales.txt", sink.scales);

    result.manifest.total_ms = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
    write_manifest(sink.full("manifest.txt"), result.manifest);
    return result;
}

}  // namespace fwmix
