#include "fwmix/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fwmix/io.hpp"

namespace fwmix {

namespace {

constexpr std::pair<Stage, const char*> kStageNames[] = {
    {Stage::Source, "source"},         {Stage::Masks, "masks"},
    {Stage::FarField, "far-field"},    {Stage::SoftAperture, "soft-aperture"},
    {Stage::LensFt, "lens-ft"},        {Stage::Slices, "slices"},
    {Stage::Fit, "fit"},
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(key, "expected a number, got '" + value + "'");
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(key, "expected true or false, got '" + value + "'");
}

Stage to_stage(const std::string& key, const std::string& name) {
    for (const auto& [stage, text] : kStageNames)
        if (name == text) return stage;
    throw ConfigError(key, "unknown stage '" + name + "'");
}

std::vector<Stage> to_stages(const std::string& key, const std::string& value) {
    std::vector<Stage> stages;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key, "empty stage name in list");
        stages.push_back(to_stage(key, item));
    }
    return stages;
}

std::string stages_to_string(const std::vector<Stage>& stages) {
    std::string out;
    for (const Stage s : stages) {
        if (!out.empty()) out += ",";
        out += stage_name(s);
    }
    return out;
}

void apply_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "grid.nx") cfg.grid_nx = to_int(key, value);
    else if (key == "grid.ny") cfg.grid_ny = to_int(key, value);
    else if (key == "grid.pitch_um") cfg.grid_pitch_um = to_double(key, value);
    else if (key == "optics.lambda_um") cfg.optics.lambda_um = to_double(key, value);
    else if (key == "optics.z_um") cfg.optics.z_um = to_double(key, value);
    else if (key == "optics.f_um") cfg.optics.f_um = to_double(key, value);
    else if (key == "source.waist_um") cfg.source.waist_um = to_double(key, value);
    else if (key == "source.center_x_um") cfg.source.center_x_um = to_double(key, value);
    else if (key == "source.center_y_um") cfg.source.center_y_um = to_double(key, value);
    else if (key == "aperture.a0_um") cfg.aperture.a0_um = to_double(key, value);
    else if (key == "aperture.a1_um") cfg.aperture.a1_um = to_double(key, value);
    else if (key == "slit.enabled") cfg.slit_enabled = to_bool(key, value);
    else if (key == "slit.width_um") cfg.slit.width_um = to_double(key, value);
    else if (key == "slit.orientation") {
        if (value == "vertical") cfg.slit.orientation = Orientation::Vertical;
        else if (value == "horizontal") cfg.slit.orientation = Orientation::Horizontal;
        else throw ConfigError(key, "expected vertical or horizontal, got '" + value + "'");
    }
    else if (key == "gain.eps_g") cfg.gain.eps_g = to_double(key, value);
    else if (key == "gain.a_d") cfg.gain.a_d = to_double(key, value);
    else if (key == "gain.a_pp") cfg.gain.a_pp = to_double(key, value);
    else if (key == "gain.a_cc") cfg.gain.a_cc = to_double(key, value);
    else if (key == "gain.a_cp") cfg.gain.a_cp = to_double(key, value);
    else if (key == "gain.length_um") cfg.gain.length_um = to_double(key, value);
    else if (key == "gain.which") {
        if (value == "probe") cfg.gain_which = GainBranch::Probe;
        else if (value == "conjugate") cfg.gain_which = GainBranch::Conjugate;
        else throw ConfigError(key, "expected probe or conjugate, got '" + value + "'");
    }
    else if (key == "dk.model") {
        if (value == "radial-quadratic") cfg.dk.kind = DkModelKind::RadialQuadratic;
        else if (value == "external") cfg.dk.kind = DkModelKind::External;
        else throw ConfigError(key, "expected radial-quadratic or external, got '" + value + "'");
    }
    else if (key == "dk.theta_pm_rad") cfg.dk.theta_pm_rad = to_double(key, value);
    else if (key == "dk.kappa") cfg.dk.kappa = to_double(key, value);
    else if (key == "dk.csv") cfg.dk_csv = value;
    else if (key == "stages") cfg.stages = to_stages(key, value);
    else if (key == "slices.width_px") cfg.slices_width_px = to_int(key, value);
    else if (key == "output.raw_scale") cfg.raw_scale = to_bool(key, value);
    else if (key.rfind("metadata.", 0) == 0) {
        const std::string name = key.substr(9);
        if (name.empty()) throw ConfigError(key, "metadata key has no name");
        cfg.metadata[name] = to_double(key, value);
    }
    else throw ConfigError(key, "unknown key");
}

}  // namespace

const char* stage_name(Stage s) {
    for (const auto& [stage, text] : kStageNames)
        if (stage == s) return text;
    return "?";
}

ConfigError::ConfigError(const std::string& key_, const std::string& message)
    : std::runtime_error(key_ + ": " + message), key(key_) {}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "empty key");
        if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
        apply_entry(cfg, key, value);
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    const auto d = [&](const char* key, double v) { out << key << " = " << format_double(v) << "\n"; };
    out << "grid.nx = " << cfg.grid_nx << "\n";
    out << "grid.ny = " << cfg.grid_ny << "\n";
    d("grid.pitch_um", cfg.grid_pitch_um);
    d("optics.lambda_um", cfg.optics.lambda_um);
    d("optics.z_um", cfg.optics.z_um);
    d("optics.f_um", cfg.optics.f_um);
    d("source.waist_um", cfg.source.waist_um);
    d("source.center_x_um", cfg.source.center_x_um);
    d("source.center_y_um", cfg.source.center_y_um);
    d("aperture.a0_um", cfg.aperture.a0_um);
    d("aperture.a1_um", cfg.aperture.a1_um);
    out << "slit.enabled = " << (cfg.slit_enabled ? "true" : "false") << "\n";
    d("slit.width_um", cfg.slit.width_um);
    out << "slit.orientation = "
        << (cfg.slit.orientation == Orientation::Vertical ? "vertical" : "horizontal") << "\n";
    d("gain.eps_g", cfg.gain.eps_g.real());
    d("gain.a_d", cfg.gain.a_d.real());
    d("gain.a_pp", cfg.gain.a_pp.real());
    d("gain.a_cc", cfg.gain.a_cc.real());
    d("gain.a_cp", cfg.gain.a_cp.real());
    d("gain.length_um", cfg.gain.length_um);
    out << "gain.which = " << (cfg.gain_which == GainBranch::Probe ? "probe" : "conjugate") << "\n";
    out << "dk.model = "
        << (cfg.dk.kind == DkModelKind::RadialQuadratic ? "radial-quadratic" : "external") << "\n";
    d("dk.theta_pm_rad", cfg.dk.theta_pm_rad);
    d("dk.kappa", cfg.dk.kappa);
    out << "dk.csv = " << cfg.dk_csv << "\n";
    out << "stages = " << stages_to_string(cfg.stages) << "\n";
    out << "slices.width_px = " << cfg.slices_width_px << "\n";
    out << "output.raw_scale = " << (cfg.raw_scale ? "true" : "false") << "\n";
    for (const auto& [name, value] : cfg.metadata) d(("metadata." + name).c_str(), value);
    return out.str();
}

std::vector<std::string> preset_names() {
    return {"annulus-probe", "annulus-slit", "fwm-probe", "fwm-conjugate"};
}

ScenarioConfig make_preset(const std::string& name) {
    ScenarioConfig cfg;  // field defaults are the reference scenario
    cfg.metadata = {
        {"pump_power_mw", 550.0},
        {"pump_detuning_ghz", 3.024},
        {"cell_temperature_c", 115.0},
    };
    if (name == "annulus-probe") {
        cfg.stages = {Stage::Source, Stage::Masks, Stage::FarField, Stage::Slices, Stage::Fit};
    } else if (name == "annulus-slit") {
        cfg.stages = {Stage::Source, Stage::Masks, Stage::FarField, Stage::Slices, Stage::Fit};
        cfg.slit_enabled = true;
    } else if (name == "fwm-probe") {
        cfg.stages = {Stage::Source, Stage::Masks, Stage::FarField, Stage::SoftAperture,
                      Stage::LensFt, Stage::Slices, Stage::Fit};
        cfg.gain_which = GainBranch::Probe;
    } else if (name == "fwm-conjugate") {
        cfg.stages = {Stage::Source, Stage::Masks, Stage::FarField, Stage::SoftAperture,
                      Stage::LensFt, Stage::Slices, Stage::Fit};
        cfg.gain_which = GainBranch::Conjugate;
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "'");
    }
    return cfg;
}

void validate(const ScenarioConfig& cfg) {
    try {
        make_grid(cfg.grid_nx, cfg.grid_ny, cfg.grid_pitch_um, Plane::Aperture);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
    try {
        validate(cfg.optics);
        validate(cfg.source);
        validate(cfg.aperture);
        if (cfg.slit_enabled) validate(cfg.slit);
        validate(cfg.gain);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config", e.what());
    }
    if (cfg.slices_width_px < 1) throw ConfigError("slices.width_px", "must be at least 1");
    if (cfg.dk.kind == DkModelKind::External && cfg.dk_csv.empty())
        throw ConfigError("dk.csv", "external mismatch model needs a csv matrix");

    const auto pos = [](Stage s) {
        for (std::size_t n = 0; n < std::size(kStageNames); ++n)
            if (kStageNames[n].first == s) return n;
        return std::size(kStageNames);
    };
    for (std::size_t n = 1; n < cfg.stages.size(); ++n)
        if (pos(cfg.stages[n]) <= pos(cfg.stages[n - 1]))
            throw ConfigError("stages", "stages must follow the canonical order without repeats");

    const auto has = [&](Stage s) {
        return std::find(cfg.stages.begin(), cfg.stages.end(), s) != cfg.stages.end();
    };
    const auto need = [&](Stage stage, Stage dep) {
        if (has(stage) && !has(dep))
            throw ConfigError("stages", std::string(stage_name(stage)) + " requires " + stage_name(dep));
    };
    need(Stage::Masks, Stage::Source);
    need(Stage::FarField, Stage::Source);
    need(Stage::SoftAperture, Stage::FarField);
    need(Stage::LensFt, Stage::FarField);
    need(Stage::Slices, Stage::FarField);
    need(Stage::Fit, Stage::Slices);
}

}  // namespace fwmix
