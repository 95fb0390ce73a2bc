#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>

#include "fwmix/config.hpp"
#include "fwmix/io.hpp"
#include "fwmix/pipeline.hpp"
#include "fwmix/profiles.hpp"

namespace {

void print_record(const fwmix::KvRecord& record) {
    for (const auto& [key, value] : record) std::cout << key << " = " << value << "\n";
}

int cmd_simulate(const std::string& scenario, const std::string& out_dir,
                 const std::string& dump_preset) {
    if (!dump_preset.empty()) {
        std::cout << fwmix::dump_config(fwmix::make_preset(dump_preset));
        return 0;
    }
    if (scenario.empty()) {
        std::cerr << "simulate: give a config file, a preset name, or --dump-preset\n";
        return 1;
    }

    fwmix::ScenarioConfig cfg;
    if (std::filesystem::exists(scenario)) {
        cfg = fwmix::load_config(scenario);
    } else {
        const auto names = fwmix::preset_names();
        if (std::find(names.begin(), names.end(), scenario) == names.end())
            throw fwmix::ConfigError(scenario, "neither a config file nor a preset name");
        cfg = fwmix::make_preset(scenario);
    }

    const fwmix::SimulationResult result = fwmix::run_simulation(cfg, out_dir);
    std::cout << "wrote " << result.manifest.files.size() + 1 << " files to " << out_dir << "\n";
    if (result.fit_horizontal) {
        std::cout << "fit-horizontal: eps_ratio = "
                  << fwmix::format_double(result.fit_horizontal->eps_ratio)
                  << ", residual = " << fwmix::format_double(result.fit_horizontal->residual)
                  << "\n";
    }
    if (result.fit_vertical) {
        std::cout << "fit-vertical: eps_ratio = "
                  << fwmix::format_double(result.fit_vertical->eps_ratio)
                  << ", residual = " << fwmix::format_double(result.fit_vertical->residual)
                  << "\n";
    }
    return 0;
}

int cmd_fit(const std::string& csv_path, std::optional<double> eps0, bool with_offset,
            const std::string& out_path) {
    const fwmix::RadialProfile profile = fwmix::read_profile_csv(csv_path);
    fwmix::FitOptions opts;
    opts.eps0 = eps0;
    opts.with_offset = with_offset;
    const fwmix::AiryFit fit = fwmix::fit_airy(profile, opts);
    fwmix::KvRecord record = fwmix::fit_record(fit);
    print_record(record);
    if (with_offset) std::cout << "offset = " << fwmix::format_double(fit.offset) << "\n";
    if (!out_path.empty()) fwmix::write_kv_record(out_path, record);
    return 0;
}

int cmd_compare(const std::string& csv_a, const std::string& csv_b, double scale_a,
                double scale_b) {
    const fwmix::RadialProfile a = fwmix::read_profile_csv(csv_a);
    const fwmix::RadialProfile b = fwmix::read_profile_csv(csv_b);
    const fwmix::ProfileComparison cmp = fwmix::compare_profiles(a, b, scale_a, scale_b);
    if (cmp.unit_mismatch)
        std::cerr << "warning: profiles record different position units; "
                     "pass --scale-a/--scale-b to reconcile\n";
    std::cout << "nrmse = " << fwmix::format_double(cmp.nrmse) << "\n";
    std::cout << "peak_offset = " << fwmix::format_double(cmp.peak_offset) << "\n";
    std::cout << "unit_mismatch = " << (cmp.unit_mismatch ? "true" : "false") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"annular-aperture conversion simulator"};
    app.require_subcommand(1);

    std::string scenario, out_dir = "out", dump_preset;
    CLI::App* simulate = app.add_subcommand("simulate", "run a scenario pipeline");
    simulate->add_option("config", scenario, "config file or preset name");
    simulate->add_option("--out", out_dir, "output directory")->capture_default_str();
    simulate->add_option("--dump-preset", dump_preset, "print a preset config and exit");

    std::string fit_csv, fit_out;
    double eps0_value = 0.0;
    bool with_offset = false;
    CLI::App* fit = app.add_subcommand("fit", "fit a radial profile");
    fit->add_option("csv", fit_csv, "profile csv")->required();
    CLI::Option* eps0_opt = fit->add_option("--eps0", eps0_value, "starting obscuration ratio");
    fit->add_flag("--offset", with_offset, "fit an additive background");
    fit->add_option("--out", fit_out, "also write the fit record here");

    std::string csv_a, csv_b;
    double scale_a = 1.0, scale_b = 1.0;
    CLI::App* compare = app.add_subcommand("compare", "compare two profiles");
    compare->add_option("csvA", csv_a, "first profile")->required();
    compare->add_option("csvB", csv_b, "second profile")->required();
    compare->add_option("--scale-a", scale_a, "position scale for A")->capture_default_str();
    compare->add_option("--scale-b", scale_b, "position scale for B")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return cmd_simulate(scenario, out_dir, dump_preset);
        if (fit->parsed()) {
            std::optional<double> eps0;
            if (eps0_opt->count() > 0) eps0 = eps0_value;
            return cmd_fit(fit_csv, eps0, with_offset, fit_out);
        }
        if (compare->parsed()) return cmd_compare(csv_a, csv_b, scale_a, scale_b);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const fwmix::StageError& e) {
        std::cerr << "error in stage " << e.what() << "\n";
        return 2;
    } catch (const fwmix::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
