// peakonlab: config-driven runs, blow-up certificates, Besov profiles and
// parameter sweeps for the peakon transport system.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pklab/io.hpp"
#include "pklab/version.hpp"

namespace fs = std::filesystem;

namespace {

fs::path resolve_out(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("PEAKONLAB_OUT")) return env;
    return "out";
}

pklab::SimConfig config_from(const std::string& config_path, const std::string& recipe) {
    if (!config_path.empty() && !recipe.empty())
        throw pklab::ConfigError("pass either --config or --seed-recipe, not both");
    if (!config_path.empty()) return pklab::load_config_file(config_path);
    if (!recipe.empty()) return pklab::parse_config(pklab::seed_recipe(recipe));
    throw pklab::ConfigError("missing --config PATH or --seed-recipe {fig1,fig2,fig3}");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the peakon transport system"};
    app.set_version_flag("--version", std::string(pklab::kVersion));
    app.require_subcommand(1);

    std::string config_path, recipe, out_flag;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key = value lines)");
        cmd->add_option("--seed-recipe", recipe, "bundled scenario: fig1, fig2 or fig3")
            ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
        cmd->add_option("--out", out_flag, "output directory (default $PEAKONLAB_OUT or ./out)");
    };

    auto* cmd_run = app.add_subcommand("run", "integrate and emit diagnostics/snapshots");
    add_common(cmd_run);
    bool emit_config = false;
    cmd_run->add_flag("--emit-config", emit_config,
                      "also write the resolved config next to the outputs");

    auto* cmd_predict = app.add_subcommand("predict-blowup", "evaluate the blow-up certificate");
    add_common(cmd_predict);

    auto* cmd_besov = app.add_subcommand("besov-profile",
                                         "dyadic block energies of a saved snapshot");
    std::string snapshot_path, field = "v", p_text = "2", r_text = "2";
    double s_index = 0;
    cmd_besov->add_option("--snapshot", snapshot_path, "snapshot CSV (x,v,n)")->required();
    cmd_besov->add_option("--s", s_index, "regularity index s");
    cmd_besov->add_option("--p", p_text, "integrability index p (number or 'inf')");
    cmd_besov->add_option("--r", r_text, "summation index r (number or 'inf')");
    cmd_besov->add_option("--field", field, "which column to analyze: v or n");
    cmd_besov->add_option("--out", out_flag, "output directory");

    auto* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep from a template config");
    cmd_sweep->add_option("--config", config_path, "template with sweep.<name> lines")->required();
    cmd_sweep->add_option("--out", out_flag, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path out_dir = resolve_out(out_flag);
        if (cmd_run->parsed()) {
            const pklab::SimConfig cfg = config_from(config_path, recipe);
            if (emit_config) {
                fs::create_directories(out_dir);
                std::ofstream(out_dir / "config.cfg") << pklab::format_config(cfg);
            }
            const pklab::RunManifest manifest = pklab::cmd_run(cfg, out_dir);
            for (const auto& [k, v] : manifest.entries) std::cout << k << " = " << v << "\n";
            std::cout << "outputs: " << out_dir.string() << " (" << manifest.files.size()
                      << " files)\n";
        } else if (cmd_predict->parsed()) {
            const pklab::SimConfig cfg = config_from(config_path, recipe);
            const pklab::BlowupReport report = pklab::cmd_predict_blowup(cfg, out_dir);
            std::ifstream in(out_dir / "blowup_report.txt");
            std::cout << in.rdbuf();
        } else if (cmd_besov->parsed()) {
            auto parse_index = [](const std::string& text, const char* name) {
                if (text == "inf" || text == "infinity")
                    return std::numeric_limits<double>::infinity();
                try {
                    return std::stod(text);
                } catch (const std::exception&) {
                    throw pklab::ConfigError(std::string(name) + ": expected a number or 'inf'");
                }
            };
            const auto profile = pklab::cmd_besov_profile(
                snapshot_path, s_index, parse_index(p_text, "--p"), parse_index(r_text, "--r"),
                field, out_dir);
            std::cout << "j,energy\n";
            for (std::size_t i = 0; i < profile.j.size(); ++i)
                std::cout << profile.j[i] << ',' << profile.energy[i] << '\n';
            std::cout << "aggregate," << profile.aggregate << '\n';
        } else if (cmd_sweep->parsed()) {
            std::ifstream in(config_path);
            if (!in) throw pklab::ConfigError("cannot open sweep template: " + config_path);
            std::ostringstream ss;
            ss << in.rdbuf();
            const auto manifests = pklab::cmd_sweep(ss.str(), out_dir);
            std::cout << "completed " << manifests.size() << " runs; summary: "
                      << (out_dir / "summary.csv").string() << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
