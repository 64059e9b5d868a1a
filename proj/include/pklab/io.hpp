#pragma once
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pklab/besov.hpp"
#include "pklab/blowup.hpp"
#include "pklab/timestepper.hpp"

namespace pklab {

// Flat key-value run record plus the list of emitted files (paths relative
// to the run directory; every listed file exists and is non-empty).
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<std::string> files;

    void set(std::string key, std::string value) {
        entries.emplace_back(std::move(key), std::move(value));
    }
    const std::string* find(const std::string& key) const;
};

// CSV I/O: one-line header, full-precision decimal floats.
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& diagnostics);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::filesystem::path& path);
void write_snapshot_csv(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_snapshot_csv(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

// Execute a run and emit diagnostics.csv, snapshot_NNNN.csv, optionally
// crest.csv, and manifest.txt into out_dir.
RunManifest cmd_run(const SimConfig& config, const std::filesystem::path& out_dir);

// Evaluate the blow-up certificate for the configured initial data; writes
// blowup_report.txt. Reports the measured-norm certificate and, when the
// config carries assume_v_inf/assume_vx_inf, the supplied-bounds one.
BlowupReport cmd_predict_blowup(const SimConfig& config,
                                const std::filesystem::path& out_dir);

struct BesovProfile {
    std::vector<int> j;
    std::vector<double> energy; // 2^{js} ||Delta_j f||_{L^p}
    double aggregate = 0;       // l^r over the rows
};

// Block-energy table of a saved snapshot column ("v" or "n").
BesovProfile cmd_besov_profile(const std::filesystem::path& snapshot_path,
                               double s, double p, double r,
                               const std::string& field,
                               const std::filesystem::path& out_dir);

// Sweep: the template may contain sweep.<name> = v1, v2, ... lines and
// {name} placeholders in ordinary values; runs the cartesian product
// concurrently, one subdirectory per run, plus summary.csv.
std::vector<RunManifest> cmd_sweep(const std::string& template_text,
                                   const std::filesystem::path& out_dir);

// Bundled reproduction configs: fig1 (certified blow-up bump), fig2
// (nonnegative bump, global run), fig3 (exact single peakon).
std::string seed_recipe(const std::string& name);

} // namespace pklab
