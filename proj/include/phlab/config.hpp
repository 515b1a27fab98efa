#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace phlab {

/// Thrown on invalid configuration; message carries one line per offending
/// field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Config {
    int schema_version = 1;

    std::array<std::array<std::int64_t, 2>, 2> linear_model = {{{3, 1}, {2, 1}}};

    struct Da {
        double bump_radius = 0.08;
        double bump_strength = 1.8;
    } da;

    struct Alpha {
        std::string profile = "logsin";
    } alpha;

    struct Rho {
        double flat_lo = 0.1;
        double flat_hi = 0.9;
        bool enabled = true;
    } rho;

    double c_max = 2.0;

    struct Grids {
        int pair_resolution = 4096;
        int cert_t = 64;
        int cert_x = 256;
        int displacement = 128;
        int candidate_x = 256;
        int foliation_leaves = 12;
        int leaf_samples = 600;
    } grids;

    struct Thresholds {
        double margin = 0.05;
        double compact_band = 0.02;
        double candidate_tol = 1e-6;
    } thresholds;

    struct Integrator {
        double abs_tol = 1e-10;
        long max_steps = 1000000;
    } integrator;

    struct Orbits {
        int cocycle_samples = 200;
        int cocycle_n_range = 4;
        int ftle_samples = 50;
        double ftle_time = 50.0;
        int stable_samples = 100;
        int stable_iterates = 60;
    } orbits;

    std::uint64_t seed = 20260810;
    std::string out_dir = "out";

    // Structural diagnostics, one "<field>: <problem>" line per violation.
    std::vector<std::string> validate() const;
};

// Parses a config JSON file; unknown keys and type mismatches are reported
// with their paths. Throws ConfigError when parsing or validation fails.
Config load_config(const std::string& path);
Config parse_config(const std::string& json_text);

// Canonical JSON dump (sorted keys) and its FNV-1a 64 hash, used for the run
// manifest.
std::string config_to_json(const Config& cfg);
std::string config_hash(const Config& cfg);

}  // namespace phlab
