#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "phlab/center.hpp"
#include "phlab/certificate.hpp"
#include "phlab/config.hpp"

namespace phlab {

// Shortest-round-trip decimal form, stable across reruns.
std::string format_double(double v);

/// Collects every emitted file and writes the run manifest next to them.
class Reporter {
  public:
    Reporter(const Config& cfg, std::string command);

    const std::filesystem::path& out_dir() const { return out_dir_; }

    // Registers the file and returns its full path.
    std::filesystem::path emit(const std::string& filename);
    void write_text(const std::string& filename, const std::string& content);

    void finish();  // writes manifest.json (also registered)

  private:
    std::filesystem::path out_dir_;
    std::string command_;
    std::string config_hash_;
    std::vector<std::string> emitted_;
    std::chrono::steady_clock::time_point start_;
};

// Concrete artifact writers.
void write_foliation_svg(Reporter& reporter, const std::string& filename,
                         const FoliationModel& foliation, int leaves,
                         int samples_per_leaf);
void write_sweep_csv(Reporter& reporter, const std::string& filename,
                     const std::vector<MarginReport>& rows);
std::string margin_report_json(const MarginReport& report);
void write_certificate_json(Reporter& reporter, const std::string& filename,
                            const FindN0Result& found, const MarginReport& at_2n0);
void write_displacement_csv(Reporter& reporter, const std::string& filename,
                            const DisplacementField& field);
void write_displacement_svg(Reporter& reporter, const std::string& filename,
                            const DisplacementField& field);

}  // namespace phlab
