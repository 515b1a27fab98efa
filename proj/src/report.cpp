#include "phlab/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace phlab {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Reporter::Reporter(const Config& cfg, std::string command)
    : out_dir_(cfg.out_dir),
      command_(std::move(command)),
      config_hash_(config_hash(cfg)),
      start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(out_dir_);
}

std::filesystem::path Reporter::emit(const std::string& filename) {
    emitted_.push_back(filename);
    return out_dir_ / filename;
}

void Reporter::write_text(const std::string& filename, const std::string& content) {
    const std::filesystem::path path = emit(filename);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

void Reporter::finish() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    json manifest;
    manifest["schemaVersion"] = 1;
    manifest["appVersion"] = "0.1.0";
    manifest["command"] = command_;
    manifest["configHash"] = config_hash_;
    manifest["wallTimeMs"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    std::vector<std::string> files = emitted_;
    files.push_back("manifest.json");
    manifest["emittedFiles"] = files;
    write_text("manifest.json", manifest.dump(2) + "\n");
    emitted_.pop_back();  // avoid double entries if finish() is called again
}

namespace {

class SvgBuilder {
  public:
    SvgBuilder(double width, double height) : width_(width), height_(height) {
        body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
              << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
              << height << "\">\n";
        body_ << "<rect width=\"" << width << "\" height=\"" << height
              << "\" fill=\"white\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke, double width, double opacity = 1.0) {
        if (pts.size() < 2) return;
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << width << "\" stroke-opacity=\"" << opacity << "\" points=\"";
        for (const auto& [x, y] : pts) {
            body_ << round3(x) << "," << round3(y) << " ";
        }
        body_ << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width, const std::string& dash = "") {
        body_ << "<line x1=\"" << round3(x1) << "\" y1=\"" << round3(y1) << "\" x2=\""
              << round3(x2) << "\" y2=\"" << round3(y2) << "\" stroke=\"" << stroke
              << "\" stroke-width=\"" << width << "\"";
        if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
        body_ << "/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill) {
        body_ << "<rect x=\"" << round3(x) << "\" y=\"" << round3(y) << "\" width=\""
              << round3(w) << "\" height=\"" << round3(h) << "\" fill=\"" << fill
              << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, int size = 14) {
        body_ << "<text x=\"" << round3(x) << "\" y=\"" << round3(y)
              << "\" font-family=\"sans-serif\" font-size=\"" << size << "\">" << s
              << "</text>\n";
    }

    std::string finish() {
        body_ << "</svg>\n";
        return body_.str();
    }

  private:
    static std::string round3(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return buf;
    }
    double width_, height_;
    std::ostringstream body_;
};

}  // namespace

void write_foliation_svg(Reporter& reporter, const std::string& filename,
                         const FoliationModel& foliation, int leaves,
                         int samples_per_leaf) {
    const double size = 1000.0, pad = 50.0, box = size - 2.0 * pad;
    SvgBuilder svg(size, size);
    auto px = [&](double x) { return pad + x * box; };
    auto py = [&](double y) { return pad + (1.0 - y) * box; };

    svg.rect(pad, pad, box, box, "none");
    svg.line(pad, pad, pad, pad + box, "#444", 1.0);
    svg.line(pad + box, pad, pad + box, pad + box, "#444", 1.0);
    svg.line(pad, pad, pad + box, pad, "#444", 1.0);
    svg.line(pad, pad + box, pad + box, pad + box, "#444", 1.0);

    // Leaves are graphs of alpha(x) + offset on each half, drawn for both
    // foliations (the unstable one is the stable one shifted by 1/4).
    const AlphaProfile& alpha = foliation.alpha();
    auto draw_leaves = [&](double x_shift, const std::string& color) {
        for (int k = 0; k < leaves; ++k) {
            const double offset = static_cast<double>(k) / leaves;
            for (double half : {0.0, 0.5}) {
                std::vector<std::pair<double, double>> run;
                double prev_y = -10.0;
                for (int i = 1; i < samples_per_leaf; ++i) {
                    const double u = static_cast<double>(i) / samples_per_leaf * 0.5;
                    if (u <= 0.0 || u >= 0.5) continue;
                    const double x = wrap_unit(half + u + x_shift);
                    const double y = wrap_unit(alpha.value(u) + offset);
                    if (!run.empty() &&
                        (std::fabs(y - prev_y) > 0.5 || std::fabs(x - run.back().first) > 0.4)) {
                        std::vector<std::pair<double, double>> pixels;
                        pixels.reserve(run.size());
                        for (auto& [rx, ry] : run) pixels.emplace_back(px(rx), py(ry));
                        svg.polyline(pixels, color, 1.0, 0.8);
                        run.clear();
                    }
                    run.emplace_back(x, y);
                    prev_y = y;
                }
                std::vector<std::pair<double, double>> pixels;
                pixels.reserve(run.size());
                for (auto& [rx, ry] : run) pixels.emplace_back(px(rx), py(ry));
                svg.polyline(pixels, color, 1.0, 0.8);
            }
        }
    };
    draw_leaves(0.0, "#336699");   // stable family
    draw_leaves(0.25, "#cc3344");  // unstable family

    // Compact leaves: the four vertical circles.
    for (double x : {0.0, 0.5}) {
        svg.line(px(x), py(0.0), px(x), py(1.0), "#336699", 4.0);
    }
    svg.line(px(1.0), py(0.0), px(1.0), py(1.0), "#336699", 4.0);  // same circle as x=0
    for (double x : {0.25, 0.75}) {
        svg.line(px(x), py(0.0), px(x), py(1.0), "#cc3344", 4.0);
    }

    svg.text(pad, pad - 14.0, "stable leaves (blue) and unstable leaves (red); "
                              "compact leaves at x = 0, 1/4, 1/2, 3/4");
    reporter.write_text(filename, svg.finish());
}

void write_sweep_csv(Reporter& reporter, const std::string& filename,
                     const std::vector<MarginReport>& rows) {
    std::ostringstream out;
    out << "N,marginCsUu,marginCuSs,pass\n";
    for (const MarginReport& r : rows) {
        out << format_double(r.n) << "," << format_double(r.margin_cs_uu) << ","
            << format_double(r.margin_cu_ss) << "," << (r.pass ? 1 : 0) << "\n";
    }
    reporter.write_text(filename, out.str());
}

static json margin_report_to_json(const MarginReport& r) {
    json j;
    j["n"] = r.n;
    j["marginCsUu"] = r.margin_cs_uu;
    j["marginCuSs"] = r.margin_cu_ss;
    j["argminCsUu"] = {{"t", r.argmin_cs_uu.t}, {"x", r.argmin_cs_uu.x},
                       {"c", r.argmin_cs_uu.c}};
    j["argminCuSs"] = {{"t", r.argmin_cu_ss.t}, {"x", r.argmin_cu_ss.x},
                       {"c", r.argmin_cu_ss.c}};
    j["gridT"] = r.grid_t;
    j["gridX"] = r.grid_x;
    j["cMax"] = r.c_max;
    j["threshold"] = r.threshold;
    j["pass"] = r.pass;
    return j;
}

std::string margin_report_json(const MarginReport& report) {
    json j = margin_report_to_json(report);
    j["schemaVersion"] = 1;
    return j.dump(2) + "\n";
}

void write_certificate_json(Reporter& reporter, const std::string& filename,
                            const FindN0Result& found, const MarginReport& at_2n0) {
    json j;
    j["schemaVersion"] = 1;
    j["n0"] = found.n0;
    j["limitMargin"] = found.limit_margin;
    j["monotoneAlongSearch"] = found.monotone_along_search;
    j["atN0"] = margin_report_to_json(found.report_at_n0);
    j["at2N0"] = margin_report_to_json(at_2n0);
    j["pass"] = found.report_at_n0.pass && at_2n0.pass;
    reporter.write_text(filename, j.dump(2) + "\n");
}

void write_displacement_csv(Reporter& reporter, const std::string& filename,
                            const DisplacementField& field) {
    std::ostringstream out;
    out << "x0,y0,Dx,Dy,distToLattice,status\n";
    for (const DisplacementNode& n : field.nodes) {
        out << format_double(n.x0) << "," << format_double(n.y0) << ","
            << format_double(n.dx) << "," << format_double(n.dy) << ","
            << format_double(n.dist_to_lattice) << "," << (n.ok ? "ok" : "failed")
            << "\n";
    }
    reporter.write_text(filename, out.str());
}

void write_displacement_svg(Reporter& reporter, const std::string& filename,
                            const DisplacementField& field) {
    const double size = 1000.0, pad = 50.0, box = size - 2.0 * pad;
    SvgBuilder svg(size, size);
    const int res = field.grid_res;
    const double cell = box / res;

    double max_dist = 0.0;
    for (const DisplacementNode& n : field.nodes) {
        if (n.ok) max_dist = std::max(max_dist, n.dist_to_lattice);
    }
    if (max_dist <= 0.0) max_dist = 1.0;

    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            const DisplacementNode& n = field.at(i, j);
            std::string fill = "#dd2222";
            if (n.ok) {
                const double v = n.dist_to_lattice / max_dist;
                const int r = static_cast<int>(255.0 * (1.0 - 0.85 * v));
                const int g = static_cast<int>(255.0 * (1.0 - 0.55 * v));
                const int b = 255;
                char buf[16];
                std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
                fill = buf;
            }
            svg.rect(pad + i * cell, pad + box - (j + 1) * cell, cell + 0.5,
                     cell + 0.5, fill);
        }
    }
    // Compact-leaf circles of both foliations, where closed center arcs live.
    for (double x : {0.0, 0.25, 0.5, 0.75}) {
        svg.line(pad + x * box, pad, pad + x * box, pad + box, "#222222", 1.5,
                 "6,4");
    }
    svg.text(pad, pad - 14.0,
             "distance of the center-arc displacement to the integer lattice "
             "(dark = far); dashed: compact leaves");
    reporter.write_text(filename, svg.finish());
}

}  // namespace phlab
