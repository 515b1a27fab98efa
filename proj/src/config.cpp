#include "phlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phlab/torus_map.hpp"

namespace phlab {

using nlohmann::json;

std::vector<std::string> Config::validate() const {
    std::vector<std::string> problems;
    auto bad = [&](const std::string& field, const std::string& why) {
        problems.push_back(field + ": " + why);
    };

    if (schema_version != 1) {
        bad("schemaVersion", "unsupported version");
    }

    const auto& m = linear_model;
    const std::int64_t det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const std::int64_t trace = m[0][0] + m[1][1];
    const std::int64_t det_mi =
        (m[0][0] - 1) * (m[1][1] - 1) - m[0][1] * m[1][0];
    if (det != 1) bad("linearModel", "determinant must be 1");
    if (std::abs(trace) <= 2) bad("linearModel", "|trace| must exceed 2");
    if (std::abs(det_mi) != 2) {
        bad("linearModel", "|det(m - I)| must be 2 (exactly two fixed points)");
    }

    if (!(da.bump_radius > 0.0)) bad("da.bumpRadius", "must be positive");
    if (!(da.bump_strength > 0.0)) bad("da.bumpStrength", "must be positive");
    if (det == 1 && std::abs(trace) > 2) {
        const double tr = static_cast<double>(trace);
        const double lambda_s = 2.0 / (std::fabs(tr) + std::sqrt(tr * tr - 4.0));
        if (lambda_s * std::exp(da.bump_strength) <= 1.2) {
            bad("da.bumpStrength", "stable eigenvalue at the sources must exceed 1.2");
        }
        if (std::abs(det_mi) == 2) {
            try {
                LinearModel model(m);
                const auto fixed = fixed_points(model);
                if (fixed.size() == 2 &&
                    torus_distance(fixed[0], fixed[1]) <= 2.0 * da.bump_radius) {
                    bad("da.bumpRadius", "bump disks around the sources overlap");
                }
            } catch (const std::exception& e) {
                bad("linearModel", e.what());
            }
        }
    }

    if (alpha.profile != "logsin") {
        bad("alpha.profile", "unknown profile (supported: logsin)");
    }

    if (!(0.0 < rho.flat_lo && rho.flat_lo < rho.flat_hi && rho.flat_hi < 1.0)) {
        bad("rho", "need 0 < flatLo < flatHi < 1");
    }

    if (!(c_max >= 0.0)) bad("cMax", "must be >= 0");

    if (grids.pair_resolution < 16) bad("grids.pairResolution", "must be >= 16");
    if (grids.cert_t < 2) bad("grids.certT", "must be >= 2");
    if (grids.cert_x < 32) bad("grids.certX", "must be >= 32");
    if (grids.displacement < 2) bad("grids.displacement", "must be >= 2");
    if (grids.candidate_x < 2) bad("grids.candidateX", "must be >= 2");
    if (grids.foliation_leaves < 1) bad("grids.foliationLeaves", "must be >= 1");
    if (grids.leaf_samples < 16) bad("grids.leafSamples", "must be >= 16");

    if (!(thresholds.margin > 0.0 && thresholds.margin < 1.0)) {
        bad("thresholds.margin", "must lie in (0, 1)");
    }
    if (!(thresholds.compact_band > 0.0 && thresholds.compact_band < 0.125)) {
        bad("thresholds.compactBand", "must lie in (0, 0.125)");
    }
    if (!(thresholds.candidate_tol > 0.0)) bad("thresholds.candidateTol", "must be positive");

    if (!(integrator.abs_tol > 0.0)) bad("integrator.absTol", "must be positive");
    if (integrator.max_steps < 1000) bad("integrator.maxSteps", "must be >= 1000");

    if (orbits.cocycle_samples < 1) bad("orbits.cocycleSamples", "must be >= 1");
    if (orbits.cocycle_n_range < 2) bad("orbits.cocycleNRange", "must be >= 2");
    if (orbits.ftle_samples < 1) bad("orbits.ftleSamples", "must be >= 1");
    if (!(orbits.ftle_time > 0.0)) bad("orbits.ftleTime", "must be positive");
    if (orbits.stable_samples < 1) bad("orbits.stableSamples", "must be >= 1");
    if (orbits.stable_iterates < 1) bad("orbits.stableIterates", "must be >= 1");

    if (out_dir.empty()) bad("outDir", "must not be empty");

    return problems;
}

namespace {

// Field-by-field extraction with path-tagged errors.
class Reader {
  public:
    explicit Reader(const json& j) : root_(j) {}

    template <typename T>
    void get(const json& obj, const std::string& path, const char* key, T& out) {
        if (!obj.contains(key)) return;  // keep the default
        try {
            obj.at(key).get_to(out);
        } catch (const json::exception&) {
            problems_.push_back(path + key + ": wrong type");
        }
    }

    const json* child(const json& obj, const char* key) {
        if (!obj.contains(key)) return nullptr;
        if (!obj.at(key).is_object()) {
            problems_.push_back(std::string(key) + ": must be an object");
            return nullptr;
        }
        return &obj.at(key);
    }

    std::vector<std::string>& problems() { return problems_; }

  private:
    const json& root_;
    std::vector<std::string> problems_;
};

}  // namespace

Config parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config: top level must be an object");
    }

    Config cfg;
    Reader r(j);

    r.get(j, "", "schemaVersion", cfg.schema_version);
    if (j.contains("linearModel")) {
        try {
            auto rows = j.at("linearModel").get<std::vector<std::vector<std::int64_t>>>();
            if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2) {
                r.problems().push_back("linearModel: must be a 2x2 integer matrix");
            } else {
                cfg.linear_model = {{{rows[0][0], rows[0][1]}, {rows[1][0], rows[1][1]}}};
            }
        } catch (const json::exception&) {
            r.problems().push_back("linearModel: must be a 2x2 integer matrix");
        }
    }
    if (const json* d = r.child(j, "da")) {
        r.get(*d, "da.", "bumpRadius", cfg.da.bump_radius);
        r.get(*d, "da.", "bumpStrength", cfg.da.bump_strength);
    }
    if (const json* a = r.child(j, "alpha")) {
        r.get(*a, "alpha.", "profile", cfg.alpha.profile);
    }
    if (const json* p = r.child(j, "rho")) {
        r.get(*p, "rho.", "flatLo", cfg.rho.flat_lo);
        r.get(*p, "rho.", "flatHi", cfg.rho.flat_hi);
        r.get(*p, "rho.", "enabled", cfg.rho.enabled);
    }
    r.get(j, "", "cMax", cfg.c_max);
    if (const json* g = r.child(j, "grids")) {
        r.get(*g, "grids.", "pairResolution", cfg.grids.pair_resolution);
        r.get(*g, "grids.", "certT", cfg.grids.cert_t);
        r.get(*g, "grids.", "certX", cfg.grids.cert_x);
        r.get(*g, "grids.", "displacement", cfg.grids.displacement);
        r.get(*g, "grids.", "candidateX", cfg.grids.candidate_x);
        r.get(*g, "grids.", "foliationLeaves", cfg.grids.foliation_leaves);
        r.get(*g, "grids.", "leafSamples", cfg.grids.leaf_samples);
    }
    if (const json* t = r.child(j, "thresholds")) {
        r.get(*t, "thresholds.", "margin", cfg.thresholds.margin);
        r.get(*t, "thresholds.", "compactBand", cfg.thresholds.compact_band);
        r.get(*t, "thresholds.", "candidateTol", cfg.thresholds.candidate_tol);
    }
    if (const json* i = r.child(j, "integrator")) {
        r.get(*i, "integrator.", "absTol", cfg.integrator.abs_tol);
        r.get(*i, "integrator.", "maxSteps", cfg.integrator.max_steps);
    }
    if (const json* o = r.child(j, "orbits")) {
        r.get(*o, "orbits.", "cocycleSamples", cfg.orbits.cocycle_samples);
        r.get(*o, "orbits.", "cocycleNRange", cfg.orbits.cocycle_n_range);
        r.get(*o, "orbits.", "ftleSamples", cfg.orbits.ftle_samples);
        r.get(*o, "orbits.", "ftleTime", cfg.orbits.ftle_time);
        r.get(*o, "orbits.", "stableSamples", cfg.orbits.stable_samples);
        r.get(*o, "orbits.", "stableIterates", cfg.orbits.stable_iterates);
    }
    r.get(j, "", "seed", cfg.seed);
    r.get(j, "", "outDir", cfg.out_dir);

    std::vector<std::string> problems = std::move(r.problems());
    const std::vector<std::string> invalid = cfg.validate();
    problems.insert(problems.end(), invalid.begin(), invalid.end());
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "config: " << problems.size() << " problem(s):";
        for (const std::string& p : problems) msg << "\n  - " << p;
        throw ConfigError(msg.str());
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const Config& cfg) {
    json j;
    j["schemaVersion"] = cfg.schema_version;
    j["linearModel"] = {{cfg.linear_model[0][0], cfg.linear_model[0][1]},
                        {cfg.linear_model[1][0], cfg.linear_model[1][1]}};
    j["da"] = {{"bumpRadius", cfg.da.bump_radius},
               {"bumpStrength", cfg.da.bump_strength}};
    j["alpha"] = {{"profile", cfg.alpha.profile}};
    j["rho"] = {{"flatLo", cfg.rho.flat_lo},
                {"flatHi", cfg.rho.flat_hi},
                {"enabled", cfg.rho.enabled}};
    j["cMax"] = cfg.c_max;
    j["grids"] = {{"pairResolution", cfg.grids.pair_resolution},
                  {"certT", cfg.grids.cert_t},
                  {"certX", cfg.grids.cert_x},
                  {"displacement", cfg.grids.displacement},
                  {"candidateX", cfg.grids.candidate_x},
                  {"foliationLeaves", cfg.grids.foliation_leaves},
                  {"leafSamples", cfg.grids.leaf_samples}};
    j["thresholds"] = {{"margin", cfg.thresholds.margin},
                       {"compactBand", cfg.thresholds.compact_band},
                       {"candidateTol", cfg.thresholds.candidate_tol}};
    j["integrator"] = {{"absTol", cfg.integrator.abs_tol},
                       {"maxSteps", cfg.integrator.max_steps}};
    j["orbits"] = {{"cocycleSamples", cfg.orbits.cocycle_samples},
                   {"cocycleNRange", cfg.orbits.cocycle_n_range},
                   {"ftleSamples", cfg.orbits.ftle_samples},
                   {"ftleTime", cfg.orbits.ftle_time},
                   {"stableSamples", cfg.orbits.stable_samples},
                   {"stableIterates", cfg.orbits.stable_iterates}};
    j["seed"] = cfg.seed;
    j["outDir"] = cfg.out_dir;
    return j.dump(2);
}

std::string config_hash(const Config& cfg) {
    const std::string dump = config_to_json(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

}  // namespace phlab
