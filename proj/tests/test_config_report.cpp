#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "phlab/config.hpp"
#include "phlab/report.hpp"

using namespace phlab;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("default config validates") {
    Config cfg;
    CHECK(cfg.validate().empty());
}

TEST_CASE("config parsing and field diagnostics") {
    SUBCASE("round trip through the canonical dump") {
        Config cfg;
        cfg.c_max = 3.5;
        cfg.grids.cert_x = 512;
        cfg.seed = 99;
        const Config back = parse_config(config_to_json(cfg));
        CHECK(back.c_max == 3.5);
        CHECK(back.grids.cert_x == 512);
        CHECK(back.seed == 99);
        CHECK(config_hash(back) == config_hash(cfg));
    }
    SUBCASE("invalid JSON") {
        CHECK_THROWS_AS(parse_config("{ nope"), ConfigError);
    }
    SUBCASE("diagnostics name the offending fields") {
        auto expect_mention = [](const std::string& text, const std::string& field) {
            try {
                parse_config(text);
                FAIL("expected ConfigError");
            } catch (const ConfigError& e) {
                CHECK(std::string(e.what()).find(field) != std::string::npos);
            }
        };
        expect_mention(R"({"rho": {"flatLo": 0.9, "flatHi": 0.1}})", "rho");
        expect_mention(R"({"linearModel": [[2, 0], [0, 2]]})", "linearModel");
        expect_mention(R"({"da": {"bumpRadius": -1.0}})", "da.bumpRadius");
        expect_mention(R"({"thresholds": {"margin": 2.0}})", "thresholds.margin");
        expect_mention(R"({"grids": {"certX": 4}})", "grids.certX");
        expect_mention(R"({"cMax": "big"})", "cMax");
    }
    SUBCASE("overlapping bump disks are caught at load") {
        try {
            parse_config(R"({"da": {"bumpRadius": 0.26}})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("bumpRadius") != std::string::npos);
        }
    }
    SUBCASE("hash changes when the config does") {
        Config a;
        Config b;
        b.seed = a.seed + 1;
        CHECK(config_hash(a) != config_hash(b));
    }
}

TEST_CASE("double formatting round-trips") {
    for (double v : {0.0, 1.0, -1.5, 0.1, 3.141592653589793, 1e-300, 2.34375}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("reporter manifest lists every emitted file") {
    TempDir tmp("phlab_report_test");
    Config cfg;
    cfg.out_dir = tmp.path.string();

    Reporter reporter(cfg, "unit");
    reporter.write_text("a.txt", "alpha");
    reporter.write_text("b.csv", "x\n1\n");
    reporter.finish();

    const std::string manifest = read_file(tmp.path / "manifest.json");
    CHECK(manifest.find("\"a.txt\"") != std::string::npos);
    CHECK(manifest.find("\"b.csv\"") != std::string::npos);
    CHECK(manifest.find("\"manifest.json\"") != std::string::npos);
    CHECK(manifest.find("\"command\": \"unit\"") != std::string::npos);
    CHECK(manifest.find(config_hash(cfg)) != std::string::npos);
    CHECK(read_file(tmp.path / "a.txt") == "alpha");
}

TEST_CASE("sweep csv layout") {
    TempDir tmp("phlab_csv_test");
    Config cfg;
    cfg.out_dir = tmp.path.string();
    Reporter reporter(cfg, "unit");

    MarginReport row;
    row.n = 16.0;
    row.margin_cs_uu = 0.25;
    row.margin_cu_ss = 0.125;
    row.pass = true;
    write_sweep_csv(reporter, "sweep.csv", {row});
    const std::string csv = read_file(tmp.path / "sweep.csv");
    CHECK(csv == "N,marginCsUu,marginCuSs,pass\n16,0.25,0.125,1\n");
}
