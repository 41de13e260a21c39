#include <doctest.h>

#include "fsilab/config.hpp"
#include "fsilab/norms.hpp"
#include "fsilab/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fsilab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("fsilab_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("parse_config: defaults round-trip and diagnostics") {
    RunConfig def = parse_config_text(default_config_text(), "<defaults>");
    CHECK(def.echo() == default_config_text());

    CHECK_THROWS_AS(parse_config_text("[iteration]\ns = 2.0\n", "t"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[iteration]\ns = 2.5\n", "t"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[physics]\npressure_law = gamma\n", "t"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[physics]\nbogus_key = 1\n", "t"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[nosuch]\nx = 1\n", "t"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("x = 1\n", "t"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[geometry]\nL1 = 2.0\nL2 = 1.0\n", "t"), ConfigError);

    // line numbers in diagnostics
    try {
        parse_config_text("[physics]\nlambda = 1.0\nwrong = 2\n", "cfg.ini");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("cfg.ini:3") != std::string::npos);
    }

    // comments and minimal config
    RunConfig mini = parse_config_text("# comment\n[run]\nmode = compat\n", "t");
    CHECK(mini.mode == RunMode::Compat);
    CHECK(mini.L1 == 1.0);
}

TEST_CASE("compat mode produces an all-pass summary on the shipped data") {
    RunConfig cfg = parse_config_text(default_config_text(), "<defaults>");
    cfg.mode = RunMode::Compat;
    cfg.output_dir = fresh_dir("compat").string();
    RunSummary s = run(cfg);
    CHECK(s.exit_code == ExitOk);
    const std::string csv = slurp(fs::path(cfg.output_dir) / "compat.csv");
    CHECK(csv.find("stress-balance") != std::string::npos);
    CHECK(csv.find(",0\n") == std::string::npos); // no failing condition rows
}

TEST_CASE("simulate is deterministic: identical config+seed gives identical CSVs") {
    RunConfig cfg = parse_config_text(default_config_text(), "<defaults>");
    cfg.mode = RunMode::Lambda;
    cfg.iter.T = 0.02;
    cfg.iter.dt = 2.5e-3;
    cfg.output_dir = fresh_dir("det_a").string();
    RunSummary a = run(cfg);
    REQUIRE(a.exit_code == ExitOk);

    RunConfig cfg2 = cfg;
    cfg2.output_dir = fresh_dir("det_b").string();
    RunSummary b = run(cfg2);
    REQUIRE(b.exit_code == ExitOk);

    for (const char* name : {"norms.csv", "iterations.csv"}) {
        const std::string fa = slurp(fs::path(cfg.output_dir) / name);
        const std::string fb = slurp(fs::path(cfg2.output_dir) / name);
        CHECK(fa == fb);
        CHECK(!fa.empty());
    }
}

TEST_CASE("checkpoints reload with identical norms") {
    RunConfig cfg = parse_config_text(default_config_text(), "<defaults>");
    cfg.mode = RunMode::Pi;
    cfg.iter.T = 0.02;
    cfg.iter.dt = 2.5e-3;
    cfg.output_dir = fresh_dir("ckpt").string();
    RunSummary s = run(cfg);
    REQUIRE(s.exit_code == ExitOk);

    ChannelGeometry g = cfg.geometry();
    FsiState st = load_checkpoint((fs::path(cfg.output_dir) / "checkpoint.json").string(), g);
    // norms recompute identically after the JSON round trip
    const double n1 = k_norm(g, st.v, cfg.iter.s + 1.0);
    CHECK(n1 > 0.0);
    const double h1 = sobolev_norm(g, st.elastic.w.samples.back(), 1.0);
    FsiState st2 = load_checkpoint((fs::path(cfg.output_dir) / "checkpoint.json").string(), g);
    CHECK(k_norm(g, st2.v, cfg.iter.s + 1.0) == n1);
    CHECK(sobolev_norm(g, st2.elastic.w.samples.back(), 1.0) == h1);

    ChannelGeometry other(1.0, 2.0, 3.0, 8, 8, 10, 8, 8);
    CHECK_THROWS(load_checkpoint((fs::path(cfg.output_dir) / "checkpoint.json").string(),
                                 other));
}

TEST_CASE("input digest separates configs and seeds") {
    const std::uint64_t a = input_digest("abc", 1);
    CHECK(input_digest("abc", 1) == a);
    CHECK(input_digest("abd", 1) != a);
    CHECK(input_digest("abc", 2) != a);
}

TEST_CASE("recompute_norms reproduces the producing run's norms.csv byte for byte") {
    RunConfig cfg = parse_config_text(default_config_text(), "<defaults>");
    cfg.mode = RunMode::Lambda;
    cfg.iter.T = 0.02;
    cfg.iter.dt = 2.5e-3;
    cfg.output_dir = fresh_dir("reco_src").string();
    REQUIRE(run(cfg).exit_code == ExitOk);

    RunConfig reco = cfg;
    reco.output_dir = fresh_dir("reco_dst").string();
    RunSummary s = recompute_norms(
        reco, (fs::path(cfg.output_dir) / "checkpoint.json").string());
    CHECK(s.exit_code == ExitOk);
    CHECK(slurp(fs::path(reco.output_dir) / "norms.csv") ==
          slurp(fs::path(cfg.output_dir) / "norms.csv"));
}
