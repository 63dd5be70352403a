#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "polarion/experiments.hpp"

using namespace polarion;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("number formatting keeps 12 significant digits and a decimal point") {
    CHECK(format_number(0.0) == "0.0");
    CHECK(format_number(1000.0) == "1000.0");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(3898.0) == "3898.0");
    CHECK(format_number(1.5e-7) == "1.5e-07");
}

TEST_CASE("config parsing") {
    TempDir dir("polarion_cfg_test");

    SUBCASE("valid file") {
        write_file(dir.path / "ok.cfg",
                   "# comment\ncutoff = 4\nsteps = 3\nout = results\npulse_level = off\n"
                   "t_max = 1500\nt_points = 500, 1000\n");
        const ExperimentConfig cfg = parse_config((dir.path / "ok.cfg").string());
        CHECK(cfg.cutoff == 4);
        CHECK(cfg.steps == 3);
        CHECK(cfg.out_dir == "results");
        CHECK(cfg.pulse_level == 0);
        CHECK(cfg.t_max == 1500.0);
        CHECK(cfg.t_points == std::vector<double>{500.0, 1000.0});
    }

    SUBCASE("empty file keeps defaults") {
        write_file(dir.path / "empty.cfg", "\n# nothing\n");
        const ExperimentConfig cfg = parse_config((dir.path / "empty.cfg").string());
        CHECK(cfg.cutoff == -1);
        CHECK(cfg.steps == -1);
    }

    SUBCASE("unknown keys are hard errors") {
        write_file(dir.path / "bad.cfg", "cutofff = 4\n");
        CHECK_THROWS_WITH_AS(parse_config((dir.path / "bad.cfg").string()),
                             doctest::Contains("cutofff"), ConfigError);
    }

    SUBCASE("negative steps rejected") {
        write_file(dir.path / "neg.cfg", "steps = -2\n");
        CHECK_THROWS_AS(parse_config((dir.path / "neg.cfg").string()), ConfigError);
    }

    SUBCASE("malformed values rejected") {
        write_file(dir.path / "m1.cfg", "cutoff = four\n");
        CHECK_THROWS_AS(parse_config((dir.path / "m1.cfg").string()), ConfigError);
        write_file(dir.path / "m2.cfg", "dt 0.1\n");
        CHECK_THROWS_AS(parse_config((dir.path / "m2.cfg").string()), ConfigError);
        CHECK_THROWS_AS(parse_config((dir.path / "missing.cfg").string()), ConfigError);
    }

    SUBCASE("command-line overrides win") {
        write_file(dir.path / "base.cfg", "cutoff = 4\nsteps = 3\n");
        ExperimentConfig base = parse_config((dir.path / "base.cfg").string());
        ExperimentConfig overrides;
        overrides.cutoff = 6;
        const ExperimentConfig merged = merge_config(base, overrides);
        CHECK(merged.cutoff == 6);
        CHECK(merged.steps == 3);
    }
}

TEST_CASE("catalog lists every experiment with its figure") {
    const auto& catalog = experiment_catalog();
    std::vector<std::string> ids;
    for (const auto& e : catalog) {
        ids.push_back(e.id);
        CHECK_FALSE(e.figure.empty());
        CHECK_FALSE(e.description.empty());
    }
    for (const std::string& id :
         {"fig1a", "fig1b", "fig2", "fig3", "sfig4", "sfig5", "sfig6"})
        CHECK(std::count(ids.begin(), ids.end(), id) == 1);
}

TEST_CASE("budget report") {
    SUBCASE("simulated-time conversion") {
        const BudgetReport b = emit_budget(2000.0, 2, 3);
        CHECK(std::abs(b.simulated_time_us - 318.3) < 1.0);
        CHECK(b.protocol_time_us > 500.0);
        CHECK(b.protocol_time_us < 2000.0);
        CHECK(b.rotations == 8);
        CHECK(b.term_exponentials == 12);
    }

    SUBCASE("no steps, no protocol") {
        const BudgetReport b = emit_budget(2000.0, 0, 3);
        CHECK(b.rotations == 0);
        CHECK(b.protocol_time_us == 0.0);
        CHECK(b.term_exponentials == 0);
    }

    SUBCASE("gate bound attached when parameters are supplied") {
        HolsteinParams p{1.0, 0.0, 0.0, 2, 1};
        const BudgetReport b = emit_budget(1.0, 2, 3, &p);
        CHECK(b.gate_bound == 3898);
    }
}

TEST_CASE("unknown experiment id is rejected") {
    ExperimentConfig cfg;
    cfg.id = "fig9";
    CHECK_THROWS_AS(run_experiment(cfg), UnknownExperimentError);
}

TEST_CASE("fig1a experiment writes deterministic CSV and manifest") {
    TempDir dir("polarion_fig1a_test");
    ExperimentConfig cfg;
    cfg.id = "fig1a";
    cfg.out_dir = dir.path.string();
    cfg.cutoff = 2;  // keep the unit test light
    run_experiment(cfg);

    const std::string csv = slurp(dir.path / "fig1a.csv");
    CHECK(csv.find("time,loss_g_0_1h,loss_g_0_2h,loss_g_0_3h") != std::string::npos);
    const std::string manifest = slurp(dir.path / "manifest.txt");
    CHECK(manifest.find("cutoff = 2") != std::string::npos);
    CHECK(manifest.find("simulated_time_us") != std::string::npos);

    run_experiment(cfg);
    CHECK(slurp(dir.path / "fig1a.csv") == csv);  // byte-identical rerun
}

TEST_CASE("parallel sweep matches the sequential run") {
    const IdealSweepResult seq = run_fig1a(2, 4, 500.0, 250.0, false);
    const IdealSweepResult par = run_fig1a(2, 4, 500.0, 250.0, true);
    REQUIRE(seq.loss.size() == par.loss.size());
    for (std::size_t k = 0; k < seq.loss.size(); ++k)
        for (std::size_t i = 0; i < seq.loss[k].size(); ++i)
            CHECK(seq.loss[k][i] == par.loss[k][i]);
}

TEST_CASE("holstein pulse core runs on a reduced configuration") {
    // one cheap (r, t) point at a small cutoff; pulse loss stays above the
    // ideal-Trotter loss and both stay small
    const auto points = run_holstein_pulse(3, {1}, {500.0}, 2, true);
    REQUIRE(points.size() == 1);
    CHECK(points[0].loss_ideal >= 0.0);
    CHECK(points[0].loss_ideal < 0.1);
    CHECK(points[0].loss_pulse < 0.1);
    CHECK(points[0].loss_pulse > points[0].loss_ideal - 1e-6);
}
