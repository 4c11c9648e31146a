#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "fhr/commands.hpp"
#include "fhr/errors.hpp"
#include "fhr/run_config.hpp"

namespace cli = fhr::cli;

namespace {

cli::Settings parse(const std::string& text) {
    std::istringstream in(text);
    return cli::load_settings(in, "test");
}

std::string run(cli::Command c, const cli::Settings& s, int* code = nullptr) {
    std::ostringstream out;
    const int rc = cli::run_command(cli::resolve(c, s), out);
    if (code) *code = rc;
    return out.str();
}

int data_rows(const std::string& csv) {
    int n = 0;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        ++n;
    }
    return n;
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

cli::Settings small_identity_grid() {
    cli::Settings s = cli::Settings::defaults();
    s.set("grid.x_min", "-15");
    s.set("grid.x_max", "15");
    s.set("grid.nx", "151");
    s.set("grid.t_max", "0.5");
    s.set("grid.nt", "50");
    return s;
}

}  // namespace

TEST(Settings, ParsesSectionsAndComments) {
    const auto s = parse("# comment\n[model]\nD = 0.5\n; other\n[grid]\nnx=11\n");
    EXPECT_EQ(s.get("model.D"), "0.5");
    EXPECT_EQ(s.integer("grid.nx"), 11);
    EXPECT_EQ(s.get("model.a"), "0.5");
}

TEST(Settings, UnknownKeyNamesTheField) {
    try {
        parse("[model]\nDD = 1\n");
        FAIL();
    } catch (const fhr::ConfigError& e) {
        EXPECT_EQ(e.field(), "model.DD");
    }
    cli::Settings s = cli::Settings::defaults();
    EXPECT_THROW(cli::apply_override(s, "model.D"), fhr::ConfigError);
    EXPECT_THROW(cli::apply_override(s, "nosuch.key=1"), fhr::ConfigError);
    cli::apply_override(s, " model.D = 2 ");
    EXPECT_EQ(s.number("model.D"), 2.0);
}

TEST(Settings, BadValuesNameTheField) {
    cli::Settings s = cli::Settings::defaults();
    s.set("model.D", "abc");
    try {
        cli::resolve(cli::Command::kernel, s);
        FAIL();
    } catch (const fhr::ConfigError& e) {
        EXPECT_EQ(e.field(), "model.D");
    }
    s = cli::Settings::defaults();
    s.set("model.D", "-1");
    EXPECT_THROW(cli::resolve(cli::Command::kernel, s), fhr::ConfigError);
    s = cli::Settings::defaults();
    s.set("grid.nx", "10.5");
    EXPECT_THROW(cli::resolve(cli::Command::solve, s), fhr::ConfigError);
    s = cli::Settings::defaults();
    s.set("solve.slices", "7");
    EXPECT_THROW(cli::resolve(cli::Command::solve, s), fhr::ConfigError);
    EXPECT_THROW(cli::parse_command("plot"), fhr::ConfigError);
}

TEST(Settings, Profiles) {
    EXPECT_DOUBLE_EQ(cli::parse_profile("gaussian(2, 0.5, 1)", "f")(1.5), 2.0 * std::exp(-1.0));
    EXPECT_DOUBLE_EQ(cli::parse_profile("constant(0.3)", "f")(7.0), 0.3);
    EXPECT_EQ(cli::parse_profile("zero", "f")(1.0), 0.0);
    EXPECT_THROW(cli::parse_profile("sin(1)", "f"), fhr::ConfigError);
    EXPECT_THROW(cli::parse_profile("gaussian(1, 0, 0)", "f"), fhr::ConfigError);
    EXPECT_THROW(cli::parse_profile("gaussian(1, 2)", "f"), fhr::ConfigError);
}

TEST(Fnv1a, KnownVectors) {
    EXPECT_EQ(cli::fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(cli::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(KernelCommand, SinglePoint) {
    const std::string csv = run(cli::Command::kernel, cli::Settings::defaults());
    EXPECT_EQ(data_rows(csv), 1);
    EXPECT_TRUE(contains(csv, "x,t,H1,H2,H,K_eps,K_delta,err_est\n"));
    EXPECT_TRUE(contains(csv, "# config_hash = 0x"));
}

TEST(KernelCommand, EpsZeroMakesHEqualH1) {
    cli::Settings s = cli::Settings::defaults();
    s.set("model.eps", "0");
    s.set("model.delta", "0");
    s.set("kernel.nx", "5");
    s.set("kernel.x_min", "0");
    s.set("kernel.x_max", "2");
    std::istringstream in(run(cli::Command::kernel, s));
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) f.push_back(c);
        EXPECT_EQ(f[2], f[4]);
        ++checked;
    }
    EXPECT_EQ(checked, 5);
}

TEST(KernelCommand, GridIsDeterministic) {
    cli::Settings s = cli::Settings::defaults();
    s.set("kernel.x_min", "-5");
    s.set("kernel.x_max", "5");
    s.set("kernel.nx", "51");
    s.set("kernel.t_min", "0.1");
    s.set("kernel.t_max", "2.1");
    s.set("kernel.nt", "21");
    const std::string a = run(cli::Command::kernel, s);
    EXPECT_EQ(data_rows(a), 1071);
    EXPECT_EQ(a, run(cli::Command::kernel, s));
}

TEST(Output, EmbeddedConfigReproducesTheRun) {
    cli::Settings s = cli::Settings::defaults();
    s.set("kernel.nx", "3");
    s.set("kernel.x_max", "2");
    s.set("model.a", "0.25");
    const std::string a = run(cli::Command::kernel, s);
    const cli::Settings again = parse(a);
    EXPECT_EQ(again.canonical(), s.canonical());
    EXPECT_EQ(run(cli::Command::kernel, again), a);
}

TEST(VerifyCommand, FaultInjectionFails) {
    cli::Settings s = small_identity_grid();
    s.set("verify.suites", "laplace");
    int code = -1;
    run(cli::Command::verify, s, &code);
    EXPECT_EQ(code, 0);
    s.set("verify.fault", "sigma");
    const std::string csv = run(cli::Command::verify, s, &code);
    EXPECT_NE(code, 0);
    EXPECT_TRUE(contains(csv, "\"laplace_transform\""));
    EXPECT_TRUE(contains(csv, "FAIL"));
}

TEST(VerifyCommand, DeltaZeroIdentitiesPass) {
    cli::Settings s = small_identity_grid();
    s.set("model.delta", "0");
    s.set("verify.suites", "identities");
    int code = -1;
    const std::string csv = run(cli::Command::verify, s, &code);
    EXPECT_EQ(code, 0) << csv;
}

TEST(VerifyCommand, LiteralFormFailsTheTransformCheck) {
    cli::Settings s = small_identity_grid();
    s.set("verify.suites", "laplace");
    s.set("verify.form", "literal");
    int code = -1;
    run(cli::Command::verify, s, &code);
    EXPECT_EQ(code, 1);
}

TEST(WaveCommand, TripleAndRejection) {
    cli::Settings s = cli::Settings::defaults();
    s.set("wave.D", "0.01, 0.02, 0.05, 0.5");
    s.set("wave.nz", "11");
    int code = -1;
    const std::string csv = run(cli::Command::wave, s, &code);
    EXPECT_EQ(code, 0);
    EXPECT_TRUE(contains(csv, "# D = 0.01: no solution"));
    EXPECT_EQ(data_rows(csv), 33);
    EXPECT_TRUE(contains(csv, "# admissibility root = 0.01826"));
}

TEST(WaveCommand, ShiftedProfile) {
    cli::Settings s = cli::Settings::defaults();
    s.set("wave.D", "0.5");
    s.set("wave.z_min", "-2");
    s.set("wave.z_max", "2");
    s.set("wave.nz", "5");
    const std::string a = run(cli::Command::wave, s);
    s.set("wave.z0", "1");
    s.set("wave.z_min", "-1");
    s.set("wave.z_max", "3");
    const std::string b = run(cli::Command::wave, s);
    auto values = [](const std::string& csv) {
        std::vector<std::string> u;
        std::istringstream in(csv);
        for (std::string line; std::getline(in, line);) {
            if (line.empty() || line[0] == '#' || line[0] == 'D') continue;
            u.push_back(line.substr(line.rfind(',') + 1));
        }
        return u;
    };
    EXPECT_EQ(values(a), values(b));
}

TEST(SolveCommand, ZeroDataGivesZeroSlices) {
    cli::Settings s = cli::Settings::defaults();
    s.set("grid.x_min", "-5");
    s.set("grid.x_max", "5");
    s.set("grid.nx", "51");
    s.set("grid.t_max", "0.5");
    s.set("grid.nt", "20");
    s.set("solve.u0", "zero");
    int code = -1;
    const std::string csv = run(cli::Command::solve, s, &code);
    EXPECT_EQ(code, 0);
    EXPECT_TRUE(contains(csv, "rel_l2_u = 0, rel_l2_w = 0, rel_l2_y = 0"));
}

TEST(SolveCommand, LargeAmplitudeIsFlagged) {
    cli::Settings s = cli::Settings::defaults();
    s.set("grid.x_min", "-10");
    s.set("grid.x_max", "10");
    s.set("grid.nx", "101");
    s.set("grid.nt", "40");
    s.set("solve.u0", "gaussian(5, 1, 0)");
    int code = -1;
    const std::string csv = run(cli::Command::solve, s, &code);
    EXPECT_EQ(code, 1);
    EXPECT_TRUE(contains(csv, "# picard: diverged") || contains(csv, "# picard: not converged"));
    EXPECT_EQ(data_rows(csv), 5 * 101);
}

TEST(SweepCommand, RowsPerValue) {
    cli::Settings s = cli::Settings::defaults();
    s.set("sweep.param", "delta");
    s.set("sweep.values", "0, 0.5, 1");
    const std::string csv = run(cli::Command::sweep, s);
    EXPECT_EQ(data_rows(csv), 3);
    EXPECT_TRUE(contains(csv, "delta,H1,H2,H,K_eps,K_delta,mass_volterra\n"));
    s.set("sweep.param", "zeta");
    EXPECT_THROW(cli::resolve(cli::Command::sweep, s), fhr::ConfigError);
}
