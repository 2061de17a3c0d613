#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "egain/errors.hpp"
#include "egain/matrix_io.hpp"
#include "egain/report.hpp"

using namespace egain;
using namespace egain::report;
using io::Json;

namespace {

std::filesystem::path scratch(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / "egain-test-report";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write_json(const std::string &name, const Json &j) {
    const auto path = scratch(name);
    std::ofstream(path) << j.dump();
    return path.string();
}

RunConfig config(const std::string &command) {
    RunConfig c;
    c.command = command;
    return c;
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for(std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("matrix json round trip") {
    Matrix m(2, 3);
    m << 1, 2, 3, 4, 5, 6.5;
    CHECK(io::matrix_from_json(io::to_json(m)) == m);
    CMatrix c(1, 2);
    c << Complex(1, 2), Complex(0, -1);
    CHECK(io::complex_matrix_from_json(io::to_json(c)) == c);
    CHECK(io::complex_matrix_from_json(Json::parse("[[1, [0, 2]]]"))(0, 1) == Complex(0, 2));

    CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[1, 2], [3]]")), InvalidArgument);
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[]")), InvalidArgument);
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[1, \"x\"]]")), InvalidArgument);
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse("{\"a\": 1}")), InvalidArgument);
    CHECK_THROWS_AS(io::read_json_file(scratch("missing.json").string()), InvalidArgument);

    const auto bad = scratch("bad.json");
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_AS(io::read_json_file(bad.string()), InvalidArgument);
}

TEST_CASE("state and channel files") {
    const Json st{{"s", 1}, {"alpha", {{1.0, 0.0}, {0.0, 1.0}}}};
    const GaussianState g = io::state_from_json(st);
    CHECK(g.alpha()(0, 0) == 1.0);
    CHECK(g.mean().isZero());
    CHECK(io::state_from_json(io::to_json(g)).alpha() == g.alpha());
    CHECK_THROWS_AS(io::state_from_json(Json{{"alpha", {{1.0}}}}), InvalidArgument);

    const Json ch{{"s", 1}, {"K", {{0.5, 0.0}, {0.0, 0.5}}}, {"mu", {{0.375, 0.0}, {0.0, 0.375}}}};
    const GaussianChannel c = io::channel_from_json(ch);
    CHECK(minimal_entropy_gain(c) == 2 * std::log(0.5));
    CHECK(io::channel_from_json(io::to_json(c)).K() == c.K());
}

TEST_CASE("atomic write") {
    const auto path = scratch("atomic.txt");
    io::write_file_atomic(path.string(), "hello\n");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    CHECK(s == "hello");
    CHECK(!std::filesystem::exists(path.string() + ".tmp"));
}

TEST_CASE("tolerance from environment") {
    ::unsetenv("EGAIN_TOL");
    CHECK(default_tolerance() == kDefaultTolerance);
    ::setenv("EGAIN_TOL", "1e-6", 1);
    CHECK(default_tolerance() == 1e-6);
    ::setenv("EGAIN_TOL", "garbage", 1);
    CHECK(default_tolerance() == kDefaultTolerance);
    ::setenv("EGAIN_TOL", "-1", 1);
    CHECK(default_tolerance() == kDefaultTolerance);
    ::unsetenv("EGAIN_TOL");
}

TEST_CASE("gain command") {
    RunConfig c = config("gain");
    c.preset = "attenuator";
    c.k = 0.5;
    c.seed = 42;
    const CommandResult r = run(c);
    CHECK(r.exit_code == kSuccess);
    const Json j = Json::parse(r.output);
    CHECK(j["G_closed_form"].get<double>() == 2 * std::log(0.5));
    CHECK(j["lower_bound"].get<double>() == doctest::Approx(2 * std::log(0.5)));
    CHECK(j["seed"] == 42);
    CHECK(j["strict"] == false);
    CHECK(j["regular"] == true);
    CHECK(j["admissibility"]["verdict"] == "positive_semidefinite");
    CHECK(run(c).output == r.output);

    RunConfig noise = config("gain");
    noise.preset = "classical-noise";
    CHECK(Json::parse(run(noise).output)["G_closed_form"].get<double>() == 0.0);

    SUBCASE("singular K from file") {
        RunConfig f = config("gain");
        f.channel_file = write_json("singular.json", Json{{"s", 1}, {"K", {{0, 0}, {0, 0}}}, {"mu", {{0.5, 0}, {0, 0.5}}}});
        const CommandResult s = run(f);
        CHECK(s.exit_code == kInadmissible);
        CHECK(Json::parse(s.output)["error"] == "non-regular");
    }
    SUBCASE("inadmissible channel from file") {
        RunConfig f = config("gain");
        f.channel_file = write_json("inadmissible.json", Json{{"s", 1}, {"K", {{0.5, 0}, {0, 0.5}}}, {"mu", {{0, 0}, {0, 0}}}});
        const CommandResult s = run(f);
        CHECK(s.exit_code == kInadmissible);
        const Json e = Json::parse(s.output);
        CHECK(e["error"] == "inadmissible");
        CHECK(e["certificate"]["verdict"] == "indefinite");
        CHECK(e["certificate"]["min_eigenvalue"].get<double>() == doctest::Approx(-0.375));
    }
    SUBCASE("missing channel") {
        CHECK(run(config("gain")).exit_code == kUsage);
        CHECK(run(config("nope")).exit_code == kUsage);
    }
}

TEST_CASE("sweep command") {
    RunConfig c = config("sweep");
    c.preset = "attenuator";
    c.k = 0.5;
    c.seed = 7;
    const CommandResult r = run(c);
    CHECK(r.exit_code == kSuccess);
    const auto ls = lines(r.output);
    REQUIRE(ls.size() == 27);
    CHECK(ls[0].rfind("# command=sweep seed=7", 0) == 0);
    CHECK(ls[1] == "beta,gain,gap_to_closed_form");
    CHECK(ls[2].rfind("1,", 0) == 0);
    const double last_gap = std::stod(ls.back().substr(ls.back().rfind(',') + 1));
    CHECK(last_gap > 0.0);
    CHECK(last_gap < 1e-3);
    CHECK(run(c).output == r.output);

    RunConfig id = config("sweep");
    id.channel_file = write_json("identity.json", Json{{"s", 1}, {"K", {{1, 0}, {0, 1}}}, {"mu", {{0, 0}, {0, 0}}}});
    for(std::size_t i = 2; i < 27; ++i) {
        const auto l = lines(run(id).output)[i];
        CHECK(std::abs(std::stod(l.substr(l.rfind(',') + 1))) < 1e-12);
    }

    RunConfig coarse = c;
    coarse.beta_min = 0.1;
    coarse.beta_points = 2;
    coarse.adaptive = false;
    const CommandResult w = run(coarse);
    CHECK(w.output.find("# warning") != std::string::npos);
    CHECK(!w.message.empty());

    RunConfig eps = c;
    eps.epsilon_file = write_json("eps.json", Json{{2.0, 0.1}, {0.1, 1.0}});
    CHECK(run(eps).exit_code == kSuccess);
}

TEST_CASE("fock command") {
    RunConfig c = config("fock");
    c.preset = "attenuator";
    c.k = 0.7;
    c.trials = 10;
    c.seed = 3;
    const CommandResult r = run(c);
    CHECK(r.exit_code == kSuccess);
    const Json j = Json::parse(r.output);
    CHECK(j["summary"]["holds_count"] == 10);
    CHECK(j["records"].size() == 10);
    CHECK(j["records"][0].contains("deficit"));
    CHECK(j["seed"] == 3);
    CHECK(run(c).output == r.output);

    RunConfig small = c;
    small.preset = "amplifier";
    small.k = 1.5;
    small.dim = 12;
    CHECK(run(small).exit_code == kUnreliable);

    RunConfig p3 = c;
    p3.check = "prop3";
    const CommandResult v = run(p3);
    CHECK(v.exit_code == kHypothesisViolation);
    CHECK(Json::parse(v.output)["error"] == "hypothesis-violation");

    RunConfig p3ok = c;
    p3ok.check = "prop3";
    p3ok.extra_noise = 0.3;
    p3ok.states = "thermal";
    p3ok.trials = 3;
    const Json t = Json::parse(run(p3ok).output);
    CHECK(t["summary"]["max_abs_gap"].get<double>() < 1e-4);

    RunConfig dumped = c;
    dumped.trials = 1;
    dumped.dump_states = true;
    CHECK(Json::parse(run(dumped).output)["records"][0]["input_rho"].size() == 60);

    RunConfig bad = c;
    bad.check = "prop2";
    CHECK(run(bad).exit_code == kUsage);
}

TEST_CASE("classical command") {
    RunConfig c = config("classical");
    c.k_max = 8;
    const CommandResult r = run(c);
    CHECK(r.exit_code == kSuccess);
    const auto ls = lines(r.output);
    CHECK(ls[1] == "k,N,H,doubly_stochastic,H_row_1,H_row_5,H_row_100");
    CHECK(ls[2] == "1,2,0.5562575821219313,true,0.5562575821219313,,");
    CHECK(ls.back().rfind("# tail", 0) == 0);
    RunConfig big = c;
    big.k_max = 40;
    CHECK(run(big).exit_code == kUsage);
}

TEST_CASE("williamson command") {
    RunConfig c = config("williamson");
    c.matrix_file = write_json("alpha.json", Json{{2.0, 0.0}, {0.0, 0.5}});
    const Json j = Json::parse(run(c).output);
    CHECK(j["s"] == 1);
    CHECK(j["nu"][0].get<double>() == doctest::Approx(1.0));
    CHECK(j["admissible"] == true);
    CHECK(j["nondegenerate"] == true);

    RunConfig vac = config("williamson");
    vac.matrix_file = write_json("vac.json", Json{{0.5, 0.0}, {0.0, 0.5}});
    const Json v = Json::parse(run(vac).output);
    CHECK(v["admissible"] == true);
    CHECK(v["nondegenerate"] == false);

    RunConfig low = config("williamson");
    low.matrix_file = write_json("low.json", Json{{0.25, 0.0}, {0.0, 0.25}});
    const CommandResult lr = run(low);
    CHECK(lr.exit_code == kInadmissible);
    CHECK(Json::parse(lr.output)["admissible"] == false);
    CHECK(Json::parse(lr.output)["nu"][0].get<double>() == doctest::Approx(0.25));

    RunConfig bad = config("williamson");
    bad.matrix_file = write_json("odd.json", Json{{1.0}});
    CHECK(run(bad).exit_code == kUsage);
}
