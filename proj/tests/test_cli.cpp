#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string line = std::string("'") + VAXNET_CLI + "' " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(line.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;)
        r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& row) {
    std::vector<std::string> cells;
    std::istringstream in(row);
    for (std::string c; std::getline(in, c, ',');)
        cells.push_back(c);
    return cells;
}

// Value following `key ` in the text report.
double field(const std::string& text, const std::string& key) {
    for (const std::string& l : lines(text))
        if (l.rfind(key + " ", 0) == 0)
            return std::stod(l.substr(key.size() + 1));
    FAIL("no field " << key);
    return NAN;
}

struct TempDir {
    fs::path path = fs::temp_directory_path() / ("vaxnet_cli_" + std::to_string(getpid()));
    TempDir() { fs::create_directories(path); }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

} // namespace

TEST_SUITE("cli") {

TEST_CASE("threshold reports") {
    const Result iid = run("threshold --degree 'poisson(6)' --gamma 0.5");
    CHECK(iid.status == 0);
    CHECK(field(iid.out, "r0") == doctest::Approx(3.0).epsilon(1e-9));

    const Result flat = run("threshold --degree 'poisson(6)' --g 'indicator(0)'");
    for (const char* key : {"r0_deg", "r0_h1", "r0_h2"})
        CHECK(field(flat.out, key) == doctest::Approx(6.0).epsilon(1e-9));

    const Result decay = run("threshold --degree 'powerlaw(3.5,mean=4)' --g 'power(1)'");
    CHECK(field(decay.out, "r0_deg") < 1.0);
    CHECK(field(decay.out, "r0_h1") > field(decay.out, "r0_deg"));

    const Result csv = run("threshold --degree 'poisson(6)' --weights 'beta(0.5,2.5)' --format csv");
    const auto rows = lines(csv.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].rfind("# vaxnet threshold", 0) == 0);
    CHECK(rows[1] == "degree,weights,regime,r0,r0_deg,r0_h1,r0_h2");
}

TEST_CASE("exit codes") {
    CHECK(run("").status == 2);
    CHECK(run("threshold --degree 'poisson(6'").status == 2);
    CHECK(run("threshold --no-such-flag 1").status == 2);
    CHECK(run("threshold --degree 'poisson(-1)' --gamma 0.5").status == 3);
    CHECK(run("validate --n 10").status == 3);
    CHECK(run("sweep coverage --degree 'poisson(6)' --format json").status == 2);
    CHECK(run("threshold --config /nonexistent/vaxnet.cfg").status == 2);
}

TEST_CASE("config file errors name the line") {
    TempDir dir;
    const std::string cfg = dir.write("bad.cfg", "degree = poisson(6)\nnot a setting\n");
    const std::string line = std::string("'") + VAXNET_CLI + "' threshold --config '" + cfg + "' 2>&1";
    FILE* pipe = popen(line.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512] = {};
    const std::size_t got = fread(buf, 1, sizeof buf - 1, pipe);
    pclose(pipe);
    CHECK(std::string(buf, got).find("line 2") != std::string::npos);
}

TEST_CASE("flags override config values and the comment line echoes the seed") {
    TempDir dir;
    const std::string cfg = dir.write("run.cfg", "degree = poisson(3)\nweights = uniform\n");
    const Result r = run("simulate --config '" + cfg + "' --degree 'poisson(6)' --n 2000 --runs 20 --seed 5");
    REQUIRE(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].find("degree=poisson(6)") != std::string::npos);
    CHECK(rows[0].find("seed=5") != std::string::npos);
    CHECK(rows[1] == "config_id,analytic_r,estimated_r,ci_low,ci_high,outbreak_prob,coverage");
    const auto cells = split(rows[2]);
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[1]) == doctest::Approx(3.0));

    const Result defaulted = run("generate --degree 'fixed(1)' --n 4 --format csv");
    CHECK(lines(defaulted.out)[0].find("seed=1") != std::string::npos);
}

TEST_CASE("repeated and multi-threaded runs are byte-identical") {
    const std::string args = "simulate --degree 'poisson(6)' --strategy acq --parameter 1 --n 5000 --runs 200";
    const Result a = run(args + " --seed 3 --threads 1");
    const Result b = run(args + " --seed 3 --threads 1");
    const Result c = run(args + " --seed 3 --threads 8");
    const Result d = run(args + " --seed 4 --threads 1");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out != d.out);

    const std::string gen = "generate --degree 'poisson(4)' --weights 'beta(0.5,2.5)' --n 500 --seed 2 --format csv";
    CHECK(run(gen).out == run(gen).out);
}

TEST_CASE("empty grids give header-only output") {
    const Result r = run("sweep coverage --degree 'poisson(6)' --grid ''");
    CHECK(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1] == "coverage,r_uniform,r_acq,r_weight");
}

TEST_CASE("failed commands leave no output file") {
    TempDir dir;
    const fs::path target = dir.path / "out.csv";
    CHECK(run("sweep coverage --degree 'poisson(6)' --weights 'normal(1)' --out '" + target.string() + "'").status ==
          2);
    CHECK_FALSE(fs::exists(target));
    CHECK(run("sweep tau --degree 'poisson(6)' --grid 0,1 --out '" + target.string() + "'").status == 0);
    CHECK(fs::exists(target));
}

TEST_CASE("coverage sweep keeps the strategies ordered") {
    const Result r = run("sweep coverage --degree 'poisson(6)' --weights uniform --grid 0.05:0.6:0.05");
    REQUIRE(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 14);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        REQUIRE(cells.size() == 4);
        INFO(rows[i]);
        CHECK(std::stod(cells[1]) > std::stod(cells[2]));
        CHECK(std::stod(cells[2]) > std::stod(cells[3]));
    }
}

TEST_CASE("two-point sampling needs fewer samplers than acquaintance") {
    const Result r = run("sweep sampled --degree 'powerlaw(3.5,mean=14)' --weights 'twopoint(0.1,1,pa=0.5)' "
                         "--grid 0.1,0.2,0.3 --n 10000 --replicates 2");
    REQUIRE(r.status == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 8);
    CHECK(rows[1] == "sampled_fraction,coverage,strategy");
    std::vector<double> acq, two;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        REQUIRE(cells.size() == 3);
        (cells[2] == "acq" ? acq : two).push_back(std::stod(cells[0]));
    }
    REQUIRE(acq.size() == 3);
    REQUIRE(two.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(two[i] < acq[i]);
}

TEST_CASE("validate self-test") {
    TempDir dir;
    const std::string good = dir.write("good.cfg", R"(degree = poisson(6)
weights = uniform
n = 20000
runs = 400
seed = 11

[none]
strategy = none

[silent]
weights = twopoint(0, 1, pa=1)
strategy = none
)");
    const Result ok = run("validate --config '" + good + "'");
    CHECK(ok.status == 0);
    auto rows = lines(ok.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1] == "config_id,analytic_r,estimated_r,ci_low,ci_high,outbreak_prob,coverage,analytic_coverage,pass");
    CHECK(split(rows[2]).back() == "1");
    const auto silent = split(rows[3]);
    CHECK(silent[0] == "silent");
    CHECK(std::stod(silent[1]) == 0.0);
    CHECK(std::stod(silent[2]) == 0.0);
    CHECK(silent.back() == "1");

    const std::string bad = dir.write("bad.cfg", R"(degree = poisson(6)
n = 20000
runs = 400

[wrong]
strategy = uniform
parameter = 0.3
analytic_gamma = 0.9
)");
    const Result flagged = run("validate --config '" + bad + "'");
    CHECK(flagged.status == 4);
    rows = lines(flagged.out);
    REQUIRE(rows.size() == 3);
    CHECK(split(rows[2]).back() == "0");
}

}
