#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qheat/cli.hpp"

using namespace qheat;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("qheat_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
    const auto errfile = scratch() / "stderr.txt";
    std::string cmd = env + " " + QHEAT_CLI_PATH + " " + args + " 2>" + errfile.string();
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(errfile);
    return r;
}

// row 0 is the header
std::string cell(const std::string& csv, int row, int col) {
    std::istringstream in(csv);
    std::string line;
    for (int i = 0; i <= row; ++i) std::getline(in, line);
    std::istringstream ls(line);
    std::string c;
    for (int i = 0; i <= col; ++i) std::getline(ls, c, ',');
    return c;
}

}  // namespace

TEST_CASE("heat values") {
    auto r = run("heat --model suq2 --r 1 --t 1");
    CHECK(r.code == 0);
    CHECK(std::stod(cell(r.out, 1, 1)) == doctest::Approx(0.4982122).epsilon(1e-6));
    r = run("heat --model nctorus --N 2 --Tf 1 --t 1");
    CHECK(std::stod(cell(r.out, 1, 1)) == doctest::Approx(-3.1422434).epsilon(1e-6));
    r = run("heat --model torus --N 0 --t 0.3");
    CHECK(std::stod(cell(r.out, 1, 1)) == 1.0);
    r = run("heat --model toeplitz --t-grid 0.1:1:4");
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("zeta values and parsing") {
    auto r = run("zeta --model toeplitz --gauge separable --z 0");
    CHECK(r.code == 0);
    CHECK(std::stod(cell(r.out, 1, 3)) == doctest::Approx(1.0 / 72.0).epsilon(1e-12));
    // negative and complex values reach the parser intact
    r = run("zeta --model heisenberg --z -6 --z -6.5+1i");
    CHECK(r.code == 0);
    CHECK(cell(r.out, 1, 0) == "-6");
    CHECK(cell(r.out, 2, 1) == "1");
    // at a pole: finite part and residue, status column says so
    r = run("zeta --model heisenberg --z -5");
    CHECK(cell(r.out, 1, 2) == "pole");
    CHECK(std::stod(cell(r.out, 1, 7)) == doctest::Approx(8.37758041).epsilon(1e-8));
    // no z values: header only
    r = run("zeta --model torus --N 2");
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
}

TEST_CASE("exit codes") {
    CHECK(run("heat --model bogus --t 1").code == 2);
    CHECK(run("heat --model toeplitz --t 0").code == 2);
    CHECK(run("heat --no-such-flag").code == 2);
    CHECK(run("heat --model suq2 --r -1 --t 1").code == 2);
    CHECK(run("oracle --model toeplitz").code == 0);
    CHECK(run("reproduce --only toeplitz-heat").code == 0);
    CHECK(run("reproduce --only no-such-criterion").code == 2);
}

TEST_CASE("reproduce prints one line per criterion") {
    auto r = run("reproduce --only toeplitz-heat --only special-functions");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS  2 toeplitz-heat") != std::string::npos);
    CHECK(r.out.find("PASS  9 special-functions") != std::string::npos);
}

TEST_CASE("config file, flags win") {
    auto cfg = scratch() / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# sample\nmodel = suq2\nr = 2\nt = 0.5\n";
    }
    auto a = run("heat --config " + cfg.string());
    CHECK(a.code == 0);
    CHECK(std::stod(cell(a.out, 1, 1)) == doctest::Approx(0.4982122).epsilon(1e-6));
    auto b = run("heat --config " + cfg.string() + " --r 1 --t 1");
    CHECK(std::stod(cell(b.out, 1, 1)) == doctest::Approx(0.4982122).epsilon(1e-6));
    auto c = run("heat --config " + cfg.string() + " --model toeplitz --t 1");
    CHECK(std::stod(cell(c.out, 1, 1)) == doctest::Approx(0.4814372).epsilon(1e-6));
    CHECK(run("heat --config " + (scratch() / "missing.cfg").string()).code == 2);
}

TEST_CASE("json output") {
    auto out = scratch() / "z.json";
    auto r = run("zeta --model heisenberg --z -6 --format json --out " + out.string());
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["schema"] == "qheat/1");
    CHECK(j["command"] == "zeta");
    CHECK(j["columns"].size() == j["rows"][0].size());
    CHECK(j["meta"]["model"] == "heisenberg");
    CHECK(j["rows"][0][3].get<double>() == doctest::Approx(-11.0215439732).epsilon(1e-10));
}

TEST_CASE("deterministic output") {
    const std::string args = "asym --model toeplitz --K 2";
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto c = run("oracle --model suq2", "OMP_NUM_THREADS=1"), d = run("oracle --model suq2", "OMP_NUM_THREADS=4");
    CHECK(c.out == d.out);
}

TEST_CASE("precision override falls back with a warning") {
    auto r = run("heat --model torus --N 1 --t 1", "QHEAT_PRECISION_BITS=113");
    CHECK(r.code == 0);
    CHECK(r.err.find("53") != std::string::npos);
    auto plain = run("heat --model torus --N 1 --t 1");
    CHECK(r.out == plain.out);
}

TEST_CASE("library-level parsing") {
    CHECK(parse_complex("2") == cplx(2.0));
    CHECK(parse_complex("-0.5") == cplx(-0.5));
    CHECK(parse_complex("0.5+1i") == cplx(0.5, 1.0));
    CHECK(parse_complex("3-2i") == cplx(3.0, -2.0));
    CHECK(parse_complex("2i") == cplx(0.0, 2.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("1e-3-2e-1i") == cplx(1e-3, -0.2));
    CHECK_THROWS_AS(parse_complex("abc"), UsageError);
    auto g = parse_t_grid("0.01:1:3");
    REQUIRE(g.size() == 3u);
    CHECK(g[1] == doctest::Approx(0.1));
    auto l = parse_t_grid("1:2:3:lin");
    CHECK(l[1] == doctest::Approx(1.5));
    CHECK_THROWS_AS(parse_t_grid("1:2"), UsageError);
    CHECK_THROWS_AS(parse_t_grid("0:1:3"), UsageError);
}
