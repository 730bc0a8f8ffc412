#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::temp_directory_path() / "lambdatrap_cli_tests";

int run(const std::string& args) {
    const std::string cmd = std::string(LAMBDATRAP_BIN) + " " + args + " >" +
                            (work / "stdout.txt").string() + " 2>" + (work / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path write_cfg(const std::string& name, const std::string& text) {
    fs::create_directories(work);
    const fs::path p = work / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

struct Fresh {
    Fresh() {
        fs::remove_all(work);
        fs::create_directories(work);
    }
};

}  // namespace

TEST_CASE_FIXTURE(Fresh, "simulate writes identical bytes on repeat runs") {
    const auto cfg = write_cfg("run.cfg", "g1 = 1\ng2 = 0.5\nDelta = 2\nt1 = 0.5\ndt = 0.01\ninit = dark\n");
    const auto a = work / "a";
    const auto b = work / "b";
    REQUIRE(run("--config " + cfg.string() + " --out " + a.string() + " --format both simulate") == 0);
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + b.string() + " --format both") == 0);
    for (const char* f : {"trajectory.csv", "trajectory.json", "run.cfg"}) {
        CHECK(fs::exists(a / f));
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

TEST_CASE_FIXTURE(Fresh, "usage and config errors exit 1") {
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("simulate") == 1);
    const auto bad = write_cfg("bad.cfg", "g3 = 1.0\n");
    CHECK(run("simulate --config " + bad.string() + " --out " + (work / "x").string()) == 1);
    CHECK(slurp(work / "stderr.txt").find("unknown key 'g3' at line 1") != std::string::npos);
    CHECK_FALSE(fs::exists(work / "x" / "trajectory.csv"));
    CHECK(run("windows --g1 1 --g2 1 --Delta 1 --delta-nu 1") == 1);
    CHECK(run("windows --g1 0 --g2 1 --Delta 1 --out " + work.string()) == 1);
}

TEST_CASE_FIXTURE(Fresh, "step guard exits 2 and writes nothing") {
    const auto cfg = write_cfg("fast.cfg", "g1 = 1000\ng2 = 0.5\nDelta = 2\ndt = 0.01\n");
    CHECK(run("simulate --config " + cfg.string() + " --out " + (work / "y").string()) == 2);
    CHECK(slurp(work / "stderr.txt").find("4*g1*a1") != std::string::npos);
    CHECK_FALSE(fs::exists(work / "y" / "trajectory.csv"));
}

TEST_CASE_FIXTURE(Fresh, "windows prints the table and writes files") {
    REQUIRE(run("windows --g1 1 --g2 1 --delta-nu 1 --n-max 3 --out " + work.string()) == 0);
    const std::string out = slurp(work / "stdout.txt");
    CHECK(out.find("2.50000000000e-01") != std::string::npos);
    CHECK(slurp(work / "windows.csv").rfind("n,t_seconds,Delta_t_rad,residual,branch\n", 0) == 0);

    REQUIRE(run("windows --g1 1 --g2 1 --Delta 0 --out " + work.string()) == 0);
    CHECK(slurp(work / "stdout.txt").find("window: continuous (resonance)") != std::string::npos);
}

TEST_CASE_FIXTURE(Fresh, "windows takes couplings from a config") {
    const auto cfg = write_cfg("w.cfg", "g1 = 1\ng2 = 1\ndelta_nu = 1\n");
    REQUIRE(run("windows --config " + cfg.string() + " --case case2 --n-max 2 --out " + work.string()) == 0);
    CHECK(slurp(work / "stdout.txt").find("7.50000000000e-01") != std::string::npos);
}

TEST_CASE_FIXTURE(Fresh, "sweep and validate") {
    REQUIRE(run("sweep --axis ratio --grid 0.1,0.2,0.4 --Delta 1 --threads 2 --out " + work.string()) == 0);
    const std::string csv = slurp(work / "sweep.csv");
    CHECK(csv.rfind("index,ratio,Delta,first_window_t,residual\n", 0) == 0);
    CHECK(run("sweep --grid 0.2,0.1 --Delta 1 --out " + work.string()) == 1);

    REQUIRE(run("validate --samples 50 --seed 7 --out " + (work / "v1").string()) == 0);
    REQUIRE(run("--seed 7 validate --samples 50 --out " + (work / "v2").string()) == 0);
    CHECK(slurp(work / "v1" / "validation.json") == slurp(work / "v2" / "validation.json"));
    CHECK(slurp(work / "v1" / "validation.txt").find("[component-census]") != std::string::npos);
}
