#include <doctest.h>

#include "steklov/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
}

// Parse "k,value" CSV rows into values by index.
std::vector<double> csv_values(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> vals;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    return vals;
}

int run_cli(const std::vector<std::string>& args) { return steklov::cli::run(args); }

} // namespace

TEST_CASE("cli limit ep1 writes a spectrum with mu_0 = 0 and a manifest") {
    TempDir dir("steklov_cli_ep1");
    write_file(dir.path / "config.json",
               R"({"problem":"ep1","rho":{"kind":"constant","c":1},"L":12,
                   "P1":3.5449077018110318,"P2":3.5449077018110318,"N":1024,"k":5})");
    const int rc = run_cli({"limit", "--config", (dir.path / "config.json").string(), "--out",
                            dir.str()});
    REQUIRE(rc == 0);
    const auto vals = csv_values(slurp(dir.path / "spectrum.csv"));
    REQUIRE(vals.size() == 6);
    CHECK(std::abs(vals[0]) <= 1e-10);
    CHECK(vals[1] == doctest::Approx(0.0416).epsilon(1e-2));
    CHECK(slurp(dir.path / "manifest.json").find("\"command\": \"limit\"") != std::string::npos);
}

TEST_CASE("cli limit roots reproduces the reference first root") {
    TempDir dir("steklov_cli_roots");
    const int rc = run_cli({"limit", "--out", dir.str(), "--set", "problem=roots", "--set",
                            "L=12", "--set", "k=3"});
    REQUIRE(rc == 0);
    const auto w = csv_values(slurp(dir.path / "roots.csv"));
    REQUIRE(w.size() == 3);
    CHECK(w[0] == doctest::Approx(0.2035).epsilon(5e-3));
}

TEST_CASE("cli limit validation failures exit with code 2") {
    TempDir dir("steklov_cli_bad");
    CHECK(run_cli({"limit", "--out", dir.str(), "--set", "problem=ep1", "--set", "L=-1",
                   "--set", "P1=1", "--set", "P2=1"}) == 2);
    // Malformed JSON config.
    write_file(dir.path / "broken.json", "{not json");
    CHECK(run_cli({"limit", "--config", (dir.path / "broken.json").string(), "--out",
                   dir.str()}) == 2);
    // Unknown keys are rejected.
    CHECK(run_cli({"limit", "--out", dir.str(), "--set", "problem=roots", "--set", "L=12",
                   "--set", "bogus=1"}) == 2);
}

TEST_CASE("cli fem disk fixture reproduces the disk Steklov spectrum") {
    TempDir dir("steklov_cli_fem_disk");
    const int rc = run_cli({"fem", "--out", dir.str(), "--set", "fixture=disk", "--set",
                            "h=0.05", "--set", "k=2"});
    REQUIRE(rc == 0);
    const auto sig = csv_values(slurp(dir.path / "spectrum.csv"));
    REQUIRE(sig.size() == 3);
    CHECK(std::abs(sig[0]) <= 1e-9);
    CHECK(sig[1] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(sig[2] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(fs::exists(dir.path / "mesh.json"));
}

TEST_CASE("cli fem dumbbell writes sigma_0 = 0 and midline traces") {
    TempDir dir("steklov_cli_fem_db");
    const int rc = run_cli({"fem", "--out", dir.str(), "--set", "fixture=dumbbell", "--set",
                            "L=4", "--set", "eps=0.1", "--set", "h=0.15", "--set", "k=1"});
    REQUIRE(rc == 0);
    const auto sig = csv_values(slurp(dir.path / "spectrum.csv"));
    CHECK(std::abs(sig[0]) <= 1e-9);
    CHECK(slurp(dir.path / "spectrum.json").find("midline_traces") != std::string::npos);
}

TEST_CASE("cli sweep: needs >= 3 eps and k_max = 0 yields only sigma0") {
    TempDir dir("steklov_cli_sweep");
    CHECK(run_cli({"sweep", "--out", dir.str(), "--set", "L=2", "--set",
                   "eps_list=[0.3,0.2]", "--set", "k=1"}) == 2);

    const int rc = run_cli({"sweep", "--out", dir.str(), "--set", "L=2", "--set",
                            "eps_list=[0.3,0.2,0.15]", "--set", "k=0", "--set", "h=0.25",
                            "--set", "n_arc=16"});
    REQUIRE(rc == 0);
    const std::string csv = slurp(dir.path / "sweep.csv");
    CHECK(csv.rfind("eps,sigma0,mu1,area,perimeter\n", 0) == 0);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        CHECK(std::abs(std::stod(line.substr(c1 + 1, c2 - c1 - 1))) <= 1e-9);
    }
}

TEST_CASE("cli counterexample: limit level and input validation") {
    TempDir dir("steklov_cli_ce");
    REQUIRE(run_cli({"counterexample", "--out", dir.str(), "--set", "L=12"}) == 0);
    const std::string j = slurp(dir.path / "counterexample.json");
    CHECK(j.find("\"chain_holds\": true") != std::string::npos);
    CHECK(slurp(dir.path / "summary.txt").find("threshold") != std::string::npos);
    CHECK(run_cli({"counterexample", "--out", dir.str(), "--set", "L=0"}) == 2);
}

TEST_CASE("cli mesh exports geometry and mesh JSON") {
    TempDir dir("steklov_cli_mesh");
    const int rc = run_cli({"mesh", "--out", dir.str(), "--set", "fixture=dumbbell", "--set",
                            "L=4", "--set", "eps=0.2", "--set", "h=0.25"});
    REQUIRE(rc == 0);
    CHECK(slurp(dir.path / "geometry.json").find("\"TubeMinus\"") != std::string::npos);
    CHECK(slurp(dir.path / "mesh.json").find("\"triangles\"") != std::string::npos);
}

TEST_CASE("cli outputs are byte-identical across reruns") {
    TempDir a("steklov_cli_det_a"), b("steklov_cli_det_b");
    const std::vector<std::string> common = {"limit", "--set", "problem=ep1", "--set", "L=12",
                                             "--set", "P1=3.5449", "--set", "P2=3.5449",
                                             "--set", "N=512", "--set", "k=3", "--set",
                                             "seed=7"};
    auto args_a = common;
    args_a.push_back("--out");
    args_a.push_back(a.str());
    auto args_b = common;
    args_b.push_back("--out");
    args_b.push_back(b.str());
    REQUIRE(run_cli(args_a) == 0);
    REQUIRE(run_cli(args_b) == 0);
    for (const char* name : {"spectrum.csv", "spectrum.json", "manifest.json"})
        CHECK(slurp(a.path / name) == slurp(b.path / name));
}

TEST_CASE("cli limit ep2/ep3/ep4 cover the n >= 3 problems") {
    TempDir dir("steklov_cli_n3");
    REQUIRE(run_cli({"limit", "--out", dir.str(), "--set", "problem=ep2", "--set", "L=1",
                     "--set", "n=3", "--set", "P1=12.566370614359172", "--set",
                     "P2=12.566370614359172"}) == 0);
    const std::string j = slurp(dir.path / "spectrum.json");
    CHECK(j.find("sigma1_closed_form") != std::string::npos);
    const auto sigma = csv_values(slurp(dir.path / "spectrum.csv"));
    CHECK(sigma[0] == doctest::Approx(0.5).epsilon(1e-10));

    REQUIRE(run_cli({"limit", "--out", dir.str(), "--set", "problem=ep3", "--set",
                     "L=3.141592653589793", "--set", "n=3", "--set", "N=512", "--set",
                     "k=2"}) == 0);
    const auto alpha = csv_values(slurp(dir.path / "spectrum.csv"));
    CHECK(alpha[0] == doctest::Approx(M_PI / 2.0).epsilon(1e-4));

    REQUIRE(run_cli({"limit", "--out", dir.str(), "--set", "problem=ep4", "--set", "L=3.0",
                     "--set", "n=3", "--set", "P1=4", "--set", "P2=4", "--set", "eps=0.01",
                     "--set", "N=512", "--set", "k=3"}) == 0);
    const auto lam = csv_values(slurp(dir.path / "spectrum.csv"));
    CHECK(std::abs(lam[0]) <= 1e-10);
    CHECK(lam[1] > 0.0);
}
