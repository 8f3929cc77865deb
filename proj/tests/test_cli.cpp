#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Sandbox {
    fs::path dir;

    explicit Sandbox(const std::string& name) {
        dir = fs::temp_directory_path() / ("volkov_cli_" + name + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    int run(const std::string& args) const {
        const std::string cmd = "cd '" + dir.string() + "' && '" VOLKOV_CLI_PATH "' " + args +
                                " > stdout.txt 2> stderr.txt";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string read(const fs::path& rel) const {
        std::ifstream in(dir / rel);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    json read_json(const fs::path& rel) const { return json::parse(read(rel)); }

    void write(const fs::path& rel, const std::string& text) const { std::ofstream(dir / rel) << text; }
};

std::vector<std::vector<double>> read_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::string> hashes(const json& manifest) {
    std::vector<std::string> h;
    for (const auto& a : manifest.at("artifacts")) h.push_back(a.at("sha256"));
    return h;
}

}  // namespace

TEST_CASE("cli: zero amplitude reproduces the free wave") {
    Sandbox box("free");
    REQUIRE(box.run("--out o volkov --A 0 --samples 20") == 0);
    const auto rows = read_csv(box.read("o/volkov_samples.csv"));
    REQUIRE(rows.size() == 20);
    const double E = std::sqrt(1.0 + 0.3 * 0.3 + 0.2 * 0.2);
    const double u2 = 0.2 / (E + 1.0), u3 = 0.3 / (E + 1.0);  // u1 = (1, 0, pz, px + i py) / (E + m)
    for (const auto& r : rows) {
        const double phase = E * r[0] - 0.3 * r[1] - 0.2 * r[3];
        const std::complex<double> f = std::exp(std::complex<double>(0.0, -phase));
        CHECK(std::abs(r[4] - f.real()) <= 1e-14);
        CHECK(std::abs(r[5] - f.imag()) <= 1e-14);
        CHECK(std::abs(r[6]) + std::abs(r[7]) == 0.0);
        CHECK(std::abs(r[8] - u2 * f.real()) <= 1e-14);
        CHECK(std::abs(r[11] - u3 * f.imag()) <= 1e-14);
    }
}

TEST_CASE("cli: residual order and summary") {
    Sandbox box("residual");
    REQUIRE(box.run("--out o volkov --residual --samples 10") == 0);
    const auto s = box.read_json("o/summary.json");
    CHECK(s.at("residual_order").get<double>() == doctest::Approx(2.0).epsilon(0.05));
    const auto m = box.read_json("o/manifest.json");
    CHECK(m.at("command") == "volkov");
    CHECK(m.at("format_version") == 1);
    CHECK(json::parse(box.read("stdout.txt")) == s);
}

TEST_CASE("cli: validation failures exit with code 2 and one JSON line") {
    Sandbox box("offshell");
    CHECK(box.run("--out o volkov --E 5") == 2);
    const std::string err = box.read("stderr.txt");
    CHECK(std::count(err.begin(), err.end(), '\n') == 1);
    const auto j = json::parse(err);
    CHECK(j.at("error") == "validation");
    CHECK(j.at("exit_code") == 2);
    CHECK(j.at("message").get<std::string>().find("off shell") != std::string::npos);
    CHECK(box.run("--out o modes --omega -1") == 2);
    CHECK(box.run("--out o zitter --projection sideways") != 0);
}

TEST_CASE("cli: numerical failures exit with code 3") {
    Sandbox box("numerical");
    CHECK(box.run("--out o modes --A 50 --omega 0.1") == 3);
    CHECK(json::parse(box.read("stderr.txt")).at("error") == "numerical");
}

TEST_CASE("cli: single mode at zero amplitude") {
    Sandbox box("modes");
    REQUIRE(box.run("--out o modes --A 0") == 0);
    CHECK(read_csv(box.read("o/modes.csv")).size() == 1);
    CHECK(box.read_json("o/content.json").at("N") == 0);
}

TEST_CASE("cli: separation agrees with the mode table") {
    Sandbox box("separate");
    REQUIRE(box.run("--out sep separate") == 0);
    REQUIRE(box.run("--out mod modes --px 0 --pz 0") == 0);
    const double f = box.read_json("sep/summary.json").at("negative_fraction");
    const double g = box.read_json("mod/content.json").at("fraction_projector");
    CHECK(std::abs(f - g) <= 1e-6 * g);
}

TEST_CASE("cli: barrier matches the closed form") {
    Sandbox box("barrier");
    REQUIRE(box.run("--out o barrier --V 1.5 --a 0.8 --E 0.6") == 0);
    const double T = box.read_json("o/summary.json").at("T");
    CHECK(std::abs(T - oracle::square_barrier_T(1.5, 0.8, 0.6)) <= 1e-10);
    REQUIRE(box.run("--out s barrier --V 1,2 --a 0.5,0.5 --Emin 0.1 --Emax 4 --count 32") == 0);
    CHECK(read_csv(box.read("s/barrier.csv")).size() == 32);
    CHECK(box.read_json("s/summary.json").at("max_unitarity_error").get<double>() <= 1e-10);
}

TEST_CASE("cli: configuration file and precedence") {
    Sandbox box("config");
    box.write("run.cfg", "# wave\nA = 0.3\nomega = 1.1\n");
    REQUIRE(box.run("--config run.cfg --out o modes --omega 0.9") == 0);
    const auto params = box.read_json("o/manifest.json").at("parameters");
    CHECK(params.at("A") == 0.3);
    CHECK(params.at("omega") == 0.9);
    box.write("bad.cfg", "amplitude = 0.3\n");
    CHECK(box.run("--config bad.cfg --out o modes") == 2);
    CHECK(box.run("--config missing.cfg --out o modes") != 0);
}

TEST_CASE("cli: sweeps are reproducible across thread counts") {
    Sandbox box("sweep");
    std::vector<std::vector<std::string>> all;
    for (int threads : {1, 4, 8}) {
        const std::string out = "t" + std::to_string(threads);
        REQUIRE(box.run("--out " + out + " --threads " + std::to_string(threads) +
                        " --sweep A=0.2,0.5 --sweep omega=0.6:1.0:3 modes") == 0);
        const auto sweep = box.read_json(out + "/sweep.json");
        REQUIRE(sweep.at("runs").size() == 6);
        std::vector<std::string> h;
        for (int r = 0; r < 6; ++r) {
            char dir[16];
            std::snprintf(dir, sizeof dir, "run_%03d", r);
            const auto m = box.read_json(fs::path(out) / dir / "manifest.json");
            const auto more = hashes(m);
            h.insert(h.end(), more.begin(), more.end());
        }
        all.push_back(h);
    }
    CHECK(all[0] == all[1]);
    CHECK(all[0] == all[2]);
    CHECK(box.run("--out bad --sweep nonsense=1,2 modes") == 2);
}

TEST_CASE("cli: replay reproduces the artifacts") {
    Sandbox box("replay");
    REQUIRE(box.run("--out o born --points 64 --wavelengths 8 --spp 32") == 0);
    REQUIRE(box.run("replay --manifest o/manifest.json --out r") == 0);
    CHECK(hashes(box.read_json("o/manifest.json")) == hashes(box.read_json("r/manifest.json")));
}
