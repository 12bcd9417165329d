#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path source_dir = TIETZ_SOURCE_DIR;
const fs::path work = fs::temp_directory_path() / "tietz_test_cli";

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Result cli(const std::string& args)
{
    fs::create_directories(work);
    const auto out = work / "stdout.txt", err = work / "stderr.txt";
    const std::string cmd = std::string("\"") + TIETZ_CLI + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string config(const char* name) { return "\"" + (source_dir / "configs" / name).string() + "\""; }

} // namespace

TEST_CASE("list-checks prints the catalog")
{
    const auto r = cli("list-checks");
    CHECK(r.code == 0);
    CHECK(r.out.find("pole-structure") != std::string::npos);
    CHECK(r.out.find("uniform-convergence") != std::string::npos);
    CHECK(r.out.find("Theorem") != std::string::npos);
}

TEST_CASE("usage errors")
{
    CHECK(cli("").code == 2);
    CHECK(cli("run").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("--help").code == 0);
}

TEST_CASE("bundled identity config passes and writes artifacts")
{
    const auto dir = work / "identity";
    fs::remove_all(dir);
    const auto r = cli("run " + config("sphere_identity.cfg") + " --out-dir \"" + dir.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("status: pass") != std::string::npos);
    const auto doc = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(doc["exit_code"] == 0);
    CHECK(doc["decomposition"]["residual"].get<double>() < 1e-10);
    bool pole = false;
    for (const auto& c : doc["checks"])
        if (c["id"] == "pole-structure") pole = c["passed"].get<bool>();
    CHECK(pole);
    const auto coeff = slurp(dir / "coefficients.csv");
    REQUIRE(coeff.rfind("tag,k,m,re,im\nalpha,1,1,", 0) == 0);
    CHECK(std::abs(std::stod(coeff.substr(24)) - 1.0) < 1e-12);
}

TEST_CASE("bundled Joukowski config: residuals decrease strictly")
{
    const auto dir = work / "joukowski";
    fs::remove_all(dir);
    const auto r = cli("run " + config("sphere_joukowski.cfg") + " --out-dir \"" + dir.string() + "\"");
    CHECK(r.code == 0);
    std::istringstream csv(slurp(dir / "residuals.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "M,l2_residual,sup_error");
    std::vector<int> orders;
    std::vector<double> res;
    while (std::getline(csv, line)) {
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        orders.push_back(std::stoi(line.substr(0, c1)));
        res.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    CHECK(orders == std::vector<int>{5, 10, 20, 40});
    REQUIRE(res.size() == 4);
    for (std::size_t i = 1; i < res.size(); ++i) CHECK(res[i] < res[i - 1]);
    CHECK(res.back() < 1e-6);
}

TEST_CASE("failure fixtures follow the exit-code contract")
{
    auto r = cli("run " + config("fixtures/bad_tau.cfg") + " --out-dir \"" + (work / "bad").string() + "\"");
    CHECK(r.code == 2);
    CHECK(r.err.find("surface.tau") != std::string::npos);

    r = cli("run " + config("fixtures/zero_tolerance.cfg") + " --out-dir \"" + (work / "zero").string() + "\"");
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(slurp(work / "zero" / "report.json"))["status"] == "check-failure");

    r = cli("run " + config("fixtures/strict_condition.cfg") + " --out-dir \"" + (work / "strict").string() + "\"");
    CHECK(r.code == 3);
    CHECK(r.err.find("condition") != std::string::npos);

    r = cli("run \"" + (work / "does-not-exist.cfg").string() + "\"");
    CHECK(r.code == 2);
}

TEST_CASE("--strict escalates the condition flag")
{
    const auto cfg = work / "flag.cfg";
    fs::create_directories(work);
    std::string text = slurp(source_dir / "configs" / "fixtures" / "strict_condition.cfg");
    text.replace(text.find("strict = true"), 13, "strict = false");
    text.replace(text.find("checks = convergence"), 20, "checks = pole-structure");
    std::ofstream(cfg) << text;
    CHECK(cli("run \"" + cfg.string() + "\" --out-dir \"" + (work / "flag").string() + "\"").code == 0);
    CHECK(cli("run \"" + cfg.string() + "\" --strict --out-dir \"" + (work / "flag").string() + "\"").code == 3);
}

TEST_CASE("identical configs give bitwise identical csv files")
{
    const std::string cfg = config("torus_combination.cfg");
    REQUIRE(cli("run " + cfg + " --seed 5 --out-dir \"" + (work / "a").string() + "\"").code == 0);
    REQUIRE(cli("run " + cfg + " --seed 5 --out-dir \"" + (work / "b").string() + "\"").code == 0);
    for (const char* f : {"coefficients.csv", "residuals.csv"}) {
        const auto a = slurp(work / "a" / f), b = slurp(work / "b" / f);
        CHECK_FALSE(a.empty());
        CHECK(a == b);
    }
    const auto doc = nlohmann::json::parse(slurp(work / "a" / "report.json"));
    CHECK(doc["seed"] == 5);
}
