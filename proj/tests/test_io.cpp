#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "tietz/runner.hpp"

using namespace tietz;
using namespace tietz::io;

namespace {

const std::string torus_text = R"(
# comment line
[surface]
genus = 1
tau = 0.2,1.0     # trailing comment
q = 0.85,0.15
w0 = 0.15,0.85

[cap]
kind = affine
center = 0.3,0.3
scale = 0.08

[cap]
kind = moebius-composed
moebius = 1 0.25 0 1
inner.kind = polynomial-perturbation
inner.center = 0.3,0.6
inner.scale = 0.08
inner.coefficients = 0.1 0.02,0.01

[target]
family = combination
beta = 0.5,0.5
gamma = 1
alpha = 1:2:0.1,0 2:1:0,-0.3

[run]
order = 6
history = 2 4
checks = convergence pole-structure

[output]
directory = results
formats = json
)";

std::string error_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::string minimal_sphere(const std::string& extra_run = "")
{
    return "[surface]\ngenus = 0\nw0 = 3\n[cap]\nkind = affine\ncenter = 0\nscale = 1\n[target]\nfamily = alpha\nm = "
           "1\n[run]\norder = 4\nhistory = 2\n" +
           extra_run;
}

} // namespace

TEST_CASE("complex number syntax")
{
    CHECK(parse_complex("1.5,-2") == cplx{1.5, -2.0});
    CHECK(parse_complex(" 3 ") == cplx{3.0, 0.0});
    CHECK(std::isinf(parse_complex("inf").real()));
    CHECK_THROWS_AS(parse_complex("1+2i"), DomainError);
    CHECK(parse_complex(format_complex({0.1, 1.0 / 3.0})) == cplx{0.1, 1.0 / 3.0});
}

TEST_CASE("parsing a full torus configuration")
{
    const auto cfg = parse_config(torus_text);
    CHECK(cfg.genus == 1);
    CHECK(cfg.tau == cplx{0.2, 1.0});
    REQUIRE(cfg.q.has_value());
    CHECK(*cfg.q == cplx{0.85, 0.15});
    REQUIRE(cfg.caps.size() == 2);
    CHECK(cfg.caps[1].kind == conformal::MapKind::moebius_composed);
    REQUIRE(cfg.caps[1].inner);
    CHECK(cfg.caps[1].inner->higher.size() == 2);
    CHECK(cfg.caps[1].inner->higher[1] == cplx{0.02, 0.01});
    CHECK(cfg.target.family == "combination");
    CHECK(cfg.target.alpha.size() == 2);
    CHECK(cfg.target.alpha[1].cap == 1);
    CHECK(cfg.target.alpha[1].value == cplx{0.0, -0.3});
    CHECK(cfg.run.order == 6);
    CHECK(cfg.run.history == std::vector<int>{2, 4});
    CHECK(cfg.run.checks == std::vector<std::string>{"convergence", "pole-structure"});
    CHECK(cfg.output_directory == "results");
    CHECK(cfg.formats == std::vector<std::string>{"json"});
    CHECK(cfg.echo.size() == 6);

    const auto s = build_surface(cfg);
    CHECK(s.cap_count() == 2);
    CHECK(std::abs(s.cap_center(1) - cplx{0.55, 0.6}) < 1e-15);
    const auto t = build_target(cfg, s);
    CHECK(std::isfinite(std::abs(t.form(cplx{0.8, 0.2}))));
}

TEST_CASE("defaults and history filtering")
{
    const auto cfg = parse_config("[surface]\ngenus = 0\nw0 = 3\n[cap]\nkind = affine\ncenter = 0\n[target]\nfamily = "
                                  "alpha\nm = 2\n[run]\norder = 12\n");
    CHECK(cfg.run.history == std::vector<int>{5, 10});
    CHECK(cfg.run.residual_tol == 1e-6);
    CHECK_FALSE(cfg.q.has_value());
    CHECK(cfg.formats.size() == 2);
    const auto opts = build_series_options(cfg);
    CHECK(opts.faber.max_order == 64);
    CHECK(opts.least_squares.condition_limit == 1e12);
}

TEST_CASE("configuration errors name the field")
{
    auto has = [](const std::string& msg, const std::string& field) {
        INFO(msg);
        CHECK(msg.rfind(field, 0) == 0);
    };
    std::string bad = torus_text;
    bad.replace(bad.find("tau = 0.2,1.0"), 13, "tau = 0.2,-1");
    has(error_of(bad), "surface.tau");
    has(error_of(minimal_sphere("colour = red\n")), "run.colour");
    has(error_of(minimal_sphere("order = 0\n")), "run.order");
    has(error_of(minimal_sphere("max_order = 3\n")), "run.order");
    has(error_of(minimal_sphere("residual_tol = abc\n")), "run.residual_tol");
    has(error_of("[surface]\ngenus = 2\nw0 = 0\n"), "surface.genus");
    has(error_of("[surface]\ngenus = 0\nw0 = 3\n[cap]\nkind = spiral\ncenter = 0\n[target]\nfamily = alpha\nm = 1\n"),
        "cap[1].kind");
    has(error_of("[surface]\ngenus = 0\nw0 = 3\n[cap]\nkind = affine\ncenter = 0\n[target]\nfamily = alpha\n"),
        "target.m");
    has(error_of("[surface]\ngenus = 0\nw0 = 3\n[cap]\nkind = affine\ncenter = 0\n"), "target");
    has(error_of("[surface]\ngenus = 0\ngenus = 1\n"), "surface.genus");
    has(error_of("[surface]\ngenus = 0\nw0 = 3\n[cap]\nkind = affine\ncenter = 0\n[target]\nfamily = "
                 "double-pole\npreimage = 1.5\n"),
        "target.preimage");
    has(error_of("[extras]\n"), "extras");
    has(error_of("genus = 0\n"), "line 1");
}

TEST_CASE("construction errors are configuration errors")
{
    auto cfg = parse_config(minimal_sphere());
    cfg.caps.push_back(cfg.caps[0]);
    try {
        build_surface(cfg);
        FAIL("expected an overlap error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).rfind("surface", 0) == 0);
    }
    cfg = parse_config(minimal_sphere());
    cfg.caps[0].scale = 0.0;
    CHECK_THROWS_AS(build_surface(cfg), ConfigError);
}

TEST_CASE("check catalog")
{
    const auto& cat = check_catalog();
    std::set<std::string> ids;
    for (const auto& c : cat) {
        ids.insert(c.id);
        CHECK_FALSE(c.anchor.empty());
        CHECK_FALSE(c.description.empty());
    }
    CHECK(ids == std::set<std::string>{"pole-structure", "harmonicity", "q-independence", "r0-independence",
                                       "convergence", "uniform-convergence", "invariance"});
    const auto text = list_checks();
    for (const auto& id : ids) CHECK(text.find(id) != std::string::npos);

    // every catalog id is accepted by run, anything else is rejected
    for (const auto& id : ids) {
        auto cfg = parse_config(minimal_sphere("checks = " + id + "\n"));
        CHECK(run_experiment(cfg, {}).report.exit_code != exit_config_error);
    }
    auto cfg = parse_config(minimal_sphere("checks = pole-structure poles\n"));
    const auto out = run_experiment(cfg, {});
    CHECK(out.report.exit_code == exit_config_error);
    CHECK(out.report.message.find("run.checks") != std::string::npos);
}

TEST_CASE("identity sphere run passes every check")
{
    auto cfg = parse_config(minimal_sphere("residual_tol = 1e-10\nuniform_tol = 1e-9\n"));
    const auto out = run_experiment(cfg, {});
    const auto& r = out.report;
    CHECK(r.exit_code == exit_ok);
    CHECK(r.status == "pass");
    CHECK(r.checks.size() == check_catalog().size());
    for (const auto& c : r.checks) {
        INFO(c.id << " " << c.measured << " " << c.detail);
        CHECK(c.passed);
    }
    REQUIRE(r.decomposition.has_value());
    CHECK(r.decomposition->residual < 1e-10);
    CHECK(validate_report(to_json(r)).empty());
}

TEST_CASE("exit codes for check failures and strict escalation")
{
    auto cfg = parse_config(minimal_sphere("checks = convergence\nresidual_tol = 0\n"));
    cfg.target.family = "double-pole";
    cfg.target.a = cplx{0.3, 0.2};
    CHECK(run_experiment(cfg, {}).report.exit_code == exit_check_failed);

    cfg = parse_config(minimal_sphere("checks = pole-structure\ncondition_limit = 1\n"));
    cfg.target.family = "double-pole";
    cfg.target.a = cplx{0.3, 0.2};
    cfg.caps[0].kind = conformal::MapKind::joukowski_ellipse;
    cfg.caps[0].a = 0.25;
    auto out = run_experiment(cfg, {});
    CHECK(out.report.exit_code == exit_ok);
    REQUIRE(out.report.decomposition.has_value());
    CHECK(out.report.decomposition->flagged);
    RunOptions strict;
    strict.strict = true;
    out = run_experiment(cfg, strict);
    CHECK(out.report.exit_code == exit_numerical_failure);
    CHECK(out.report.status == "numerical-failure");
    CHECK(out.report.strict);
}

TEST_CASE("report json round trip and schema")
{
    auto cfg = parse_config(minimal_sphere("checks = pole-structure convergence\n"));
    const auto out = run_experiment(cfg, {}, "in-memory.cfg");
    const auto doc = to_json(out.report);
    CHECK(validate_report(doc).empty());
    const auto back = report_from_json(doc);
    CHECK(to_json(back) == doc);
    CHECK(back.config_path == "in-memory.cfg");
    CHECK(back.checks.size() == 2);
    CHECK(doc["tool"] == "tietz");
    CHECK(doc["config"]["cap"].is_array());
    CHECK(doc["config"]["surface"]["genus"] == "0");

    auto broken = doc;
    broken["exit_code"] = 1;
    CHECK_FALSE(validate_report(broken).empty());
    broken = doc;
    broken["checks"].push_back(broken["checks"][0]);
    CHECK_FALSE(validate_report(broken).empty());
    broken = doc;
    broken.erase("timings");
    CHECK_FALSE(validate_report(broken).empty());
    CHECK_THROWS_AS(report_from_json(broken), DomainError);
}

TEST_CASE("csv writers use full precision")
{
    auto cfg = parse_config(minimal_sphere("checks = convergence\n"));
    const auto out = run_experiment(cfg, {});
    REQUIRE(out.decomposition.has_value());
    std::ostringstream coeff, res;
    write_coefficients_csv(coeff, *out.decomposition);
    write_residuals_csv(res, *out.report.decomposition);
    std::istringstream cs(coeff.str());
    std::string line;
    std::getline(cs, line);
    CHECK(line == "tag,k,m,re,im");
    std::getline(cs, line);
    CHECK(line.rfind("alpha,1,1,", 0) == 0);
    const double re = std::stod(line.substr(10, line.find(',', 10) - 10));
    CHECK(re == out.decomposition->h(0, 0).real());
    int rows = 1;
    while (std::getline(cs, line)) ++rows;
    CHECK(rows == 4);
    std::istringstream rs(res.str());
    std::getline(rs, line);
    CHECK(line == "M,l2_residual,sup_error");
    std::getline(rs, line);
    CHECK(line.rfind("2,", 0) == 0);
}

TEST_CASE("run writes the artifact files")
{
    const auto dir = std::filesystem::temp_directory_path() / "tietz_test_io_run";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto cfg_path = dir / "identity.cfg";
    std::ofstream(cfg_path) << minimal_sphere("checks = convergence pole-structure\nresidual_tol = 1e-10\n");
    RunOptions opts;
    opts.out_dir = dir / "out";
    CHECK(run(cfg_path, opts) == exit_ok);
    for (const char* f : {"coefficients.csv", "residuals.csv", "report.json"})
        CHECK(std::filesystem::exists(dir / "out" / f));
    std::ifstream in(dir / "out" / "report.json");
    const auto doc = nlohmann::json::parse(in);
    CHECK(validate_report(doc).empty());
    CHECK(doc["status"] == "pass");
    CHECK(run(dir / "missing.cfg", opts) == exit_config_error);
    std::filesystem::remove_all(dir);
}
