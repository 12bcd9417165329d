#include "tietz/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "tietz/faber.hpp"
#include "tietz/schiffer.hpp"
#include "tietz/series.hpp"

namespace tietz::io {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const CheckInfo& info(const std::string& id)
{
    for (const auto& c : check_catalog())
        if (c.id == id) return c;
    throw ConfigError("run.checks: unknown check '" + id + "'");
}

/// Centre and radius of a disk containing every cap (sphere).
std::pair<cplx, double> cap_hull(const surface::SurfaceSpec& s)
{
    cplx c{0.0, 0.0};
    for (std::size_t k = 0; k < s.cap_count(); ++k) c += s.cap_center(k);
    c /= static_cast<double>(s.cap_count());
    double r = 0.0;
    for (std::size_t k = 0; k < s.cap_count(); ++k)
        r = std::max(r, std::abs(s.cap_center(k) - c) + s.cap(k).bounding_radius());
    return {c, r};
}

/// Random chart point: sphere within distance 2 of the caps, torus in the cell.
cplx random_point(const surface::SurfaceSpec& s, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (s.genus() == 1) {
        const double a = u(rng), b = u(rng);
        return a + b * s.tau();
    }
    const auto [c, r] = cap_hull(s);
    const double R = r + 2.0;
    while (true) {
        const double x = 2.0 * u(rng) - 1.0, y = 2.0 * u(rng) - 1.0;
        if (x * x + y * y <= 1.0) return c + R * cplx{x, y};
    }
}

/// Random points of Sigma at least min_distance from every cap.
std::vector<cplx> sample_sigma(const surface::SurfaceSpec& s, std::mt19937_64& rng, int count, double min_distance)
{
    std::vector<cplx> out;
    for (int attempt = 0; static_cast<int>(out.size()) < count; ++attempt) {
        if (attempt > 1000 * count) throw NumericalError("could not sample points of Sigma away from the caps");
        const cplx z = random_point(s, rng);
        if (s.in_closed_cap(z) || s.distance_to_caps(z) < min_distance) continue;
        out.push_back(z);
    }
    return out;
}

bool strictly_decreasing(const std::vector<double>& v, double floor)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1]) && v[i] > floor) return false;
    return true;
}

std::vector<cplx> uniform_points(const ExperimentConfig& cfg, const surface::SurfaceSpec& s, std::mt19937_64& rng)
{
    if (s.genus() == 0) {
        const auto [c, r] = cap_hull(s);
        std::vector<cplx> pts;
        for (int i = 0; i < cfg.run.uniform_points; ++i)
            pts.push_back(c + (r + cfg.run.uniform_distance) * unit_root(i, cfg.run.uniform_points));
        return pts;
    }
    return sample_sigma(s, rng, cfg.run.uniform_points, cfg.run.uniform_distance);
}

faber::FaberOptions faber_options(const ExperimentConfig& cfg)
{
    faber::FaberOptions o;
    o.contour_nodes = cfg.run.contour_nodes;
    o.radius_factor = cfg.run.radius_factor;
    o.max_order = cfg.run.max_order;
    return o;
}

struct Context {
    const ExperimentConfig& cfg;
    const surface::SurfaceSpec& surface;
    const series::TargetForm& target;
    const series::SeriesDecomposition& dec;
    const std::vector<double>& sup_errors;
    std::uint64_t seed;
};

CheckResult check_pole_structure(const Context& ctx)
{
    CheckResult r;
    r.threshold = 1e-7;
    double worst = 0.0;
    for (std::size_t k = 0; k < ctx.surface.cap_count(); ++k) {
        for (int m = 1; m <= ctx.cfg.run.pole_orders; ++m) {
            const auto e = faber::faber_tietz_form(ctx.surface, k, m, faber_options(ctx.cfg));
            const auto p = faber::principal_part(ctx.surface, e);
            double err = std::abs(p.coefficient(-(m + 1)) - static_cast<double>(m));
            for (int j = m + 2; j <= m + 4; ++j) err = std::max(err, std::abs(p.coefficient(-j)));
            worst = std::max(worst, err);
        }
    }
    r.measured = worst;
    r.passed = worst <= r.threshold;
    std::ostringstream os;
    os << "max over caps and m = 1.." << ctx.cfg.run.pole_orders
       << " of |c_{-(m+1)} - m| and |c_{-(m+2..m+4)}| at rho = 0.5";
    r.detail = os.str();
    return r;
}

CheckResult check_harmonicity(const Context& ctx)
{
    CheckResult r;
    r.threshold = 1e-4;
    std::mt19937_64 rng(ctx.seed + 1);
    const cplx z = ctx.surface.cap_center(0);
    const auto q = ctx.surface.base_point();
    const double h = 1e-3;
    double worst = 0.0;
    for (int i = 0; i < ctx.cfg.run.samples;) {
        const cplx w = random_point(ctx.surface, rng);
        if (std::abs(ctx.surface.difference(w, z)) < 0.35) continue;
        if (q && std::abs(ctx.surface.difference(w, *q)) < 0.35) continue;
        const double c = surface::green(ctx.surface, w, z);
        const double lap = (surface::green(ctx.surface, w + h, z) + surface::green(ctx.surface, w - h, z) +
                            surface::green(ctx.surface, w + I * h, z) + surface::green(ctx.surface, w - I * h, z) -
                            4.0 * c) /
                           (h * h);
        worst = std::max(worst, std::abs(lap));
        ++i;
    }
    r.measured = worst;
    r.passed = worst <= r.threshold;
    r.detail = "5-point Laplacian (step 1e-3) of G(w; z_1, q) at points 0.35 away from z_1 and q";
    return r;
}

CheckResult check_q_independence(const Context& ctx)
{
    CheckResult r;
    r.threshold = 1e-9;
    std::mt19937_64 rng(ctx.seed + 2);
    const auto q1 = ctx.surface.base_point();
    const cplx w0 = ctx.surface.normalization_point();
    const cplx q2 = ctx.surface.genus() == 1 ? w0 + 0.37 + 0.21 * ctx.surface.tau() : w0 + cplx{1.7, 0.9};
    auto away = [&](cplx p) {
        if (std::abs(ctx.surface.difference(p, q2)) < 0.15) return false;
        return !(q1 && std::abs(ctx.surface.difference(p, *q1)) < 0.15);
    };
    double spread = 0.0, closed = 0.0;
    for (int i = 0; i < ctx.cfg.run.samples;) {
        const cplx w = random_point(ctx.surface, rng);
        const cplx z = random_point(ctx.surface, rng);
        if (!away(w) || !away(z) || std::abs(ctx.surface.difference(w, z)) < 0.25) continue;
        const cplx k1 = surface::kernel_from_green(ctx.surface, w, z, q1);
        const cplx k2 = surface::kernel_from_green(ctx.surface, w, z, q2);
        spread = std::max(spread, std::abs(k1 - k2));
        closed = std::max(closed, std::abs(k1 - surface::schiffer_kernel(ctx.surface, w, z)));
        ++i;
    }
    r.measured = std::max(spread, closed);
    r.passed = r.measured <= r.threshold;
    std::ostringstream os;
    os << "(2/pi) d_z d_w G by circle-mean differentiation for two base points: spread " << spread
       << ", distance to the closed-form kernel " << closed;
    r.detail = os.str();
    return r;
}

CheckResult check_r0_independence(const Context& ctx)
{
    CheckResult r;
    r.threshold = 1e-9;
    std::mt19937_64 rng(ctx.seed + 3);
    double scale = 0.0;
    for (const auto& cap : ctx.surface.caps()) scale = std::max(scale, cap.scale());
    const auto pts = sample_sigma(ctx.surface, rng, ctx.cfg.run.samples, 0.1 * scale);
    double worst = 0.0;
    for (std::size_t k = 0; k < ctx.surface.cap_count(); ++k)
        for (int m = 1; m <= 5; ++m)
            for (const cplx& z : pts) {
                const cplx base = schiffer::schiffer_contour(ctx.surface, k, m, z, 0.4);
                for (double r0 : {0.6, 0.8}) {
                    const cplx v = schiffer::schiffer_contour(ctx.surface, k, m, z, r0);
                    worst = std::max(worst, std::abs(v - base) / std::max(1.0, std::abs(base)));
                }
            }
    r.measured = worst;
    r.passed = worst <= r.threshold;
    r.detail = "contour value of T(e^m_k), m = 1..5, at r0 = 0.4, 0.6, 0.8 (relative to max(1, |value|))";
    return r;
}

CheckResult check_convergence(const Context& ctx)
{
    CheckResult r;
    r.threshold = ctx.cfg.run.residual_tol;
    std::vector<double> res;
    for (const auto& h : ctx.dec.history) res.push_back(h.residual);
    const double floor = 1e-12 * std::max(1.0, ctx.dec.target_norm);
    const bool decreasing = strictly_decreasing(res, floor);
    r.measured = ctx.dec.residual();
    r.passed = decreasing && r.measured <= r.threshold;
    std::ostringstream os;
    os << "L2 residual at M = " << ctx.dec.order << "; strictly decreasing over recorded orders (below " << floor
       << " counts as converged): " << (decreasing ? "yes" : "no");
    r.detail = os.str();
    return r;
}

CheckResult check_uniform(const Context& ctx)
{
    CheckResult r;
    r.threshold = ctx.cfg.run.uniform_tol;
    const double floor = 1e-12 * std::max(1.0, ctx.dec.target_norm);
    const bool decreasing = strictly_decreasing(ctx.sup_errors, floor);
    r.measured = ctx.sup_errors.empty() ? 0.0 : ctx.sup_errors.back();
    r.passed = decreasing && r.measured <= r.threshold;
    std::ostringstream os;
    os << "sup |nu - S_M| over " << ctx.cfg.run.uniform_points << " points at distance >= "
       << ctx.cfg.run.uniform_distance << " from the caps; strictly decreasing: " << (decreasing ? "yes" : "no");
    r.detail = os.str();
    return r;
}

CheckResult check_invariance(const Context& ctx)
{
    CheckResult r;
    r.threshold = 1e-8;
    const cplx shift = ctx.cfg.run.invariance_shift.value_or(ctx.surface.genus() == 1 ? cplx{0.3, 0.0} : cplx{1.0, 0.0});
    const auto g = conformal::Moebius::translation(shift);
    r.measured = series::invariance_check(ctx.surface, g, ctx.target, ctx.dec.order, build_series_options(ctx.cfg));
    r.passed = r.measured <= r.threshold;
    r.detail = "max coefficient deviation after translating the surface by " + format_complex(shift);
    return r;
}

DecompositionSummary summarize(const series::SeriesDecomposition& dec, const std::vector<double>& sup)
{
    DecompositionSummary d;
    d.order = dec.order;
    d.epsilon = dec.epsilon;
    d.epsilon_consistency = dec.epsilon_consistency;
    d.c = dec.c;
    d.d = dec.d;
    d.residual = dec.residual();
    d.condition = dec.condition;
    d.flagged = dec.flagged;
    d.regularized = dec.regularized;
    d.target_norm = dec.target_norm;
    for (std::size_t i = 0; i < dec.history.size(); ++i)
        d.history.push_back({dec.history[i].order, dec.history[i].residual, i < sup.size() ? sup[i] : 0.0});
    return d;
}

nlohmann::json echo_json(const ExperimentConfig& cfg)
{
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [name, block] : cfg.echo) {
        nlohmann::json b(block);
        if (name == "cap") {
            if (!doc.contains("cap")) doc["cap"] = nlohmann::json::array();
            doc["cap"].push_back(b);
        } else {
            doc[name] = b;
        }
    }
    return doc;
}

void set_status(RunReport& r, int code, const std::string& message)
{
    static const char* names[] = {"pass", "check-failure", "config-error", "numerical-failure"};
    r.exit_code = code;
    r.status = names[code];
    r.message = message;
}

} // namespace

const std::vector<CheckInfo>& check_catalog()
{
    static const std::vector<CheckInfo> catalog{
        {"pole-structure", "Theorem: pole structure of Faber-Tietz forms (f*alpha = (m / zeta^{m+1} + h) d zeta)",
         "pullback Laurent coefficient at zeta^-(m+1) equals m, deeper coefficients vanish"},
        {"harmonicity", "Definition of the Green's function: harmonic in w away from z and q",
         "discrete Laplacian of the Green's function"},
        {"q-independence", "Definition of the Schiffer operator: the kernel is independent of q",
         "mixed derivative of the Green's function agrees for two base points"},
        {"r0-independence", "Pole-structure proof: the contour integral is independent of r",
         "contour reduction of T agrees across contour radii"},
        {"convergence", "Theorem: the Faber series converges to nu in L2(Sigma)",
         "L2 residual decreases strictly in M and falls below run.residual_tol"},
        {"uniform-convergence", "Theorem: partial sums converge uniformly on compact subsets of Sigma",
         "sup error on a compact set decreases strictly in M and falls below run.uniform_tol"},
        {"invariance", "Theorems: conformal invariance of Faber-Tietz forms and of the Faber series",
         "coefficients agree for the surface and its translate"},
    };
    return catalog;
}

std::string list_checks()
{
    std::ostringstream os;
    for (const auto& c : check_catalog())
        os << std::left << std::setw(20) << c.id << " " << c.anchor << "\n" << std::setw(21) << "" << c.description
           << "\n";
    return os.str();
}

RunOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& options, std::string config_path)
{
    const auto t0 = Clock::now();
    RunOutcome out;
    RunReport& report = out.report;
    report.config_path = std::move(config_path);
    report.config_echo = echo_json(cfg);
    report.seed = options.seed.value_or(cfg.run.seed);
    report.strict = options.strict || cfg.run.strict;
    auto log = [&](const std::string& s) {
        if (options.log) *options.log << s << std::endl;
    };

    std::vector<std::string> ids = cfg.run.checks;
    if (ids.empty())
        for (const auto& c : check_catalog()) ids.push_back(c.id);

    std::optional<surface::SurfaceSpec> surface;
    std::optional<series::TargetForm> target;
    try {
        for (const auto& id : ids) info(id);
        std::vector<std::string> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ConfigError("run.checks: duplicate check id");
        surface = build_surface(cfg);
        target = build_target(cfg, *surface);
    } catch (const DomainError& e) {
        set_status(report, exit_config_error, e.what());
        report.total_seconds = seconds_since(t0);
        return out;
    }

    int code = exit_ok;
    std::string message;
    try {
        log("decomposing " + target->description + " at M = " + std::to_string(cfg.run.order));
        const auto td = Clock::now();
        out.decomposition = series::project_faber(*target, *surface, cfg.run.order, build_series_options(cfg));
        const auto& dec = *out.decomposition;
        std::mt19937_64 rng(report.seed);
        const auto pts = uniform_points(cfg, *surface, rng);
        std::vector<double> sup;
        for (const auto& h : dec.history)
            sup.push_back(series::uniform_error(*target, dec.at_order(h.order), *surface, pts,
                                                0.999 * cfg.run.uniform_distance));
        report.decomposition = summarize(dec, sup);
        report.decomposition_seconds = seconds_since(td);

        const auto tc = Clock::now();
        const Context ctx{cfg, *surface, *target, dec, sup, report.seed};
        for (const auto& id : ids) {
            log("check " + id);
            CheckResult r;
            if (id == "pole-structure") r = check_pole_structure(ctx);
            else if (id == "harmonicity") r = check_harmonicity(ctx);
            else if (id == "q-independence") r = check_q_independence(ctx);
            else if (id == "r0-independence") r = check_r0_independence(ctx);
            else if (id == "convergence") r = check_convergence(ctx);
            else if (id == "uniform-convergence") r = check_uniform(ctx);
            else r = check_invariance(ctx);
            r.id = id;
            r.anchor = info(id).anchor;
            if (!std::isfinite(r.measured)) {
                r.detail += " (measured value not finite)";
                r.measured = std::numeric_limits<double>::max();
                r.passed = false;
            }
            if (!r.passed && code == exit_ok) {
                code = exit_check_failed;
                message = "check " + id + " failed";
            }
            report.checks.push_back(std::move(r));
        }
        report.checks_seconds = seconds_since(tc);
        if (dec.flagged && report.strict) {
            std::ostringstream os;
            os << "Gram condition " << dec.condition << " exceeds run.condition_limit " << cfg.run.condition_limit
               << " (escalated by strict mode)";
            code = exit_numerical_failure;
            message = os.str();
        }
    } catch (const NumericalError& e) {
        code = exit_numerical_failure;
        message = e.what();
    } catch (const DomainError& e) {
        code = exit_numerical_failure;
        message = e.what();
    }
    set_status(report, code, message);
    report.total_seconds = seconds_since(t0);
    return out;
}

void write_coefficients_csv(std::ostream& out, const series::SeriesDecomposition& dec)
{
    out << std::setprecision(17);
    out << "tag,k,m,re,im\n";
    for (std::size_t k = 0; k + 1 < dec.epsilon.size(); ++k)
        out << "beta," << k + 1 << ",0," << dec.epsilon[k].real() << "," << dec.epsilon[k].imag() << "\n";
    for (std::size_t j = 0; j < dec.c.size(); ++j)
        out << "gamma," << j + 1 << ",0," << dec.c[j].real() << "," << dec.c[j].imag() << "\n";
    for (Eigen::Index k = 0; k < dec.h.cols(); ++k)
        for (Eigen::Index m = 0; m < dec.h.rows(); ++m)
            out << "alpha," << k + 1 << "," << m + 1 << "," << dec.h(m, k).real() << "," << dec.h(m, k).imag() << "\n";
}

void write_residuals_csv(std::ostream& out, const DecompositionSummary& summary)
{
    out << std::setprecision(17);
    out << "M,l2_residual,sup_error\n";
    for (const auto& row : summary.history) out << row.order << "," << row.l2_residual << "," << row.sup_error << "\n";
}

int run(const std::filesystem::path& config_path, const RunOptions& options)
{
    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        if (options.out_dir) {
            RunReport r;
            r.config_path = config_path.string();
            r.strict = options.strict;
            set_status(r, exit_config_error, e.what());
            std::filesystem::create_directories(*options.out_dir);
            std::ofstream(*options.out_dir / "report.json") << to_json(r).dump(2) << "\n";
        }
        return exit_config_error;
    }
    const auto outcome = run_experiment(cfg, options, config_path.string());
    const auto& report = outcome.report;
    const std::filesystem::path dir = options.out_dir.value_or(cfg.output_directory);
    std::filesystem::create_directories(dir);
    const bool csv = std::find(cfg.formats.begin(), cfg.formats.end(), "csv") != cfg.formats.end();
    const bool json = std::find(cfg.formats.begin(), cfg.formats.end(), "json") != cfg.formats.end();
    if (csv && outcome.decomposition && report.decomposition) {
        std::ofstream c(dir / "coefficients.csv");
        write_coefficients_csv(c, *outcome.decomposition);
        std::ofstream r(dir / "residuals.csv");
        write_residuals_csv(r, *report.decomposition);
    }
    if (json) std::ofstream(dir / "report.json") << to_json(report).dump(2) << "\n";

    if (report.exit_code == exit_config_error) std::cerr << "config error: " << report.message << "\n";
    else if (report.exit_code == exit_numerical_failure) std::cerr << "numerical failure: " << report.message << "\n";
    for (const auto& c : report.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(20) << c.id << " measured "
                  << std::setprecision(3) << std::scientific << c.measured << " threshold " << c.threshold
                  << std::defaultfloat << "\n";
    if (report.decomposition)
        std::cout << "M = " << report.decomposition->order << "  L2 residual " << std::setprecision(3)
                  << std::scientific << report.decomposition->residual << "  condition "
                  << report.decomposition->condition << std::defaultfloat << "\n";
    std::cout << "status: " << report.status << "\n";
    return report.exit_code;
}

} // namespace tietz::io
