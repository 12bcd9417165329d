// Acceptance criteria 1-10: one PASS/FAIL line each, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "tietz/faber.hpp"
#include "tietz/schiffer.hpp"
#include "tietz/series.hpp"

using namespace tietz;
using conformal::CapFamily;
using conformal::ConformalMap;
using surface::SurfaceSpec;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

SurfaceSpec sphere_with(const ConformalMap& f) { return SurfaceSpec::sphere(CapFamily({f}), cplx{5.0, 1.0}); }

SurfaceSpec joukowski_sphere() { return sphere_with(ConformalMap::joukowski_ellipse(0.0, 1.0, 0.25)); }

SurfaceSpec two_cap_torus()
{
    return SurfaceSpec::torus({0.2, 1.0},
                              CapFamily({ConformalMap::affine({0.3, 0.3}, 0.08),
                                         ConformalMap::affine({0.55, 0.6}, 0.08)}),
                              {0.85, 0.15}, {0.15, 0.85});
}

cplx cell_point(std::mt19937_64& rng, cplx tau)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) + u(rng) * tau;
}

std::vector<cplx> exterior_points(const SurfaceSpec& s, int count, double rmin, double rmax, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> r(rmin, rmax), t(0.0, 2.0 * pi);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < count) {
        const cplx z = s.cap_center(0) + std::polar(r(rng), t(rng));
        if (!s.in_closed_cap(z) && s.distance_to_caps(z) > 0.1) out.push_back(z);
    }
    return out;
}

double pole_error(const SurfaceSpec& s, std::size_t k, int m)
{
    const auto p = faber::principal_part(s, faber::faber_tietz_form(s, k, m));
    double e = std::abs(p.coefficient(-(m + 1)) - static_cast<double>(m));
    for (int j = m + 2; j <= m + 4; ++j) e = std::max(e, std::abs(p.coefficient(-j)));
    return e;
}

Outcome pole_structure()
{
    const std::vector<SurfaceSpec> surfaces{
        sphere_with(ConformalMap::affine(0.0, 1.0)), sphere_with(ConformalMap::affine(0.0, 0.5)),
        joukowski_sphere(), sphere_with(ConformalMap::polynomial_perturbation(0.0, 1.0, {0.1, 0.05})),
        SurfaceSpec::torus({0.2, 1.0}, CapFamily({ConformalMap::affine({0.45, 0.5}, 0.1)}), {0.85, 0.15},
                           {0.15, 0.85})};
    double worst = 0.0;
    for (const auto& s : surfaces)
        for (int m = 1; m <= 12; ++m) worst = std::max(worst, pole_error(s, 0, m));
    return {worst < 1e-7, fmt("max deviation %.2e over 5 caps, m = 1..12 (tol 1e-7)", worst)};
}

Outcome sphere_kernel()
{
    const auto s = joukowski_sphere();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cplx w{u(rng), u(rng)}, z{u(rng), u(rng)};
        const cplx expect = -(1.0 / pi) / ((w - z) * (w - z));
        worst = std::max(worst, std::abs(surface::schiffer_kernel(s, w, z) - expect) / std::max(1.0, std::abs(expect)));
    }
    return {worst <= 1e-12, fmt("max relative deviation %.2e at 100 pairs (tol 1e-12)", worst)};
}

Outcome faber_derivative()
{
    double worst = 0.0;
    for (const auto& f : {ConformalMap::joukowski_ellipse(0.0, 1.0, 0.25),
                          ConformalMap::polynomial_perturbation({0.2, 0.1}, 1.0, {0.1, 0.03})}) {
        const auto s = sphere_with(f);
        const auto pts = exterior_points(s, 20, 1.5, 3.0, 3);
        for (int m = 1; m <= 8; ++m) {
            const auto phi = faber::faber_polynomial(f, m);
            const auto alpha = faber::faber_tietz_form(s, 0, m);
            for (const cplx& z : pts) worst = std::max(worst, std::abs(phi.derivative(z) - alpha.form(z)));
        }
    }
    return {worst < 1e-8, fmt("max |dPhi^m - alpha^m| %.2e, 2 caps, 20 points, m <= 8 (tol 1e-8)", worst)};
}

struct JoukowskiRun {
    series::SeriesDecomposition dec;
    series::TargetForm nu;
    SurfaceSpec surface = joukowski_sphere();
};

const JoukowskiRun& joukowski_run()
{
    static const JoukowskiRun run = [] {
        JoukowskiRun r;
        r.nu = series::double_pole_target(r.surface.cap(0).evaluate(std::polar(0.6, 0.4)));
        series::SeriesOptions o;
        o.history_orders = {5, 10, 20};
        r.dec = series::project_faber(r.nu, r.surface, 40, o);
        return r;
    }();
    return run;
}

Outcome l2_convergence()
{
    const auto& r = joukowski_run();
    bool decreasing = true;
    std::string seq;
    for (std::size_t i = 0; i < r.dec.history.size(); ++i) {
        if (i > 0 && !(r.dec.history[i].residual < r.dec.history[i - 1].residual)) decreasing = false;
        seq += fmt(" %.2e", r.dec.history[i].residual);
    }
    const bool small = r.dec.residual() < 1e-6;
    return {decreasing && small && r.dec.history.size() == 4, "residuals at M = 5,10,20,40:" + seq + " (tol 1e-6)"};
}

Outcome uniform_convergence()
{
    const auto& r = joukowski_run();
    const double R = r.surface.cap(0).bounding_radius() + 0.5;
    std::vector<cplx> circle;
    for (int l = 0; l < 64; ++l) circle.push_back(R * unit_root(l, 64));
    std::vector<double> sup;
    std::string seq;
    for (int m : {5, 10, 20, 40}) {
        sup.push_back(series::uniform_error(r.nu, r.dec.at_order(m), r.surface, circle, 0.5));
        seq += fmt(" %.2e", sup.back());
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < sup.size(); ++i) decreasing = decreasing && sup[i] < sup[i - 1];
    return {decreasing && sup.back() < 1e-6, "sup errors at distance 0.5:" + seq + " (tol 1e-6)"};
}

Outcome round_trip()
{
    const auto t = two_cap_torus();
    std::mt19937_64 rng(6);
    std::normal_distribution<double> n;
    numerics::CMatrix h(10, 2);
    for (int m = 0; m < 10; ++m)
        for (int k = 0; k < 2; ++k) h(m, k) = cplx{n(rng), n(rng)};
    const cplx eps{n(rng), n(rng)}, c{n(rng), n(rng)};
    series::TargetForm nu;
    nu.form = faber::faber_combination(t, h) + eps * surface::beta_form(t, 0) + c * surface::gamma_basis(t)[0];
    const auto dec = series::project_faber(nu, t, 12);
    double worst = std::max(std::abs(dec.epsilon[0] - eps), std::abs(dec.c[0] - c));
    for (int m = 0; m < 12; ++m)
        for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(dec.h(m, k) - (m < 10 ? h(m, k) : cplx{})));
    return {worst < 1e-8, fmt("max coefficient error %.2e, torus n = 2, m <= 10 fitted at M = 12 (tol 1e-8)", worst)};
}

Outcome torus_green()
{
    const auto t = two_cap_torus();
    const cplx tau = t.tau();
    const cplx z = t.cap_center(0);
    const cplx q1 = *t.base_point(), q2{0.6, 0.05};
    std::mt19937_64 rng(7);
    const double h = 1e-3;
    double lap = 0.0, per = 0.0;
    for (int i = 0; i < 100;) {
        const cplx w = cell_point(rng, tau);
        if (std::abs(t.difference(w, z)) < 0.35 || std::abs(t.difference(w, q1)) < 0.35) continue;
        const double g = surface::green(t, w, z);
        const double l = (surface::green(t, w + h, z) + surface::green(t, w - h, z) + surface::green(t, w + I * h, z) +
                          surface::green(t, w - I * h, z) - 4.0 * g) /
                         (h * h);
        lap = std::max(lap, std::abs(l));
        per = std::max({per, std::abs(surface::green(t, w + 1.0, z) - g), std::abs(surface::green(t, w + tau, z) - g)});
        ++i;
    }
    const double norm = std::abs(surface::green(t, t.normalization_point(), z));
    double qdep = 0.0;
    for (int i = 0; i < 50;) {
        const cplx w = cell_point(rng, tau), zz = cell_point(rng, tau);
        bool ok = std::abs(t.difference(w, zz)) > 0.25;
        for (cplx q : {q1, q2}) ok = ok && std::abs(t.difference(w, q)) > 0.15 && std::abs(t.difference(zz, q)) > 0.15;
        if (!ok) continue;
        qdep = std::max(qdep, std::abs(surface::kernel_from_green(t, w, zz, q1) - surface::kernel_from_green(t, w, zz, q2)));
        ++i;
    }
    const bool pass = lap <= 1e-4 && per <= 1e-9 && norm == 0.0 && qdep <= 1e-9;
    return {pass, fmt("laplacian %.2e (1e-4), periodicity %.2e (1e-9), ", lap, per) +
                      fmt("G(w0) = %.1e, q-spread %.2e (1e-9)", norm, qdep)};
}

Outcome invariance()
{
    const auto& r = joukowski_run();
    const double ds = series::invariance_check(r.surface, conformal::Moebius::translation(1.0), r.nu, 20);
    const auto t = two_cap_torus();
    series::TargetForm nu;
    const auto& lat = t.lattice();
    nu.form = surface::beta_form(t, 0) + 0.5 * surface::gamma_basis(t)[0] +
              OneForm([&lat](cplx w) { return lat.log_derivative_prime(w - cplx{0.32, 0.28}); });
    const double dt = series::invariance_check(t, conformal::Moebius::translation(0.3), nu, 12);
    return {ds < 1e-8 && dt < 1e-8, fmt("sphere translation by 1: %.2e, torus translation by 0.3: %.2e (tol 1e-8)", ds, dt)};
}

Outcome operator_consistency()
{
    double agree = 0.0, radius = 0.0;
    const auto s = joukowski_sphere();
    // nearest points sit 0.1 from the cap; the area grid is sized for that
    const auto pts = exterior_points(s, 20, 1.4, 3.5, 9);
    for (int m = 1; m <= 5; ++m) {
        const auto datum = schiffer::AntiHolomorphicDatum::monomial(0, m);
        for (const cplx& z : pts) {
            const cplx c4 = schiffer::schiffer_contour(s, 0, m, z, 0.4);
            const cplx area = schiffer::apply_schiffer(s, datum, z, schiffer::AreaOptions{96, 512, 1e-8});
            agree = std::max(agree, std::abs(area - schiffer::schiffer_contour(s, 0, m, z, 0.8)));
            for (double r0 : {0.6, 0.8}) radius = std::max(radius, std::abs(schiffer::schiffer_contour(s, 0, m, z, r0) - c4));
        }
    }
    const auto t = two_cap_torus();
    std::mt19937_64 rng(10);
    std::vector<cplx> tp;
    while (tp.size() < 20) {
        const cplx z = cell_point(rng, t.tau());
        if (!t.in_closed_cap(z) && t.distance_to_caps(z) > 0.02) tp.push_back(z);
    }
    for (std::size_t k = 0; k < 2; ++k)
        for (int m = 1; m <= 3; ++m) {
            const auto datum = schiffer::AntiHolomorphicDatum::monomial(k, m);
            for (const cplx& z : tp) {
                const cplx c4 = schiffer::schiffer_contour(t, k, m, z, 0.4);
                const cplx area = schiffer::apply_schiffer(t, datum, z, schiffer::AreaOptions{96, 512, 1e-8});
                agree = std::max(agree, std::abs(area - schiffer::schiffer_contour(t, k, m, z, 0.8)));
                for (double r0 : {0.6, 0.8})
                    radius = std::max(radius, std::abs(schiffer::schiffer_contour(t, k, m, z, r0) - c4));
            }
        }
    return {agree < 1e-8 && radius <= 1e-9,
            fmt("contour vs area %.2e (1e-8), r0 in {0.4, 0.6, 0.8} spread %.2e (1e-9)", agree, radius)};
}

Outcome oracle_values()
{
    const auto s = sphere_with(ConformalMap::affine(0.0, 1.0));
    const auto e1 = schiffer::AntiHolomorphicDatum::monomial(0, 1);
    double t_err = 0.0;
    for (cplx z : {cplx{2.0, 0.0}, cplx{-2.0, 0.0}, cplx{1.0, 1.0}})
        t_err = std::max(t_err, std::abs(schiffer::apply_schiffer(s, e1, z) - 1.0 / (z * z)));
    double phi_err = 0.0;
    for (double r : {0.5, 1.0, 1.5}) {
        const auto f = ConformalMap::affine(0.0, r);
        for (int m = 1; m <= 8; ++m) {
            const auto phi = faber::faber_polynomial(f, m);
            for (cplx z : {cplx{2.0, 1.0}, cplx{-1.0, 3.0}, cplx{0.0, -2.5}})
                phi_err = std::max(phi_err, std::abs(phi(z) + std::pow(r / z, m)));
        }
    }
    return {t_err < 1e-10 && phi_err < 1e-10,
            fmt("T(d conj z) vs z^-2: %.2e, Phi^m vs -(r/z)^m: %.2e (tol 1e-10)", t_err, phi_err)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"pole structure", pole_structure},
        {"sphere kernel closed form", sphere_kernel},
        {"Faber derivative identity", faber_derivative},
        {"L2 convergence", l2_convergence},
        {"uniform convergence", uniform_convergence},
        {"round-trip uniqueness", round_trip},
        {"torus Green's function", torus_green},
        {"conformal invariance", invariance},
        {"operator consistency", operator_consistency},
        {"oracle values", oracle_values},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %-28s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
