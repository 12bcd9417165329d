#include "doctest.h"

#include <random>

#include "tietz/surface.hpp"

using namespace tietz;
using namespace tietz::surface;
using conformal::CapFamily;
using conformal::ConformalMap;

namespace {

SurfaceSpec two_cap_sphere()
{
    return SurfaceSpec::sphere(CapFamily({ConformalMap::affine(0.0, 0.3), ConformalMap::affine(1.0, 0.3)}),
                               cplx{3.0, 1.0});
}

SurfaceSpec two_cap_torus()
{
    return SurfaceSpec::torus({0.2, 1.0},
                              CapFamily({ConformalMap::affine({0.3, 0.3}, 0.08),
                                         ConformalMap::joukowski_ellipse({0.55, 0.6}, 0.08, 0.2)}),
                              {0.85, 0.15}, {0.15, 0.85});
}

cplx random_point(std::mt19937_64& rng, cplx tau)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng) + u(rng) * tau;
}

} // namespace

TEST_CASE("sphere green matches the closed form")
{
    const auto s = two_cap_sphere();
    const cplx w0 = s.normalization_point();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const cplx w{u(rng), u(rng)}, z{u(rng), u(rng)}, q{u(rng), u(rng)};
        const double inf_form = std::log(std::abs((z - w0) / (w - z)));
        CHECK(std::abs(green(s, w, z, std::nullopt) - inf_form) < 1e-12 * std::max(1.0, std::abs(inf_form)));
        const double full = std::log(std::abs((z - w0) * (w - q) / ((w - z) * (q - w0))));
        CHECK(std::abs(green(s, w, z, q) - full) < 1e-12 * std::max(1.0, std::abs(full)));
    }
    // w0 = 0, z = 1, q at infinity, w = 2: log|1 / (2 - 1)| = 0
    const auto s0 = SurfaceSpec::sphere(CapFamily({ConformalMap::affine({5.0, 0.0}, 0.5)}), 0.0);
    CHECK(std::abs(green(s0, 2.0, 1.0, std::nullopt)) < 1e-15);
    CHECK(std::abs(green(s0, 3.0, 1.0, std::nullopt) - std::log(0.5)) < 1e-15);
}

TEST_CASE("green vanishes at the normalization point")
{
    const auto s = two_cap_sphere();
    CHECK(green(s, s.normalization_point(), cplx{0.5, 2.0}) == 0.0);
    const auto t = two_cap_torus();
    CHECK(green(t, t.normalization_point(), cplx{0.4, 0.5}) == 0.0);
    CHECK(green(t, t.normalization_point() + 1.0 + t.tau(), cplx{0.4, 0.5}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("green rejects coincident points")
{
    const auto t = two_cap_torus();
    CHECK_THROWS_AS(green(t, cplx{0.4, 0.5}, cplx{0.4, 0.5}), DomainError);
    CHECK_THROWS_AS(green(t, cplx{1.85, 0.15}, cplx{0.4, 0.5}), DomainError); // q + 1
    CHECK_THROWS_AS(green(two_cap_sphere(), 2.0, 2.0), DomainError);
}

TEST_CASE("torus green: periodicity, log singularity and harmonicity")
{
    const auto t = two_cap_torus();
    const cplx tau = t.tau();
    const cplx z{0.4, 0.5};
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const cplx w = random_point(rng, tau);
        if (std::abs(t.difference(w, z)) < 0.1 || std::abs(t.difference(w, *t.base_point())) < 0.1) continue;
        const double g = green(t, w, z);
        CHECK(std::abs(green(t, w + 1.0, z) - g) < 1e-9);
        CHECK(std::abs(green(t, w + tau, z) - g) < 1e-9);
        CHECK(std::abs(green(t, w - 2.0 * tau + 1.0, z) - g) < 1e-9);
    }
    // G + log|w - z| stays bounded and converges as w -> z
    std::vector<double> regular;
    for (double r : {1e-2, 1e-3, 1e-4, 1e-5}) regular.push_back(green(t, z + r * cplx{0.6, 0.8}, z) + std::log(r));
    CHECK(std::abs(regular[3] - regular[2]) < 1e-3);
    CHECK(std::abs(regular[3] - regular[2]) < std::abs(regular[1] - regular[0]));
    // discrete Laplacian
    const double h = 1e-3;
    for (int i = 0; i < 100;) {
        const cplx w = random_point(rng, tau);
        if (std::abs(t.difference(w, z)) < 0.35 || std::abs(t.difference(w, *t.base_point())) < 0.35) continue;
        const double lap = (green(t, w + h, z) + green(t, w - h, z) + green(t, w + I * h, z) +
                            green(t, w - I * h, z) - 4.0 * green(t, w, z)) /
                           (h * h);
        CHECK(std::abs(lap) <= 1e-4);
        ++i;
    }
}

TEST_CASE("sphere kernel closed form and symmetry")
{
    const auto s = two_cap_sphere();
    CHECK(std::abs(schiffer_kernel(s, 2.0, 0.0) + 1.0 / (4.0 * pi)) < 1e-15);
    CHECK(schiffer_kernel(s, 2.0, 0.0) == schiffer_kernel(s, 0.0, 2.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        const cplx w{u(rng), u(rng)}, z{u(rng), u(rng)};
        const cplx expect = -1.0 / (pi * (w - z) * (w - z));
        CHECK(std::abs(schiffer_kernel(s, w, z) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
    CHECK_THROWS_AS(schiffer_kernel(s, 1.0, 1.0), DomainError);
}

TEST_CASE("kernel from green is independent of q and matches the closed form")
{
    const auto t = two_cap_torus();
    const cplx q1 = *t.base_point(), q2{0.6, 0.05};
    std::mt19937_64 rng(4);
    int count = 0;
    while (count < 50) {
        const cplx w = random_point(rng, t.tau()), z = random_point(rng, t.tau());
        bool ok = std::abs(t.difference(w, z)) > 0.25;
        for (cplx q : {q1, q2})
            ok = ok && std::abs(t.difference(w, q)) > 0.15 && std::abs(t.difference(z, q)) > 0.15;
        if (!ok) continue;
        const cplx k1 = kernel_from_green(t, w, z, q1);
        const cplx k2 = kernel_from_green(t, w, z, q2);
        CHECK(std::abs(k1 - k2) < 1e-9);
        CHECK(std::abs(k1 - schiffer_kernel(t, w, z)) < 1e-9);
        ++count;
    }
    const auto s = two_cap_sphere();
    const cplx a = kernel_from_green(s, {2.0, 1.0}, {-1.0, 2.0}, std::nullopt);
    const cplx b = kernel_from_green(s, {2.0, 1.0}, {-1.0, 2.0}, cplx{0.5, -2.0});
    CHECK(std::abs(a - b) < 1e-9);
    CHECK(std::abs(a - schiffer_kernel(s, {2.0, 1.0}, {-1.0, 2.0})) < 1e-9);
}

TEST_CASE("torus kernel is holomorphic in both variables")
{
    const auto t = two_cap_torus();
    const int N = 64;
    const double rho = 0.1;
    const cplx w{0.8, 0.7}, z0{0.3, 0.6};
    std::vector<cplx> in_z(N), in_w(N);
    for (int l = 0; l < N; ++l) {
        in_z[l] = schiffer_kernel(t, w, z0 + rho * unit_root(l, N));
        in_w[l] = schiffer_kernel(t, z0 + rho * unit_root(l, N), w);
    }
    for (const auto* s : {&in_z, &in_w}) {
        const auto c = numerics::circle_coefficients(*s, rho, -8, -1);
        double worst = 0.0;
        for (cplx v : c) worst = std::max(worst, std::abs(v));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("beta forms on the sphere")
{
    const auto s = two_cap_sphere();
    const OneForm b = beta_form(s, 0);
    const auto around = [&](cplx c) {
        return numerics::circle_integral([&](cplx w) { return b(w); }, numerics::CircleContour(c, 0.2, 128));
    };
    CHECK(std::abs(around(0.0) - 2.0 * pi * I) < 1e-12);
    CHECK(std::abs(around(1.0) + 2.0 * pi * I) < 1e-12);
    CHECK(std::abs(around({0.5, 2.0})) < 1e-12);
    CHECK(std::abs(b(cplx{2.0, 0.0}) - (1.0 / 2.0 - 1.0)) < 1e-15);
    CHECK_THROWS_AS(beta_form(s, 1), DomainError);
    CHECK_THROWS_AS(beta_form(SurfaceSpec::sphere(CapFamily({ConformalMap::affine(0.0, 1.0)}), 3.0), 0), DomainError);
}

TEST_CASE("beta forms on the torus: periodic with the right boundary periods")
{
    const auto t = two_cap_torus();
    const OneForm b = beta_form(t, 0);
    for (cplx w : {cplx{0.1, 0.1}, cplx{0.7, 0.3}, cplx{0.45, 0.9}}) {
        CHECK(std::abs(b(w + 1.0) - b(w)) < 1e-12);
        CHECK(std::abs(b(w + t.tau()) - b(w)) < 1e-12);
    }
    CHECK(std::abs(period(b, boundary_cycle(t, 0)) - 2.0 * pi * I) < 1e-10);
    CHECK(std::abs(period(b, boundary_cycle(t, 1)) + 2.0 * pi * I) < 1e-10);
}

TEST_CASE("gamma basis and period matrix")
{
    CHECK(gamma_basis(two_cap_sphere()).empty());
    CHECK(period_matrix(two_cap_sphere()).empty());
    const auto t = two_cap_torus();
    const auto g = gamma_basis(t);
    REQUIRE(g.size() == 1);
    CHECK(std::abs(period(g[0], a_cycle(t)) - 1.0) < 1e-10);
    CHECK(std::abs(period(g[0], b_cycle(t)) - t.tau()) < 1e-12);
    const auto pm = period_matrix(t);
    REQUIRE(pm.size() == 1);
    CHECK(std::abs(pm[0] - t.tau()) < 1e-12);
}

TEST_CASE("periods of exact forms and pole detection")
{
    const auto t = two_cap_torus();
    const OneForm exact([](cplx w) { return 2.0 * w; });
    CHECK(std::abs(period(exact, boundary_cycle(t, 0))) < 1e-12);
    CHECK(std::abs(period(exact, boundary_cycle(t, 1, 1.2))) < 1e-12);
    const OneForm tagged([](cplx w) { return 1.0 / (w - 0.38); }, false, {{cplx{0.38, 0.3}, 1}});
    CHECK_THROWS_AS(period(tagged, boundary_cycle(t, 0)), DomainError);
    const OneForm blowup([](cplx w) { return w.real() > 0.37 ? cplx{INFINITY, 0.0} : w; });
    CHECK_THROWS_AS(period(blowup, boundary_cycle(t, 0)), QuadratureError);
}

TEST_CASE("surface validation")
{
    CHECK_THROWS_AS(SurfaceSpec::torus({0.2, -1.0}, CapFamily({ConformalMap::affine({0.5, 0.5}, 0.1)}), {0.1, 0.1},
                                       {0.9, 0.9}),
                    DomainError);
    CHECK_THROWS_AS(SurfaceSpec::torus({0.0, 1.0}, CapFamily({ConformalMap::affine({0.02, 0.5}, 0.1)}), {0.5, 0.1},
                                       {0.9, 0.9}),
                    DomainError);
    CHECK_THROWS_AS(SurfaceSpec::sphere(CapFamily({ConformalMap::affine(0.0, 1.0)}), 0.5), DomainError);
    CHECK_THROWS_AS(SurfaceSpec::sphere(CapFamily({ConformalMap::affine(0.0, 1.0)}), 3.0, cplx{3.0, 0.0}), DomainError);
}

TEST_CASE("torus chart helpers")
{
    const auto t = two_cap_torus();
    const cplx w = cplx{0.3, 0.3} + 2.0 - t.tau();
    CHECK(std::abs(t.canonical(w) - cplx{0.3, 0.3}) < 1e-14);
    CHECK(t.in_closed_cap(w));
    CHECK(t.cap_containing(cplx{0.55, 0.6} + t.tau()) == std::optional<std::size_t>(1));
    CHECK(std::abs(t.difference(cplx{0.95, 0.0}, cplx{0.05, 0.0}) + 0.1) < 1e-14);
    CHECK(t.distance_to_caps(cplx{0.3, 0.5}) == doctest::Approx(0.12).epsilon(1e-3));
}

TEST_CASE("transport by a translation")
{
    const auto t = two_cap_torus().transported(conformal::Moebius::translation(0.1));
    CHECK(std::abs(t.cap_center(0) - cplx{0.4, 0.3}) < 1e-15);
    CHECK(std::abs(*t.base_point() - cplx{0.95, 0.15}) < 1e-15);
    CHECK_THROWS_AS(two_cap_torus().transported({2.0, 0.0, 0.0, 1.0}), DomainError);
    const auto s = two_cap_sphere().transported({2.0, 1.0, 0.0, 1.0});
    CHECK(std::abs(s.cap_center(1) - 3.0) < 1e-15);
    CHECK(std::abs(s.normalization_point() - cplx{7.0, 2.0}) < 1e-15);
}
