// Serial vs OpenMP node evaluation for the heavy kernels. Results must be
// bitwise identical; only the wall time may differ.

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>

#include "tietz/pairing.hpp"
#include "tietz/schiffer.hpp"

using namespace tietz;

namespace {

template <class F>
double seconds(F&& f, int repeats)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < repeats; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / repeats;
}

bool same_bits(cplx a, cplx b) { return std::memcmp(&a, &b, sizeof(cplx)) == 0; }

template <class F>
bool compare(const char* name, F&& f, int repeats)
{
    cplx serial{}, parallel{};
    const double ts = seconds([&] { serial = f(ExecPolicy::serial); }, repeats);
    const double tp = seconds([&] { parallel = f(ExecPolicy::parallel); }, repeats);
    const bool ok = same_bits(serial, parallel);
    std::cout << std::left << std::setw(22) << name << std::right << std::setw(12) << std::scientific
              << std::setprecision(3) << ts << std::setw(12) << tp << std::setw(9) << std::fixed
              << std::setprecision(2) << ts / tp << "x  " << (ok ? "identical" : "MISMATCH") << "\n";
    return ok;
}

} // namespace

int main()
{
    const auto jouk = conformal::ConformalMap::joukowski_ellipse(0.0, 1.0, 0.25);
    const auto sphere = surface::SurfaceSpec::sphere(conformal::CapFamily({jouk}), cplx{3.0, 0.0});
    const auto torus = surface::SurfaceSpec::torus(
        {0.2, 1.0},
        conformal::CapFamily({conformal::ConformalMap::affine({0.3, 0.3}, 0.08),
                              conformal::ConformalMap::affine({0.55, 0.6}, 0.08)}),
        {0.85, 0.15}, {0.15, 0.85});

    std::cout << std::left << std::setw(22) << "kernel" << std::right << std::setw(12) << "serial s" << std::setw(12)
              << "parallel s" << std::setw(10) << "speedup" << "\n";
    bool ok = true;
    ok &= compare("apply_schiffer", [&](ExecPolicy p) {
        return schiffer::apply_schiffer(sphere, schiffer::AntiHolomorphicDatum::monomial(0, 3), {2.0, 1.0},
                                        numerics::DiskGrid(96, 256), p);
    }, 3);
    ok &= compare("schiffer_contour", [&](ExecPolicy p) {
        return schiffer::schiffer_contour(torus, 0, 2, {0.7, 0.2}, 0.8, 8192, p);
    }, 5);
    ok &= compare("area_pairing", [&](ExecPolicy p) {
        const OneForm w([](cplx z) { return 1.0 / ((z - 3.0) * (z - 3.0)); });
        return numerics::area_pairing(w, w, jouk.chart(), numerics::DiskGrid(256, 512), p);
    }, 3);
    ok &= compare("alpha_traces (torus)", [&](ExecPolicy p) {
        const series::SigmaPairing pairing(torus);
        const auto t = pairing.alpha_traces(0, 16, {}, p);
        return pairing.pair(t[3], t[7]);
    }, 1);
    return ok ? 0 : 1;
}
