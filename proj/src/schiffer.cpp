#include "tietz/schiffer.hpp"

#include <cmath>
#include <sstream>

namespace tietz::schiffer {

AntiHolomorphicDatum AntiHolomorphicDatum::monomial(std::size_t cap, int m)
{
    if (m < 1) throw DomainError("monomial datum: m must be positive");
    AntiHolomorphicDatum d;
    d.add(cap, [m](cplx eta) { return static_cast<double>(m) * std::pow(eta, m - 1); });
    return d;
}

AntiHolomorphicDatum& AntiHolomorphicDatum::add(std::size_t cap, ComplexFn b)
{
    terms_.push_back({cap, std::move(b)});
    return *this;
}

AntiHolomorphicDatum AntiHolomorphicDatum::scaled(cplx s) const
{
    AntiHolomorphicDatum out;
    const cplx cs = std::conj(s);
    for (const Term& t : terms_) {
        auto b = t.b;
        out.add(t.cap, [b, cs](cplx eta) { return cs * b(eta); });
    }
    return out;
}

AntiHolomorphicDatum& AntiHolomorphicDatum::operator+=(const AntiHolomorphicDatum& other)
{
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

cplx AntiHolomorphicDatum::value(std::size_t cap, cplx eta) const
{
    cplx acc{0.0, 0.0};
    for (const Term& t : terms_)
        if (t.cap == cap) acc += std::conj(t.b(eta));
    return acc;
}

namespace {

void require_in_sigma(const surface::SurfaceSpec& surface, cplx z)
{
    if (auto k = surface.cap_containing(z)) {
        std::ostringstream os;
        os << "apply_schiffer: z = " << z << " lies in closed cap " << *k + 1;
        throw DomainError(os.str());
    }
}

void require_outside_contour(const surface::SurfaceSpec& surface, std::size_t k, cplx z, double r0)
{
    if (k >= surface.cap_count()) throw DomainError("schiffer_contour: cap index out of range");
    const auto& cap = surface.cap(k);
    if (!(r0 > 0.0 && r0 < cap.extension_radius())) throw DomainError("schiffer_contour: radius out of range");
    if (cap.preimage_modulus(surface.canonical(z)) <= r0)
        throw DomainError("schiffer_contour: z lies on or inside the contour");
}

/// Samples K(f(eta_l), z) f'(eta_l) at eta_l = r0 e^{2 pi i l / N}.
std::vector<cplx> contour_samples(const surface::SurfaceSpec& surface, std::size_t k, cplx z, double r0,
                                  int nodes, ExecPolicy policy)
{
    const auto& cap = surface.cap(k);
    const auto n = static_cast<std::size_t>(nodes);
    std::vector<cplx> g(n);
    for_each_index(
        n,
        [&](std::size_t l) {
            const cplx eta = r0 * unit_root(static_cast<long>(l), nodes);
            g[l] = surface::schiffer_kernel(surface, cap.evaluate_extended(eta), z) * cap.derivative_extended(eta);
        },
        policy);
    for (std::size_t l = 0; l < n; ++l)
        if (!is_finite(g[l])) throw QuadratureError("schiffer_contour: non-finite kernel sample");
    return g;
}

} // namespace

cplx apply_schiffer(const surface::SurfaceSpec& surface, const AntiHolomorphicDatum& datum, cplx z,
                    const numerics::DiskGrid& grid, ExecPolicy policy)
{
    require_in_sigma(surface, z);
    const auto& nodes = grid.nodes();
    cplx total{0.0, 0.0};
    for (const auto& term : datum.terms()) {
        if (term.cap >= surface.cap_count()) throw DomainError("apply_schiffer: datum refers to a missing cap");
        const auto& cap = surface.cap(term.cap);
        std::vector<cplx> values(nodes.size());
        std::vector<double> weights(nodes.size());
        for_each_index(
            nodes.size(),
            [&](std::size_t i) {
                const cplx eta = nodes[i].point;
                values[i] = surface::schiffer_kernel(surface, cap.evaluate_extended(eta), z) *
                            cap.derivative_extended(eta) * std::conj(term.b(eta));
            },
            policy);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!is_finite(values[i])) throw QuadratureError("apply_schiffer: non-finite integrand sample");
            weights[i] = nodes[i].weight;
        }
        total -= weighted_sum(values, weights);
    }
    return total;
}

cplx apply_schiffer(const surface::SurfaceSpec& surface, const AntiHolomorphicDatum& datum, cplx z,
                    const AreaOptions& options, ExecPolicy policy)
{
    const numerics::DiskGrid coarse(options.radial, options.angular);
    const cplx a = apply_schiffer(surface, datum, z, coarse, policy);
    const cplx b = apply_schiffer(surface, datum, z, coarse.refined(), policy);
    if (std::abs(a - b) > options.tolerance * std::max(1.0, std::abs(b))) {
        std::ostringstream os;
        os << "apply_schiffer: grid levels disagree by " << std::abs(a - b) << " at z = " << z;
        throw QuadratureError(os.str());
    }
    return b;
}

cplx schiffer_contour(const surface::SurfaceSpec& surface, std::size_t k, int m, cplx z, double r0, int nodes,
                      ExecPolicy policy)
{
    if (m < 1) throw DomainError("schiffer_contour: m must be positive");
    if (nodes < numerics::CircleContour::min_nodes) throw DomainError("schiffer_contour: too few nodes");
    require_outside_contour(surface, k, z, r0);
    const auto g = contour_samples(surface, k, z, r0, nodes, policy);
    // -(1/2i) sum g eta^{-m} (i eta) (2 pi / N) = -(pi / N) sum g eta^{1-m}
    std::vector<cplx> weights(g.size());
    for (std::size_t l = 0; l < g.size(); ++l) {
        const cplx eta = r0 * unit_root(static_cast<long>(l), nodes);
        weights[l] = std::pow(eta, 1 - m);
    }
    return -(pi / nodes) * weighted_sum(g, weights);
}

std::vector<cplx> schiffer_contour_batch(const surface::SurfaceSpec& surface, std::size_t k, int max_order,
                                         cplx z, double r0, int nodes, ExecPolicy policy, bool verify_position)
{
    if (max_order < 1) throw DomainError("schiffer_contour_batch: max_order must be positive");
    if (nodes < 2 * max_order) throw DomainError("schiffer_contour_batch: too few nodes for the requested order");
    if (verify_position)
        require_outside_contour(surface, k, z, r0);
    else if (k >= surface.cap_count())
        throw DomainError("schiffer_contour_batch: cap index out of range");
    const auto g = contour_samples(surface, k, z, r0, nodes, policy);
    auto coeffs = numerics::circle_coefficients(g, r0, 0, max_order - 1);
    for (auto& c : coeffs) c *= -pi;
    return coeffs;
}

} // namespace tietz::schiffer
