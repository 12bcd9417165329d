#include "tietz/faber.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace tietz::faber {

std::string to_string(BasisTag tag)
{
    switch (tag) {
    case BasisTag::beta: return "beta";
    case BasisTag::gamma: return "gamma";
    case BasisTag::alpha: return "alpha";
    }
    return "?";
}

namespace {

void check_order(const FaberOptions& options, int m)
{
    if (m < 1) throw DomainError("Faber-Tietz form: m must be positive");
    if (m > options.max_order) {
        std::ostringstream os;
        os << "Faber-Tietz form: m = " << m << " exceeds the configured maximum " << options.max_order;
        throw DomainError(os.str());
    }
}

} // namespace

std::vector<cplx> alpha_values(const surface::SurfaceSpec& surface, std::size_t k, int max_order, cplx z,
                               const FaberOptions& options)
{
    if (k >= surface.cap_count()) throw DomainError("alpha_values: cap index out of range");
    const double rho = surface.cap(k).preimage_modulus(surface.canonical(z));
    if (rho < 1e-12) throw DomainError("alpha_values: z is the pole z_k");
    const double r0 = options.radius_factor * std::min(1.0, rho);
    return schiffer::schiffer_contour_batch(surface, k, max_order, z, r0, options.contour_nodes, ExecPolicy::serial,
                                            false);
}

std::vector<cplx> alpha_values_at_preimage(const surface::SurfaceSpec& surface, std::size_t k, int max_order,
                                           cplx zeta, const FaberOptions& options)
{
    if (k >= surface.cap_count()) throw DomainError("alpha_values_at_preimage: cap index out of range");
    const auto& cap = surface.cap(k);
    const double rho = std::abs(zeta);
    if (rho < 1e-12) throw DomainError("alpha_values_at_preimage: zeta = 0 is the pole");
    if (rho >= cap.extension_radius()) throw DomainError("alpha_values_at_preimage: zeta outside the map's domain");
    const double r0 = options.radius_factor * std::min(1.0, rho);
    return schiffer::schiffer_contour_batch(surface, k, max_order, cap.evaluate_extended(zeta), r0,
                                            options.contour_nodes, ExecPolicy::serial, false);
}

FaberBasisElement faber_tietz_form(const surface::SurfaceSpec& surface, std::size_t k, int m,
                                   const FaberOptions& options)
{
    check_order(options, m);
    if (k >= surface.cap_count()) throw DomainError("faber_tietz_form: cap index out of range");
    auto shared = std::make_shared<const surface::SurfaceSpec>(surface);
    FaberBasisElement e;
    e.tag = BasisTag::alpha;
    e.k = k;
    e.m = m;
    e.form = OneForm([shared, k, m, options](cplx w) { return alpha_values(*shared, k, m, w, options).back(); },
                     false, {Pole{surface.cap_center(k), m + 1}});
    e.method = "contour";
    e.contour_nodes = options.contour_nodes;
    e.radius_factor = options.radius_factor;
    return e;
}

FaberBasisElement beta_element(const surface::SurfaceSpec& surface, std::size_t k)
{
    FaberBasisElement e;
    e.tag = BasisTag::beta;
    e.k = k;
    e.form = surface::beta_form(surface, k);
    e.method = "closed-form";
    return e;
}

FaberBasisElement gamma_element(const surface::SurfaceSpec& surface, std::size_t j)
{
    auto basis = surface::gamma_basis(surface);
    if (j >= basis.size()) throw DomainError("gamma_element: index out of range");
    FaberBasisElement e;
    e.tag = BasisTag::gamma;
    e.k = j;
    e.form = basis[j];
    e.method = "closed-form";
    return e;
}

OneForm faber_combination(const surface::SurfaceSpec& surface, const numerics::CMatrix& coefficients,
                          const FaberOptions& options)
{
    if (static_cast<std::size_t>(coefficients.cols()) != surface.cap_count())
        throw DomainError("faber_combination: one coefficient column per cap is required");
    const auto order = static_cast<int>(coefficients.rows());
    if (order < 1) return OneForm([](cplx) { return cplx{0.0, 0.0}; });
    FaberOptions opts = options;
    opts.max_order = std::max(opts.max_order, order);
    auto shared = std::make_shared<const surface::SurfaceSpec>(surface);
    auto h = std::make_shared<const numerics::CMatrix>(coefficients);
    std::vector<Pole> poles;
    for (std::size_t k = 0; k < surface.cap_count(); ++k) poles.push_back({surface.cap_center(k), order + 1});
    return OneForm(
        [shared, h, order, opts](cplx w) {
            cplx acc{0.0, 0.0};
            for (Eigen::Index k = 0; k < h->cols(); ++k) {
                if (h->col(k).cwiseAbs().maxCoeff() == 0.0) continue;
                const auto a = alpha_values(*shared, static_cast<std::size_t>(k), order, w, opts);
                for (int m = 0; m < order; ++m) acc += (*h)(m, k) * a[static_cast<std::size_t>(m)];
            }
            return acc;
        },
        false, std::move(poles));
}

cplx LaurentTail::operator()(cplx z) const
{
    const cplx u = 1.0 / (z - center);
    cplx acc{0.0, 0.0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = (acc + *it) * u;
    return acc;
}

cplx LaurentTail::derivative(cplx z) const
{
    // d/dz u^j = -j u^{j+1}
    const cplx u = 1.0 / (z - center);
    cplx acc{0.0, 0.0};
    for (std::size_t j = coefficients.size(); j >= 1; --j) acc = (acc - static_cast<double>(j) * coefficients[j - 1]) * u;
    return acc * u;
}

cplx PrincipalPart::coefficient(int j) const
{
    if (j < 0) {
        const auto idx = static_cast<std::size_t>(-j - 1);
        return idx < tail.coefficients.size() ? tail.coefficients[idx] : cplx{0.0, 0.0};
    }
    const auto idx = static_cast<std::size_t>(j);
    return idx < head.size() ? head[idx] : cplx{0.0, 0.0};
}

std::vector<cplx> pullback_laurent(const OneForm& form, const conformal::ConformalMap& map, double radius, int lo,
                                   int hi, int nodes, ExecPolicy policy)
{
    if (form.is_conjugate()) throw DomainError("pullback_laurent: form must be holomorphic");
    if (!(radius > 0.0 && radius < map.extension_radius())) throw DomainError("pullback_laurent: bad radius");
    const auto n = static_cast<std::size_t>(nodes);
    std::vector<cplx> samples(n);
    for_each_index(
        n,
        [&](std::size_t l) {
            const cplx zeta = radius * unit_root(static_cast<long>(l), nodes);
            samples[l] = form(map.evaluate_extended(zeta)) * map.derivative_extended(zeta);
        },
        policy);
    for (const cplx& s : samples)
        if (!is_finite(s)) throw QuadratureError("pullback_laurent: expansion circle meets a singularity");
    return numerics::circle_coefficients(samples, radius, lo, hi);
}

PrincipalPart principal_part(const surface::SurfaceSpec& surface, const FaberBasisElement& element, int order,
                             double radius, int nodes)
{
    if (element.tag != BasisTag::alpha) throw DomainError("principal_part: element is not an alpha form");
    const int depth = std::max(order, element.m + 4);
    if (nodes < 2 * (depth + order + 2)) throw DomainError("principal_part: too few nodes");
    const auto& cap = surface.cap(element.k);
    FaberOptions options;
    options.contour_nodes = element.contour_nodes;
    options.radius_factor = element.radius_factor;
    options.max_order = element.m;

    const auto n = static_cast<std::size_t>(nodes);
    std::vector<cplx> samples(n);
    for_each_index(
        n,
        [&](std::size_t l) {
            const cplx zeta = radius * unit_root(static_cast<long>(l), nodes);
            samples[l] = alpha_values_at_preimage(surface, element.k, element.m, zeta, options).back() *
                         cap.derivative_extended(zeta);
        },
        default_policy());
    for (const cplx& s : samples)
        if (!is_finite(s)) throw QuadratureError("principal_part: expansion circle meets a singularity");
    const auto c = numerics::circle_coefficients(samples, radius, -depth, order);

    PrincipalPart p;
    p.radius = radius;
    p.tail.center = 0.0;
    p.tail.coefficients.resize(static_cast<std::size_t>(depth));
    for (int j = 1; j <= depth; ++j) p.tail.coefficients[static_cast<std::size_t>(j - 1)] = c[static_cast<std::size_t>(depth - j)];
    p.head.assign(c.begin() + depth, c.end());
    return p;
}

LaurentTail faber_polynomial(const conformal::ConformalMap& map, int m, double r0, int nodes)
{
    if (m < 1) throw DomainError("faber_polynomial: m must be positive");
    if (!(r0 > 0.0 && r0 < map.extension_radius())) throw DomainError("faber_polynomial: bad contour radius");
    const cplx zk = map.center_image();
    const double R = 2.0 * map.bounding_radius();
    const int samples = std::max(64, 4 * (m + 4));

    std::vector<cplx> eta(static_cast<std::size_t>(nodes)), fe(eta.size()), dfe(eta.size());
    for (int l = 0; l < nodes; ++l) {
        const auto i = static_cast<std::size_t>(l);
        eta[i] = r0 * unit_root(l, nodes);
        fe[i] = map.evaluate_extended(eta[i]);
        dfe[i] = map.derivative_extended(eta[i]) * std::pow(eta[i], 1 - m) / static_cast<double>(nodes);
    }
    std::vector<cplx> values(static_cast<std::size_t>(samples));
    for_each_index(
        values.size(),
        [&](std::size_t s) {
            const cplx z = zk + R * unit_root(static_cast<long>(s), samples);
            // (1/2 pi i) sum f'/(f - z) eta^{-m} (i eta)(2 pi / N)
            cplx acc{0.0, 0.0};
            for (std::size_t l = 0; l < fe.size(); ++l) acc += dfe[l] / (fe[l] - z);
            values[s] = acc;
        },
        default_policy());

    const int reach = samples / 2 - 1;
    const auto c = numerics::circle_coefficients(values, R, -reach, reach);
    double scale = 1e-300;
    for (const cplx& v : values) scale = std::max(scale, std::abs(v));
    LaurentTail tail;
    tail.center = zk;
    tail.coefficients.resize(static_cast<std::size_t>(m));
    double stray = 0.0;
    for (int j = -reach; j <= reach; ++j) {
        const cplx cj = c[static_cast<std::size_t>(j + reach)];
        if (j >= -m && j <= -1)
            tail.coefficients[static_cast<std::size_t>(-j - 1)] = cj;
        else
            stray = std::max(stray, std::abs(cj) * std::pow(R, j));
    }
    if (stray > 1e-8 * scale) {
        std::ostringstream os;
        os << "faber_polynomial: inconsistent tail fit (stray coefficients " << stray / scale
           << " relative); wrong convention or contour radius too large";
        throw NumericalError(os.str());
    }
    return tail;
}

} // namespace tietz::faber
