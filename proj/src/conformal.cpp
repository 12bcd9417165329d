#include "tietz/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tietz::conformal {

namespace {

constexpr int seed_radial = 64;
constexpr int seed_angular = 64;
constexpr int winding_nodes = 512;
constexpr int max_newton_steps = 50;
constexpr double infinity = std::numeric_limits<double>::infinity();

std::string format_complex(cplx z)
{
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

} // namespace

std::string_view to_string(MapKind kind)
{
    switch (kind) {
    case MapKind::affine: return "affine";
    case MapKind::joukowski_ellipse: return "joukowski-ellipse";
    case MapKind::polynomial_perturbation: return "polynomial-perturbation";
    case MapKind::moebius_composed: return "moebius-composed";
    }
    return "unknown";
}

MapKind parse_map_kind(std::string_view name)
{
    if (name == "affine") return MapKind::affine;
    if (name == "joukowski-ellipse") return MapKind::joukowski_ellipse;
    if (name == "polynomial-perturbation") return MapKind::polynomial_perturbation;
    if (name == "moebius-composed") return MapKind::moebius_composed;
    throw DomainError("unknown map kind '" + std::string(name) + "'");
}

std::optional<cplx> Moebius::pole() const
{
    if (c == cplx{0.0, 0.0}) return std::nullopt;
    return -d / c;
}

struct ConformalMap::Data {
    MapKind kind = MapKind::affine;
    cplx center{0.0, 0.0};
    cplx scale{1.0, 0.0};
    cplx a{0.0, 0.0};
    std::vector<cplx> poly; // c_2, c_3, ...
    Moebius g;
    std::shared_ptr<const ConformalMap> inner;

    double extension = infinity;
    double bounding = 0.0;
    std::vector<cplx> seed_zeta;
    std::vector<cplx> seed_value;
    numerics::PowerSeries taylor;

    cplx eval(cplx z) const
    {
        switch (kind) {
        case MapKind::affine: return center + scale * z;
        case MapKind::joukowski_ellipse: return center + scale * z / (1.0 + a * z * z);
        case MapKind::polynomial_perturbation: {
            cplx acc{0.0, 0.0};
            for (std::size_t j = poly.size(); j-- > 0;) acc = (acc + poly[j]) * z;
            return center + scale * (z + acc * z);
        }
        case MapKind::moebius_composed: return g(inner->evaluate_extended(z));
        }
        return {};
    }

    cplx deriv(cplx z) const
    {
        switch (kind) {
        case MapKind::affine: return scale;
        case MapKind::joukowski_ellipse: {
            const cplx den = 1.0 + a * z * z;
            return scale * (1.0 - a * z * z) / (den * den);
        }
        case MapKind::polynomial_perturbation: {
            // d/dz sum_j c_j z^j for j >= 2
            cplx acc{0.0, 0.0};
            for (std::size_t j = poly.size(); j-- > 0;) acc = acc * z + static_cast<double>(j + 2) * poly[j];
            return scale * (1.0 + acc * z);
        }
        case MapKind::moebius_composed:
            return g.derivative(inner->evaluate_extended(z)) * inner->derivative_extended(z);
        }
        return {};
    }
};

ConformalMap::ConformalMap(std::shared_ptr<Data> data) : data_(std::move(data)) {}

ConformalMap ConformalMap::affine(cplx center, cplx scale)
{
    if (std::abs(scale) == 0.0 || !is_finite(scale) || !is_finite(center))
        throw DomainError("affine map: scale must be non-zero and finite");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::affine;
    d->center = center;
    d->scale = scale;
    d->extension = infinity;
    ConformalMap map(d);
    map.finalize();
    return map;
}

ConformalMap ConformalMap::joukowski_ellipse(cplx center, cplx scale, cplx a)
{
    if (std::abs(scale) == 0.0 || !is_finite(scale) || !is_finite(center))
        throw DomainError("joukowski-ellipse map: scale must be non-zero and finite");
    if (!(std::abs(a) < 1.0)) throw DomainError("joukowski-ellipse map: parameter a must satisfy |a| < 1");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::joukowski_ellipse;
    d->center = center;
    d->scale = scale;
    d->a = a;
    d->extension = std::abs(a) > 0.0 ? 1.0 / std::sqrt(std::abs(a)) : infinity;
    ConformalMap map(d);
    map.finalize();
    return map;
}

ConformalMap ConformalMap::polynomial_perturbation(cplx center, cplx scale, std::vector<cplx> higher)
{
    if (std::abs(scale) == 0.0 || !is_finite(scale) || !is_finite(center))
        throw DomainError("polynomial-perturbation map: scale must be non-zero and finite");
    double budget = 0.0;
    for (std::size_t j = 0; j < higher.size(); ++j) budget += static_cast<double>(j + 2) * std::abs(higher[j]);
    if (!(budget < 1.0))
        throw DomainError("polynomial-perturbation map: coefficients must satisfy sum_j j|c_j| < 1");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::polynomial_perturbation;
    d->center = center;
    d->scale = scale;
    d->poly = std::move(higher);
    // radius R with sum_j j |c_j| R^{j-1} = 1; f' cannot vanish inside it
    double lo = 1.0, hi = 1.0;
    auto load = [&](double r) {
        double s = 0.0;
        for (std::size_t j = 0; j < d->poly.size(); ++j)
            s += static_cast<double>(j + 2) * std::abs(d->poly[j]) * std::pow(r, static_cast<double>(j + 1));
        return s;
    };
    if (budget == 0.0) {
        d->extension = infinity;
    } else {
        while (load(hi) < 1.0 && hi < 1e6) hi *= 2.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (load(mid) < 1.0 ? lo : hi) = mid;
        }
        d->extension = lo;
    }
    ConformalMap map(d);
    map.finalize();
    return map;
}

ConformalMap ConformalMap::moebius_composed(const Moebius& g, const ConformalMap& inner)
{
    if (std::abs(g.determinant()) == 0.0) throw DomainError("moebius-composed map: degenerate Moebius transform");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::moebius_composed;
    d->g = g;
    d->inner = std::make_shared<const ConformalMap>(inner);
    d->extension = inner.extension_radius();
    if (auto p = g.pole()) {
        if (inner.contains_closed(*p))
            throw DomainError("moebius-composed map: the pole of the Moebius transform lies in the closed inner cap");
        // keep the continuation away from the preimage of the pole
        try {
            d->extension = std::min(d->extension, std::abs(inner.invert(*p)));
        } catch (const NumericalError&) {
        }
    }
    d->center = g(inner.center_image());
    d->scale = g.derivative(inner.center_image()) * inner.derivative(0.0);
    ConformalMap map(d);
    map.finalize();
    return map;
}

void ConformalMap::finalize()
{
    auto d = std::const_pointer_cast<Data>(data_);

    // derivative must not vanish on a 32 x 64 grid of the closed disk
    const double floor = 1e-12 * std::abs(d->deriv(0.0));
    for (int i = 0; i < 32; ++i) {
        const double r = static_cast<double>(i) / 31.0;
        for (int j = 0; j < 64; ++j) {
            const cplx zeta = r * unit_root(j, 64);
            const cplx fp = d->deriv(zeta);
            if (!is_finite(fp) || std::abs(fp) <= floor)
                throw DomainError("conformal map: derivative vanishes or is singular on the closed disk (" +
                                  describe() + ")");
        }
    }

    // injectivity spot check on the boundary
    const int nb = 256;
    std::vector<cplx> boundary(nb);
    for (int j = 0; j < nb; ++j) boundary[static_cast<std::size_t>(j)] = d->eval(unit_root(j, nb));
    const cplx z0 = d->eval(0.0);
    double bound = 0.0;
    for (const cplx& b : boundary) bound = std::max(bound, std::abs(b - z0));
    const double tiny = 1e-10 * bound;
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j)
            if (std::abs(boundary[static_cast<std::size_t>(i)] - boundary[static_cast<std::size_t>(j)]) <= tiny)
                throw DomainError("conformal map: boundary samples collide, map is not injective (" + describe() + ")");
    d->bounding = bound;

    d->seed_zeta.reserve(seed_radial * seed_angular);
    d->seed_value.reserve(seed_radial * seed_angular);
    for (int i = 0; i < seed_radial; ++i) {
        const double r = static_cast<double>(i) / (seed_radial - 1);
        for (int j = 0; j < seed_angular; ++j) {
            const cplx zeta = r * unit_root(j, seed_angular);
            d->seed_zeta.push_back(zeta);
            d->seed_value.push_back(d->eval(zeta));
            if (i == 0) break;
        }
    }

    d->taylor = numerics::extract_taylor([d](cplx z) { return d->eval(z); }, 0.0, 0.5, 16, 64,
                                         ExecPolicy::serial);
}

MapKind ConformalMap::kind() const noexcept { return data_->kind; }

std::vector<cplx> ConformalMap::parameters() const
{
    const Data& d = *data_;
    switch (d.kind) {
    case MapKind::affine: return {d.center, d.scale};
    case MapKind::joukowski_ellipse: return {d.center, d.scale, d.a};
    case MapKind::polynomial_perturbation: {
        std::vector<cplx> p{d.center, d.scale};
        p.insert(p.end(), d.poly.begin(), d.poly.end());
        return p;
    }
    case MapKind::moebius_composed: {
        std::vector<cplx> p{d.g.a, d.g.b, d.g.c, d.g.d};
        const auto inner = d.inner->parameters();
        p.insert(p.end(), inner.begin(), inner.end());
        return p;
    }
    }
    return {};
}

std::string ConformalMap::describe() const
{
    std::string out(to_string(kind()));
    out += "(";
    const auto params = parameters();
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += format_complex(params[i]);
    }
    if (kind() == MapKind::moebius_composed) out += "; inner " + data_->inner->describe();
    out += ")";
    return out;
}

cplx ConformalMap::center_image() const { return data_->eval(0.0); }

cplx ConformalMap::evaluate(cplx zeta) const
{
    if (!(std::abs(zeta) < 1.0)) throw DomainError("ConformalMap::evaluate: |zeta| must be < 1");
    return data_->eval(zeta);
}

cplx ConformalMap::derivative(cplx zeta) const
{
    if (!(std::abs(zeta) < 1.0)) throw DomainError("ConformalMap::derivative: |zeta| must be < 1");
    return data_->deriv(zeta);
}

cplx ConformalMap::evaluate_extended(cplx zeta) const { return data_->eval(zeta); }
cplx ConformalMap::derivative_extended(cplx zeta) const { return data_->deriv(zeta); }
double ConformalMap::extension_radius() const noexcept { return data_->extension; }
double ConformalMap::bounding_radius() const noexcept { return data_->bounding; }
double ConformalMap::scale() const noexcept { return std::abs(data_->deriv(0.0)); }

cplx ConformalMap::invert(cplx w) const
{
    const Data& d = *data_;
    std::size_t best = 0;
    double best_dist = infinity;
    for (std::size_t i = 0; i < d.seed_value.size(); ++i) {
        const double dist = std::abs(d.seed_value[i] - w);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    return invert(w, d.seed_zeta[best]);
}

cplx ConformalMap::invert(cplx w, cplx seed) const
{
    const Data& d = *data_;
    const double tol = 1e-12 * std::max(1.0, std::abs(d.scale));
    const double limit = 0.999 * d.extension;
    cplx zeta = seed;
    double residual = std::abs(d.eval(zeta) - w);
    for (int step = 0; step < max_newton_steps; ++step) {
        if (residual < tol) {
            // one polishing step, kept only if it does not increase the residual
            const cplx polished = zeta - (d.eval(zeta) - w) / d.deriv(zeta);
            if (std::abs(polished) < limit && std::abs(d.eval(polished) - w) <= residual) return polished;
            return zeta;
        }
        cplx delta = (d.eval(zeta) - w) / d.deriv(zeta);
        cplx next = zeta - delta;
        // damp steps that leave the region of analytic continuation or increase the residual
        for (int halving = 0; halving < 30 && (std::abs(next) >= limit || !(std::abs(d.eval(next) - w) < residual)); ++halving) {
            delta *= 0.5;
            next = zeta - delta;
        }
        zeta = next;
        residual = std::abs(d.eval(zeta) - w);
        if (!std::isfinite(residual)) break;
    }
    if (residual < tol) return zeta;
    throw InversionError("ConformalMap::invert: Newton iteration did not converge for w = " + format_complex(w),
                         zeta, residual);
}

double ConformalMap::winding_number(cplx w) const
{
    const Data& d = *data_;
    cplx acc{0.0, 0.0};
    for (int j = 0; j < winding_nodes; ++j) {
        const cplx zeta = unit_root(j, winding_nodes);
        const cplx diff = d.eval(zeta) - w;
        if (std::abs(diff) == 0.0) return 0.5;
        acc += d.deriv(zeta) * zeta / diff;
    }
    return acc.real() / winding_nodes;
}

double ConformalMap::preimage_modulus(cplx w) const
{
    const Data& d = *data_;
    const double far = d.bounding * (1.0 + 1e-9) + 1e-14;
    if (std::abs(w - d.eval(0.0)) > far) return infinity;
    const double wind = winding_number(w);
    if (wind < 0.05) return infinity;
    if (wind > 0.95) {
        const double m = std::abs(invert(w));
        return std::min(m, 1.0);
    }
    try {
        const double m = std::abs(invert(w));
        return m <= 1.0 + 1e-12 ? std::min(m, 1.0) : infinity;
    } catch (const InversionError&) {
        return infinity;
    }
}

std::vector<cplx> ConformalMap::boundary_samples(int count) const
{
    std::vector<cplx> out(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = data_->eval(unit_root(j, count));
    return out;
}

const numerics::PowerSeries& ConformalMap::taylor() const { return data_->taylor; }

Chart ConformalMap::chart() const
{
    auto d = data_;
    return Chart{[d](cplx z) { return d->eval(z); }, [d](cplx z) { return d->deriv(z); }};
}

CapFamily::CapFamily(std::vector<ConformalMap> maps, double separation)
    : maps_(std::move(maps)), separation_(separation)
{
    if (separation < 0.0) throw DomainError("CapFamily: separation must be non-negative");
    const int nb = 256;
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        for (std::size_t j = i + 1; j < maps_.size(); ++j) {
            if (maps_[i].contains_closed(maps_[j].center_image()) || maps_[j].contains_closed(maps_[i].center_image()))
                throw DomainError("CapFamily: caps " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                  " overlap");
            const auto bi = maps_[i].boundary_samples(nb);
            const auto bj = maps_[j].boundary_samples(nb);
            double gap = infinity;
            for (const cplx& a : bi)
                for (const cplx& b : bj) gap = std::min(gap, std::abs(a - b));
            bool crossing = false;
            for (const cplx& b : bj) crossing = crossing || maps_[i].contains_closed(b);
            if (crossing || gap <= separation_)
                throw DomainError("CapFamily: caps " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                  " overlap or are closer than the required separation");
        }
    }
}

std::optional<std::size_t> CapFamily::cap_containing(cplx w) const
{
    for (std::size_t k = 0; k < maps_.size(); ++k)
        if (maps_[k].contains_closed(w)) return k;
    return std::nullopt;
}

} // namespace tietz::conformal
