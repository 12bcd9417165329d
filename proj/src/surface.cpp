#include "tietz/surface.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tietz::surface {

namespace {

constexpr double coincidence = 1e-12;

void require_apart(cplx a, cplx b, const char* what)
{
    if (std::abs(a - b) < coincidence) throw DomainError(what);
}

} // namespace

SurfaceSpec SurfaceSpec::sphere(conformal::CapFamily caps, cplx w0, std::optional<cplx> q)
{
    SurfaceSpec s;
    s.genus_ = 0;
    s.caps_ = std::move(caps);
    s.w0_ = w0;
    s.q_ = q;
    s.validate();
    return s;
}

SurfaceSpec SurfaceSpec::torus(cplx tau, conformal::CapFamily caps, cplx q, cplx w0, double margin)
{
    if (!(tau.imag() > 0.0)) throw DomainError("torus: Im tau must be positive");
    SurfaceSpec s;
    s.genus_ = 1;
    s.tau_ = tau;
    s.lattice_.emplace(tau);
    s.caps_ = std::move(caps);
    s.q_ = q;
    s.w0_ = w0;
    s.margin_ = margin;
    s.validate();
    return s;
}

void SurfaceSpec::validate() const
{
    if (genus_ == 1) {
        if (!(margin_ >= 0.0 && margin_ < 0.5)) throw DomainError("torus: margin must lie in [0, 0.5)");
        for (std::size_t k = 0; k < caps_.size(); ++k) {
            for (const cplx& b : caps_[k].boundary_samples(256)) {
                const auto [s, t] = lattice_->lattice_coordinates(b);
                if (s < margin_ || s > 1.0 - margin_ || t < margin_ || t > 1.0 - margin_) {
                    std::ostringstream os;
                    os << "torus: cap " << k + 1 << " leaves the fundamental parallelogram (margin " << margin_ << ")";
                    throw DomainError(os.str());
                }
            }
        }
        if (!q_) throw DomainError("torus: base point q must be finite");
        if (std::abs(difference(*q_, w0_)) < coincidence) throw DomainError("torus: q and w0 must differ");
    } else if (q_ && std::abs(*q_ - w0_) < coincidence) {
        throw DomainError("sphere: q and w0 must differ");
    }
    if (in_closed_cap(w0_)) throw DomainError("normalization point w0 lies in a closed cap");
    if (q_ && in_closed_cap(*q_)) throw DomainError("base point q lies in a closed cap");
}

cplx SurfaceSpec::tau() const
{
    if (genus_ != 1) throw DomainError("tau is only defined on the torus");
    return tau_;
}

const elliptic::ThetaLattice& SurfaceSpec::lattice() const
{
    if (!lattice_) throw DomainError("lattice is only defined on the torus");
    return *lattice_;
}

cplx SurfaceSpec::canonical(cplx w) const
{
    if (genus_ == 0) return w;
    const double t = std::floor(w.imag() / tau_.imag());
    w -= t * tau_;
    return w - std::floor(w.real());
}

cplx SurfaceSpec::difference(cplx a, cplx b) const
{
    return genus_ == 0 ? a - b : lattice_->reduce(a - b);
}

std::optional<std::size_t> SurfaceSpec::cap_containing(cplx w) const
{
    return caps_.cap_containing(canonical(w));
}

double SurfaceSpec::distance_to_caps(cplx w) const
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cap : caps_)
        for (const cplx& b : cap.boundary_samples(256)) best = std::min(best, std::abs(difference(w, b)));
    return best;
}

SurfaceSpec SurfaceSpec::transported(const conformal::Moebius& g) const
{
    if (genus_ == 1 && (g.c != cplx{0.0, 0.0} || g.a != g.d))
        throw DomainError("torus: only translations can be transported in the flat chart");
    std::vector<conformal::ConformalMap> maps;
    for (const auto& cap : caps_) maps.push_back(conformal::ConformalMap::moebius_composed(g, cap));
    conformal::CapFamily family(std::move(maps), caps_.separation());
    if (genus_ == 0) {
        std::optional<cplx> q;
        if (q_) {
            if (g.c * (*q_) + g.d == cplx{0.0, 0.0}) throw DomainError("transport sends q to infinity");
            q = g(*q_);
        } else if (g.c != cplx{0.0, 0.0}) {
            q = g.a / g.c;
        }
        return sphere(std::move(family), g(w0_), q);
    }
    return torus(tau_, std::move(family), g(*q_), g(w0_), margin_);
}

double green(const SurfaceSpec& surface, cplx w, cplx z, std::optional<cplx> q)
{
    const cplx w0 = surface.normalization_point();
    if (surface.genus() == 0) {
        require_apart(w, z, "green: w coincides with z");
        if (!q) return std::log(std::abs((z - w0) / (w - z)));
        require_apart(w, *q, "green: w coincides with q");
        return std::log(std::abs(((z - w0) * (w - *q)) / ((w - z) * (*q - w0))));
    }
    if (!q) throw DomainError("green: the torus needs a finite base point");
    const auto& lat = surface.lattice();
    if (std::abs(lat.reduce(w - z)) < coincidence) throw DomainError("green: w coincides with z");
    if (std::abs(lat.reduce(w - *q)) < coincidence) throw DomainError("green: w coincides with q");
    // grouped so that w == w0 gives exactly zero
    return (lat.periodic_log_theta(w0 - z) - lat.periodic_log_theta(w - z)) +
           (lat.periodic_log_theta(w - *q) - lat.periodic_log_theta(w0 - *q));
}

double green(const SurfaceSpec& surface, cplx w, cplx z)
{
    return green(surface, w, z, surface.base_point());
}

cplx schiffer_kernel(const SurfaceSpec& surface, cplx w, cplx z)
{
    if (surface.genus() == 0) {
        require_apart(w, z, "schiffer_kernel: coincident points");
        const cplx d = w - z;
        return -1.0 / (pi * d * d);
    }
    const auto& lat = surface.lattice();
    if (std::abs(lat.reduce(w - z)) < coincidence) throw DomainError("schiffer_kernel: coincident points");
    return lat.log_derivative_prime(w - z) / pi + 1.0 / surface.tau().imag();
}

cplx kernel_from_green(const SurfaceSpec& surface, cplx w, cplx z, std::optional<cplx> q, double rho, int nodes)
{
    if (!(rho > 0.0) || nodes < 8) throw DomainError("kernel_from_green: bad stencil");
    if (std::abs(surface.difference(w, z)) <= 2.0 * rho) throw DomainError("kernel_from_green: w and z too close");
    if (q && std::abs(surface.difference(w, *q)) <= 2.0 * rho) throw DomainError("kernel_from_green: w too close to q");
    const auto n = static_cast<std::size_t>(nodes);
    std::vector<cplx> inner(n);
    for (std::size_t a = 0; a < n; ++a) {
        const cplx ea = unit_root(static_cast<long>(a), nodes);
        const cplx zz = z + rho * ea;
        cplx acc{0.0, 0.0};
        for (std::size_t b = 0; b < n; ++b) {
            const cplx eb = unit_root(static_cast<long>(b), nodes);
            acc += green(surface, w + rho * eb, zz, q) * std::conj(eb);
        }
        inner[a] = acc / (static_cast<double>(nodes) * rho) * std::conj(ea);
    }
    cplx acc{0.0, 0.0};
    for (const cplx& v : inner) acc += v;
    return (2.0 / pi) * acc / (static_cast<double>(nodes) * rho);
}

OneForm beta_form(const SurfaceSpec& surface, std::size_t k)
{
    const std::size_t n = surface.cap_count();
    if (n < 2) throw DomainError("beta_form: needs at least two caps");
    if (k + 1 >= n) throw DomainError("beta_form: index must be below the last cap");
    const cplx zk = surface.cap_center(k);
    const cplx zn = surface.cap_center(n - 1);
    std::vector<Pole> poles{{zk, 1}, {zn, 1}};
    if (surface.genus() == 0)
        return OneForm([zk, zn](cplx w) { return 1.0 / (w - zk) - 1.0 / (w - zn); }, false, std::move(poles));
    const elliptic::ThetaLattice lat = surface.lattice();
    return OneForm([lat, zk, zn](cplx w) { return lat.log_derivative(w - zk) - lat.log_derivative(w - zn); }, false,
                   std::move(poles));
}

std::vector<OneForm> gamma_basis(const SurfaceSpec& surface)
{
    if (surface.genus() == 0) return {};
    return {OneForm([](cplx) { return cplx{1.0, 0.0}; })};
}

Cycle a_cycle(const SurfaceSpec& surface, int nodes)
{
    if (surface.genus() != 1) throw DomainError("a_cycle: the sphere has no a-cycles");
    Cycle c;
    c.kind = CycleKind::a;
    c.point = [](double t) { return cplx{t, 0.0}; };
    c.tangent = [](double) { return cplx{1.0, 0.0}; };
    c.nodes = nodes;
    return c;
}

Cycle b_cycle(const SurfaceSpec& surface, int nodes)
{
    if (surface.genus() != 1) throw DomainError("b_cycle: the sphere has no b-cycles");
    const cplx tau = surface.tau();
    Cycle c;
    c.kind = CycleKind::b;
    c.point = [tau](double t) { return t * tau; };
    c.tangent = [tau](double) { return tau; };
    c.nodes = nodes;
    return c;
}

Cycle boundary_cycle(const SurfaceSpec& surface, std::size_t k, double radius, int nodes)
{
    if (k >= surface.cap_count()) throw DomainError("boundary_cycle: cap index out of range");
    const auto& cap = surface.cap(k);
    if (!(radius > 0.0 && radius < cap.extension_radius()))
        throw DomainError("boundary_cycle: radius outside the map's region of analyticity");
    Cycle c;
    c.kind = CycleKind::boundary;
    c.index = k;
    c.point = [cap, radius](double t) { return cap.evaluate_extended(radius * std::polar(1.0, 2.0 * pi * t)); };
    c.tangent = [cap, radius](double t) {
        const cplx zeta = radius * std::polar(1.0, 2.0 * pi * t);
        return cap.derivative_extended(zeta) * 2.0 * pi * I * zeta;
    };
    c.nodes = nodes;
    return c;
}

cplx period(const OneForm& form, const Cycle& cycle, ExecPolicy policy)
{
    const auto n = static_cast<std::size_t>(cycle.nodes);
    std::vector<cplx> points(n), tangents(n);
    for (std::size_t l = 0; l < n; ++l) {
        const double t = static_cast<double>(l) / static_cast<double>(n);
        points[l] = cycle.point(t);
        tangents[l] = cycle.tangent(t);
    }
    double scale = 0.0;
    for (std::size_t l = 0; l < n; ++l) scale = std::max(scale, std::abs(tangents[l]) / static_cast<double>(n));
    for (const Pole& p : form.poles())
        for (const cplx& x : points)
            if (std::abs(x - p.location) <= 1e-9 * std::max(1.0, scale))
                throw DomainError("period: a tagged pole lies on the integration path");

    const auto values = evaluate_nodes([&form](cplx w) { return form.coefficient(w); }, points, policy);
    std::vector<cplx> weights(n);
    for (std::size_t l = 0; l < n; ++l) {
        if (!is_finite(values[l])) throw QuadratureError("period: non-finite form value on the path (pole on the path?)");
        weights[l] = tangents[l] / static_cast<double>(n);
    }
    if (!form.is_conjugate()) return weighted_sum(values, weights);
    cplx acc{0.0, 0.0};
    for (std::size_t l = 0; l < n; ++l) acc += std::conj(values[l] * tangents[l]) / static_cast<double>(n);
    return acc;
}

std::vector<cplx> period_matrix(const SurfaceSpec& surface)
{
    if (surface.genus() == 0) return {};
    return {period(gamma_basis(surface).front(), b_cycle(surface))};
}

} // namespace tietz::surface
