#include "tietz/series.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace tietz::series {

TargetForm double_pole_target(cplx a)
{
    TargetForm t;
    t.form = OneForm([a](cplx z) { const cplx d = z - a; return 1.0 / (d * d); }, false, {Pole{a, 2}});
    std::ostringstream os;
    os << "dz/(z-a)^2, a = " << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i";
    t.name = "double-pole";
    t.description = os.str();
    return t;
}

SeriesDecomposition SeriesDecomposition::at_order(int m) const
{
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (history[i].order != m) continue;
        SeriesDecomposition out = *this;
        out.order = m;
        out.h = history[i].h;
        out.condition = history[i].condition;
        out.flagged = history[i].flagged;
        out.history.resize(i + 1);
        return out;
    }
    throw DomainError("SeriesDecomposition::at_order: order was not recorded");
}

std::vector<cplx> boundary_coefficients(const TargetForm& nu, const surface::SurfaceSpec& surface, double tolerance)
{
    std::vector<cplx> eps;
    const cplx two_pi_i = 2.0 * pi * I;
    for (std::size_t k = 0; k < surface.cap_count(); ++k) {
        const double ext = surface.cap(k).extension_radius();
        const double r2 = 1.0 + 0.5 * std::min(0.1, ext - 1.0);
        const cplx e1 = surface::period(nu.form, surface::boundary_cycle(surface, k, 1.0)) / two_pi_i;
        const cplx e2 = surface::period(nu.form, surface::boundary_cycle(surface, k, r2)) / two_pi_i;
        if (std::abs(e1 - e2) > tolerance * std::max(1.0, std::abs(e1))) {
            std::ostringstream os;
            os << "boundary_coefficients: cap " << k + 1 << " periods disagree between radii 1 and " << r2 << " by "
               << std::abs(e1 - e2);
            throw NumericalError(os.str());
        }
        eps.push_back(e1);
    }
    return eps;
}

CycleCoefficients cycle_coefficients(const OneForm& nu_minus_beta, const surface::SurfaceSpec& surface)
{
    if (surface.genus() == 0) return {};
    const cplx A = surface::period(nu_minus_beta, surface::a_cycle(surface));
    const cplx B = surface::period(nu_minus_beta, surface::b_cycle(surface));
    const double scale = std::max({1.0, std::abs(A), std::abs(B)});
    for (std::size_t k = 0; k < surface.cap_count(); ++k) {
        const cplx p = surface::period(nu_minus_beta, surface::boundary_cycle(surface, k));
        if (std::abs(p) > 1e-8 * scale) {
            std::ostringstream os;
            os << "cycle_coefficients: boundary period " << std::abs(p) << " around cap " << k + 1
               << " does not vanish";
            throw DomainError(os.str());
        }
    }
    const cplx tau = surface.tau();
    const cplx det = tau - std::conj(tau);
    // |det| = 2 Im tau > 0 by construction
    const cplx c = (B - std::conj(tau) * A) / det;
    return {{c}, {A - c}};
}

SeriesDecomposition project_faber(const TargetForm& nu, const surface::SurfaceSpec& surface, int order,
                                  const SeriesOptions& options)
{
    if (order < 1) throw DomainError("project_faber: truncation order must be positive");
    if (order > options.faber.max_order) {
        std::ostringstream os;
        os << "project_faber: order " << order << " exceeds the Faber order cap " << options.faber.max_order;
        throw DomainError(os.str());
    }
    if (nu.form.is_conjugate()) throw DomainError("project_faber: target must be holomorphic");
    const std::size_t n = surface.cap_count();
    if (n == 0) throw DomainError("project_faber: surface has no caps");

    SeriesDecomposition dec;
    dec.order = order;
    dec.faber = options.faber;
    dec.epsilon = boundary_coefficients(nu, surface, options.radius_tolerance);
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < n; ++k) sum += dec.epsilon[k];
    dec.epsilon_consistency = std::abs(dec.epsilon[n - 1] + sum);

    OneForm rest = nu.form;
    for (std::size_t k = 0; k + 1 < n; ++k) rest = rest - dec.epsilon[k] * surface::beta_form(surface, k);
    const auto cycles = cycle_coefficients(rest, surface);
    dec.c = cycles.c;
    dec.d = cycles.d;
    const auto gammas = surface::gamma_basis(surface);
    for (std::size_t j = 0; j < dec.c.size(); ++j) rest = rest - dec.c[j] * gammas[j];

    const SigmaPairing pairing(surface, options.boundary_nodes, options.edge_nodes);
    const FormTrace target = pairing.trace(rest);
    dec.target_norm = pairing.norm(target);

    const std::size_t size = static_cast<std::size_t>(order) * n;
    std::vector<FormTrace> basis(size);
    for (std::size_t k = 0; k < n; ++k) {
        auto traces = pairing.alpha_traces(k, order, options.faber);
        for (int m = 1; m <= order; ++m)
            basis[static_cast<std::size_t>(m - 1) * n + k] = std::move(traces[static_cast<std::size_t>(m - 1)]);
    }

    numerics::CMatrix gram(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    numerics::CVector rhs(static_cast<Eigen::Index>(size));
    for_each_index(
        size,
        [&](std::size_t i) {
            const auto r = static_cast<Eigen::Index>(i);
            for (std::size_t j = 0; j < size; ++j) gram(r, static_cast<Eigen::Index>(j)) = pairing.pair(basis[j], basis[i]);
            rhs(r) = pairing.pair(target, basis[i]);
        },
        default_policy());

    std::vector<int> orders = options.history_orders;
    orders.erase(std::remove_if(orders.begin(), orders.end(), [order](int m) { return m < 1 || m > order; }),
                 orders.end());
    orders.push_back(order);
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

    const double allowed = options.monotonic_tolerance * std::max(1.0, dec.target_norm);
    for (int m : orders) {
        const auto dim = static_cast<Eigen::Index>(static_cast<std::size_t>(m) * n);
        const auto solved = numerics::least_squares(gram.topLeftCorner(dim, dim), rhs.head(dim), options.least_squares);
        FormTrace residual = target;
        for (Eigen::Index i = 0; i < dim; ++i) residual.axpy(-solved.solution(i), basis[static_cast<std::size_t>(i)]);
        OrderSolution s;
        s.order = m;
        s.residual = pairing.norm(residual);
        s.condition = solved.condition;
        s.flagged = solved.flagged;
        s.h = numerics::CMatrix(m, static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < dim; ++i)
            s.h(i / static_cast<Eigen::Index>(n), i % static_cast<Eigen::Index>(n)) = solved.solution(i);
        if (!dec.history.empty() && s.residual > dec.history.back().residual + allowed) {
            std::ostringstream os;
            os << "project_faber: L2 residual increased from " << dec.history.back().residual << " (M = "
               << dec.history.back().order << ") to " << s.residual << " (M = " << m << ")";
            throw NumericalError(os.str());
        }
        dec.flagged = dec.flagged || solved.flagged;
        dec.regularized = dec.regularized || solved.regularized;
        dec.history.push_back(std::move(s));
    }
    dec.h = dec.history.back().h;
    dec.condition = dec.history.back().condition;
    return dec;
}

OneForm partial_sum(const SeriesDecomposition& decomposition, const surface::SurfaceSpec& surface)
{
    const std::size_t n = surface.cap_count();
    OneForm sum = faber::faber_combination(surface, decomposition.h, decomposition.faber);
    for (std::size_t k = 0; k + 1 < n; ++k) sum = sum + decomposition.epsilon[k] * surface::beta_form(surface, k);
    const auto gammas = surface::gamma_basis(surface);
    for (std::size_t j = 0; j < decomposition.c.size(); ++j) sum = sum + decomposition.c[j] * gammas[j];
    return sum;
}

double uniform_error(const TargetForm& nu, const SeriesDecomposition& decomposition,
                     const surface::SurfaceSpec& surface, std::span<const cplx> points, double min_distance)
{
    for (const cplx& z : points) {
        if (surface.in_closed_cap(z) || surface.distance_to_caps(z) < min_distance) {
            std::ostringstream os;
            os << "uniform_error: point " << z << " is closer than " << min_distance << " to a cap";
            throw DomainError(os.str());
        }
    }
    const OneForm sum = partial_sum(decomposition, surface);
    std::vector<double> err(points.size());
    for_each_index(
        points.size(), [&](std::size_t i) { err[i] = std::abs(nu.form(points[i]) - sum(points[i])); },
        default_policy());
    double worst = 0.0;
    for (double e : err) worst = std::max(worst, e);
    return worst;
}

double coefficient_deviation(const SeriesDecomposition& x, const SeriesDecomposition& y)
{
    if (x.epsilon.size() != y.epsilon.size() || x.c.size() != y.c.size() || x.h.rows() != y.h.rows() ||
        x.h.cols() != y.h.cols())
        throw DomainError("coefficient_deviation: decompositions have different shapes");
    double worst = 0.0;
    for (std::size_t k = 0; k < x.epsilon.size(); ++k) worst = std::max(worst, std::abs(x.epsilon[k] - y.epsilon[k]));
    for (std::size_t j = 0; j < x.c.size(); ++j) worst = std::max(worst, std::abs(x.c[j] - y.c[j]));
    if (x.h.size() > 0) worst = std::max(worst, (x.h - y.h).cwiseAbs().maxCoeff());
    return worst;
}

double invariance_check(const surface::SurfaceSpec& surface, const conformal::Moebius& g, const TargetForm& nu,
                        int order, const SeriesOptions& options)
{
    const surface::SurfaceSpec moved = surface.transported(g);
    const conformal::Moebius inv{g.d, -g.b, -g.c, g.a};
    TargetForm hat;
    hat.form = nu.form.pullback(Chart{[inv](cplx w) { return inv(w); }, [inv](cplx w) { return inv.derivative(w); }});
    hat.name = nu.name + " (transported)";
    const auto a = project_faber(nu, surface, order, options);
    const auto b = project_faber(hat, moved, order, options);
    return coefficient_deviation(a, b);
}

} // namespace tietz::series
