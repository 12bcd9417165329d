#include "tietz/pairing.hpp"

#include <cmath>

namespace tietz::series {

cplx FormTrace::boundary_period(std::size_t k) const
{
    const auto& s = spectra.at(k);
    return 2.0 * pi * s[s.size() / 2];
}

FormTrace& FormTrace::axpy(cplx s, const FormTrace& other)
{
    if (spectra.empty()) {
        spectra.assign(other.spectra.size(), {});
        for (std::size_t k = 0; k < other.spectra.size(); ++k) spectra[k].assign(other.spectra[k].size(), 0.0);
    }
    for (std::size_t k = 0; k < spectra.size(); ++k)
        for (std::size_t j = 0; j < spectra[k].size(); ++j) spectra[k][j] += s * other.spectra[k][j];
    a_period += s * other.a_period;
    b_period += s * other.b_period;
    return *this;
}

SigmaPairing::SigmaPairing(const surface::SurfaceSpec& surface, int boundary_nodes, int edge_nodes)
    : surface_(surface), boundary_nodes_(boundary_nodes), edge_nodes_(edge_nodes)
{
    if (boundary_nodes < 32 || boundary_nodes % 2 != 0) throw DomainError("SigmaPairing: boundary nodes must be even and >= 32");
    if (edge_nodes < 32) throw DomainError("SigmaPairing: edge nodes must be >= 32");
    const auto nb = static_cast<std::size_t>(boundary_nodes);
    for (std::size_t k = 0; k < surface.cap_count(); ++k) {
        const auto& cap = surface.cap(k);
        std::vector<cplx> pts(nb), tan(nb);
        for (std::size_t l = 0; l < nb; ++l) {
            const cplx e = unit_root(static_cast<long>(l), boundary_nodes);
            pts[l] = cap.evaluate_extended(e);
            tan[l] = I * e * cap.derivative_extended(e);
        }
        boundary_points_.push_back(std::move(pts));
        boundary_tangents_.push_back(std::move(tan));
    }
    if (surface.genus() == 1) {
        const cplx tau = surface.tau();
        for (int l = 0; l < edge_nodes; ++l) {
            const double t = static_cast<double>(l) / edge_nodes;
            a_points_.push_back(cplx{t, 0.0});
            b_points_.push_back(t * tau);
        }
    }
}

FormTrace SigmaPairing::assemble(const std::vector<std::vector<cplx>>& boundary_values,
                                 const std::vector<cplx>& a_values, const std::vector<cplx>& b_values) const
{
    FormTrace t;
    const int half = boundary_nodes_ / 2;
    for (std::size_t k = 0; k < boundary_values.size(); ++k) {
        std::vector<cplx> u(boundary_values[k].size());
        for (std::size_t l = 0; l < u.size(); ++l) {
            u[l] = boundary_values[k][l] * boundary_tangents_[k][l];
            if (!is_finite(u[l])) throw QuadratureError("SigmaPairing: non-finite form value on a cap boundary");
        }
        t.spectra.push_back(numerics::circle_coefficients(u, 1.0, -half + 1, half - 1));
    }
    if (surface_.genus() == 1) {
        const cplx tau = surface_.tau();
        cplx a{0.0, 0.0}, b{0.0, 0.0};
        for (const cplx& v : a_values) a += v;
        for (const cplx& v : b_values) b += v;
        if (!is_finite(a) || !is_finite(b)) throw QuadratureError("SigmaPairing: non-finite form value on a cycle");
        t.a_period = a / static_cast<double>(edge_nodes_);
        t.b_period = b * tau / static_cast<double>(edge_nodes_);
    }
    return t;
}

FormTrace SigmaPairing::trace(const OneForm& form, ExecPolicy policy) const
{
    if (form.is_conjugate()) throw DomainError("SigmaPairing: only holomorphic forms have traces");
    std::vector<std::vector<cplx>> values;
    for (const auto& pts : boundary_points_) values.push_back(evaluate_nodes(form.coefficient_fn(), pts, policy));
    std::vector<cplx> a, b;
    if (surface_.genus() == 1) {
        a = evaluate_nodes(form.coefficient_fn(), a_points_, policy);
        b = evaluate_nodes(form.coefficient_fn(), b_points_, policy);
    }
    return assemble(values, a, b);
}

std::vector<FormTrace> SigmaPairing::alpha_traces(std::size_t k, int max_order, const faber::FaberOptions& options,
                                                  ExecPolicy policy) const
{
    // rows: all sample points (cap boundaries, then a edge, then b edge)
    struct Sample {
        cplx point;
        bool own; // on cap k's boundary: preimage known
        cplx zeta;
    };
    std::vector<Sample> samples;
    for (std::size_t l = 0; l < boundary_points_.size(); ++l)
        for (std::size_t i = 0; i < boundary_points_[l].size(); ++i)
            samples.push_back({boundary_points_[l][i], l == k, unit_root(static_cast<long>(i), boundary_nodes_)});
    for (const cplx& p : a_points_) samples.push_back({p, false, 0.0});
    for (const cplx& p : b_points_) samples.push_back({p, false, 0.0});

    std::vector<std::vector<cplx>> rows(samples.size());
    for_each_index(
        samples.size(),
        [&](std::size_t i) {
            const Sample& s = samples[i];
            rows[i] = s.own ? faber::alpha_values_at_preimage(surface_, k, max_order, s.zeta, options)
                            : faber::alpha_values(surface_, k, max_order, s.point, options);
        },
        policy);

    std::vector<FormTrace> out;
    out.reserve(static_cast<std::size_t>(max_order));
    const std::size_t nb = static_cast<std::size_t>(boundary_nodes_);
    const std::size_t ne = a_points_.size();
    const std::size_t caps = boundary_points_.size();
    for (int m = 1; m <= max_order; ++m) {
        const auto col = static_cast<std::size_t>(m - 1);
        std::vector<std::vector<cplx>> values(caps, std::vector<cplx>(nb));
        for (std::size_t l = 0; l < caps; ++l)
            for (std::size_t i = 0; i < nb; ++i) values[l][i] = rows[l * nb + i][col];
        std::vector<cplx> a(ne), b(ne);
        for (std::size_t i = 0; i < ne; ++i) {
            a[i] = rows[caps * nb + i][col];
            b[i] = rows[caps * nb + ne + i][col];
        }
        out.push_back(assemble(values, a, b));
    }
    return out;
}

cplx SigmaPairing::pair(const FormTrace& x, const FormTrace& y) const
{
    cplx acc{0.0, 0.0};
    if (surface_.genus() == 1) acc = I * (x.a_period * std::conj(y.b_period) - x.b_period * std::conj(y.a_period));
    const int half = boundary_nodes_ / 2;
    cplx caps{0.0, 0.0};
    for (std::size_t k = 0; k < x.spectra.size(); ++k) {
        const auto& u = x.spectra[k];
        const auto& v = y.spectra[k];
        for (int j = -half + 1; j <= half - 1; ++j) {
            if (j == 0) continue;
            const auto idx = static_cast<std::size_t>(j + half - 1);
            caps += u[idx] * std::conj(v[idx]) / static_cast<double>(j);
        }
    }
    return acc - 2.0 * pi * caps;
}

double SigmaPairing::norm(const FormTrace& x) const
{
    return std::sqrt(std::max(0.0, pair(x, x).real()));
}

} // namespace tietz::series
