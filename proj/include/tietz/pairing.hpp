#pragma once

// L^2 pairing of holomorphic one-forms on Sigma from boundary data.
//
// For forms with vanishing boundary periods, Stokes' theorem on the cut
// surface gives
//
//   (w1, w2)_Sigma = i (A1 conj(B2) - B1 conj(A2))
//                    - 2 pi sum_k sum_{j != 0} U1_{k,j} conj(U2_{k,j}) / j
//
// where A, B are the periods over the edges [0, 1], [0, tau] of the
// fundamental parallelogram (torus only) and U_{k,j} are the Fourier
// coefficients of w(f_k(e^{i theta})) in d theta.

#include <vector>

#include "tietz/faber.hpp"
#include "tietz/surface.hpp"

namespace tietz::series {

/// Boundary data of a holomorphic form on Sigma, linear in the form.
struct FormTrace {
    /// Per cap: coefficients U_j, j = -N/2+1 .. N/2-1 (index j + N/2 - 1).
    std::vector<std::vector<cplx>> spectra;
    cplx a_period{0.0, 0.0};
    cplx b_period{0.0, 0.0};

    /// Integral over the k-th cap boundary (2 pi U_0).
    cplx boundary_period(std::size_t k) const;
    /// this += s * other
    FormTrace& axpy(cplx s, const FormTrace& other);
};

class SigmaPairing {
public:
    explicit SigmaPairing(const surface::SurfaceSpec& surface, int boundary_nodes = 512, int edge_nodes = 512);

    int boundary_nodes() const noexcept { return boundary_nodes_; }
    int edge_nodes() const noexcept { return edge_nodes_; }

    /// Trace of a holomorphic form given by its chart evaluator.
    FormTrace trace(const OneForm& form, ExecPolicy policy = default_policy()) const;

    /// Traces of alpha^1_k .. alpha^M_k (entry m - 1).
    std::vector<FormTrace> alpha_traces(std::size_t k, int max_order, const faber::FaberOptions& options = {},
                                        ExecPolicy policy = default_policy()) const;

    /// (x, y)_Sigma; both must have vanishing boundary periods.
    cplx pair(const FormTrace& x, const FormTrace& y) const;
    double norm(const FormTrace& x) const;

private:
    FormTrace assemble(const std::vector<std::vector<cplx>>& boundary_values,
                       const std::vector<cplx>& a_values, const std::vector<cplx>& b_values) const;

    surface::SurfaceSpec surface_;
    int boundary_nodes_;
    int edge_nodes_;
    std::vector<std::vector<cplx>> boundary_points_; // per cap
    std::vector<std::vector<cplx>> boundary_tangents_; // d w / d theta
    std::vector<cplx> a_points_;
    std::vector<cplx> b_points_;
};

} // namespace tietz::series
