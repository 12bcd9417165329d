#pragma once

// Faber-Tietz series of a holomorphic form nu on Sigma:
//
//   nu = sum_{k<n} eps_k beta_k + sum_j c_j gamma_j + sum_{k,m} h^k_m alpha^m_k
//
// eps from boundary periods, c from the a/b periods of nu - beta, h by
// least squares in L^2(Sigma).

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tietz/conformal.hpp"
#include "tietz/faber.hpp"
#include "tietz/numerics.hpp"
#include "tietz/pairing.hpp"
#include "tietz/surface.hpp"

namespace tietz::series {

struct TargetForm {
    OneForm form;
    std::string name;
    std::string description;
};

/// dz / (z - a)^2.
TargetForm double_pole_target(cplx a);

struct SeriesOptions {
    int boundary_nodes = 512;
    int edge_nodes = 512;
    /// The order cap is raised for projections: the alpha evaluations here
    /// use contour radius 0.9, where rounding grows only like 0.9^{-m}.
    faber::FaberOptions faber{512, 0.9, 64};
    numerics::LeastSquaresOptions least_squares;
    /// Orders at which the residual is recorded (the final order is always added).
    std::vector<int> history_orders;
    /// Allowed growth of the residual between recorded orders, relative to ||nu||.
    double monotonic_tolerance = 1e-10;
    /// Allowed disagreement of eps between the two representative curves.
    double radius_tolerance = 1e-9;
};

struct OrderSolution {
    int order = 0;
    double residual = 0.0;
    numerics::CMatrix h; // order x n
    double condition = 1.0;
    bool flagged = false;
};

struct SeriesDecomposition {
    std::vector<cplx> epsilon;        // length n; the last entry is measured, not fitted
    double epsilon_consistency = 0.0; // |eps_n + sum_{k<n} eps_k|
    std::vector<cplx> c;              // length g
    std::vector<cplx> d;              // anti-holomorphic period part (diagnostic)
    numerics::CMatrix h;              // M x n, h(m-1, k)
    int order = 0;
    std::vector<OrderSolution> history;
    double condition = 1.0;
    bool flagged = false;
    bool regularized = false;
    double target_norm = 0.0; // ||nu - beta - c gamma||
    faber::FaberOptions faber;

    /// Copy with h, condition and residual taken from the recorded order.
    SeriesDecomposition at_order(int order) const;
    double residual() const { return history.empty() ? 0.0 : history.back().residual; }
};

/// eps_k = (integral of nu over the k-th cap boundary) / (2 pi i), k = 0..n-1,
/// compared between the boundary and a slightly larger curve.
std::vector<cplx> boundary_coefficients(const TargetForm& nu, const surface::SurfaceSpec& surface,
                                        double tolerance = 1e-9);

struct CycleCoefficients {
    std::vector<cplx> c;
    std::vector<cplx> d;
};

/// Solves A = c + d, B = tau c + conj(tau) d for the a/b periods of the
/// input. Empty on the sphere. The input must have vanishing boundary periods.
CycleCoefficients cycle_coefficients(const OneForm& nu_minus_beta, const surface::SurfaceSpec& surface);

SeriesDecomposition project_faber(const TargetForm& nu, const surface::SurfaceSpec& surface, int order,
                                  const SeriesOptions& options = {});

/// The truncated series as a chart evaluator.
OneForm partial_sum(const SeriesDecomposition& decomposition, const surface::SurfaceSpec& surface);

/// max over points of |nu - partial sum|; points closer than min_distance
/// to a cap are rejected.
double uniform_error(const TargetForm& nu, const SeriesDecomposition& decomposition,
                     const surface::SurfaceSpec& surface, std::span<const cplx> points, double min_distance = 0.05);

/// Largest entrywise difference of eps, c and h.
double coefficient_deviation(const SeriesDecomposition& x, const SeriesDecomposition& y);

/// Decomposes nu on surface and (g^{-1})^* nu on the transported surface
/// and returns the coefficient deviation.
double invariance_check(const surface::SurfaceSpec& surface, const conformal::Moebius& g, const TargetForm& nu,
                        int order, const SeriesOptions& options = {});

} // namespace tietz::series
