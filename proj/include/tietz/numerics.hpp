#pragma once

// Quadrature and linear-algebra substrate: trapezoid rules on circles,
// polar Gauss-Legendre grids on the unit disk, Taylor/Laurent coefficient
// extraction and the regularized Hermitian solve used for Gram systems.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tietz/common.hpp"
#include "tietz/one_form.hpp"
#include "tietz/parallel.hpp"

namespace tietz::numerics {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Equispaced trapezoid nodes center + radius * e^{2 pi i j / nodes}.
class CircleContour {
public:
    static constexpr int min_nodes = 16;

    CircleContour(cplx center, double radius, int nodes);

    cplx center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }
    int nodes() const noexcept { return nodes_; }

    cplx node(int j) const { return center_ + radius_ * unit_root(j, nodes_); }
    std::vector<cplx> points() const;

private:
    cplx center_;
    double radius_;
    int nodes_;
};

struct DiskNode {
    cplx point;
    double weight;
};

/// Area quadrature on the unit disk: Gauss-Legendre in r (with the r dr
/// Jacobian folded into the weights) times the trapezoid rule in angle.
class DiskGrid {
public:
    DiskGrid(int radial_levels, int angular_nodes);

    int radial_levels() const noexcept { return radial_; }
    int angular_nodes() const noexcept { return angular_; }
    const std::vector<DiskNode>& nodes() const noexcept { return nodes_; }

    /// Grid with both resolutions doubled.
    DiskGrid refined() const { return DiskGrid(2 * radial_, 2 * angular_); }

private:
    int radial_;
    int angular_;
    std::vector<DiskNode> nodes_;
};

/// Truncated Taylor series sum_j coefficients[j] (w - center)^j.
struct PowerSeries {
    cplx center{0.0, 0.0};
    std::vector<cplx> coefficients;
    double radius = 1.0;

    cplx operator()(cplx w) const;
    cplx derivative(cplx w) const;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Trapezoid approximation of the counterclockwise integral of integrand dw.
cplx circle_integral(const ComplexFn& integrand, const CircleContour& contour,
                     ExecPolicy policy = default_policy());

/// Given samples s_l = g(center + R e^{2 pi i l/N}), returns the trapezoid
/// approximations of the Laurent coefficients c_j of g about center for
/// j = lo..hi. Uses an FFT; N = samples.size().
std::vector<cplx> circle_coefficients(std::span<const cplx> samples, double radius, int lo, int hi);

/// Taylor coefficients c_0..c_order of fn about center, read off a circle.
/// nodes == 0 picks max(64, 2 (order + 1)) rounded up to a power of two.
PowerSeries extract_taylor(const ComplexFn& fn, cplx center, double radius, int order,
                           int nodes = 0, ExecPolicy policy = default_policy());

/// Hodge pairing (form1, form2) = integral of form1 ^ *conj(form2) over
/// chart(disk), computed by pull-back to the unit disk. For holomorphic
/// forms this is i times the integral of form1 ^ conj(form2).
cplx area_pairing(const OneForm& form1, const OneForm& form2, const Chart& chart,
                  const DiskGrid& grid, ExecPolicy policy = default_policy());

/// area_pairing on grid and grid.refined(); throws QuadratureError when the
/// two differ by more than tolerance * max(1, |value|). Returns the refined value.
cplx area_pairing_checked(const OneForm& form1, const OneForm& form2, const Chart& chart,
                          const DiskGrid& grid, double tolerance = 1e-8,
                          ExecPolicy policy = default_policy());

struct LeastSquaresOptions {
    double condition_limit = 1e12;
    double tikhonov = 1e-12; // relative to the trace of the scaled Gram matrix
};

struct LeastSquaresResult {
    CVector solution;
    double condition = 1.0; // of the Jacobi-scaled Gram matrix
    bool flagged = false;   // condition above the limit
    bool regularized = false;
};

/// Minimizes the quadratic residual whose normal equations are gram x = rhs.
/// gram must be Hermitian positive semidefinite. The system is Jacobi-scaled
/// and solved by eigendecomposition; above the condition limit a Tikhonov
/// shift is applied and the result is flagged.
LeastSquaresResult least_squares(const CMatrix& gram, const CVector& rhs,
                                 const LeastSquaresOptions& options = {});

} // namespace tietz::numerics
