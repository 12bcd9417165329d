#include "tietz/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/FFT>

namespace tietz::numerics {

namespace {

std::string node_message(const char* where, std::size_t index, cplx point)
{
    std::ostringstream os;
    os.precision(17);
    os << where << ": non-finite integrand sample at node " << index << " (" << point.real()
       << ", " << point.imag() << ")";
    return os.str();
}

int pow2_at_least(int n)
{
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

} // namespace

CircleContour::CircleContour(cplx center, double radius, int nodes)
    : center_(center), radius_(radius), nodes_(nodes)
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("CircleContour: radius must be positive and finite");
    if (nodes < min_nodes) throw DomainError("CircleContour: at least 16 nodes are required");
}

std::vector<cplx> CircleContour::points() const
{
    std::vector<cplx> pts(static_cast<std::size_t>(nodes_));
    for (int j = 0; j < nodes_; ++j) pts[static_cast<std::size_t>(j)] = node(j);
    return pts;
}

GaussRule gauss_legendre(int n)
{
    if (n < 1) throw DomainError("gauss_legendre: need at least one node");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

DiskGrid::DiskGrid(int radial_levels, int angular_nodes)
    : radial_(radial_levels), angular_(angular_nodes)
{
    if (radial_levels < 1 || angular_nodes < CircleContour::min_nodes)
        throw DomainError("DiskGrid: need >= 1 radial level and >= 16 angular nodes");
    const GaussRule rule = gauss_legendre(radial_levels);
    nodes_.reserve(static_cast<std::size_t>(radial_levels) * static_cast<std::size_t>(angular_nodes));
    const double dtheta = 2.0 * pi / angular_nodes;
    for (int i = 0; i < radial_levels; ++i) {
        const double r = 0.5 * (rule.nodes[static_cast<std::size_t>(i)] + 1.0);
        const double wr = 0.5 * rule.weights[static_cast<std::size_t>(i)] * r;
        for (int j = 0; j < angular_nodes; ++j)
            nodes_.push_back({r * unit_root(j, angular_nodes), wr * dtheta});
    }
}

cplx PowerSeries::operator()(cplx w) const
{
    const cplx d = w - center;
    cplx acc{0.0, 0.0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * d + *it;
    return acc;
}

cplx PowerSeries::derivative(cplx w) const
{
    const cplx d = w - center;
    cplx acc{0.0, 0.0};
    for (std::size_t j = coefficients.size(); j-- > 1;)
        acc = acc * d + static_cast<double>(j) * coefficients[j];
    return acc;
}

cplx circle_integral(const ComplexFn& integrand, const CircleContour& contour, ExecPolicy policy)
{
    const auto points = contour.points();
    const auto values = evaluate_nodes(integrand, points, policy);
    const double h = 2.0 * pi / contour.nodes();
    std::vector<cplx> weights(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (!is_finite(values[j])) throw QuadratureError(node_message("circle_integral", j, points[j]));
        // dw = i (w - c) dtheta
        weights[j] = I * (points[j] - contour.center()) * h;
    }
    return weighted_sum(values, weights);
}

std::vector<cplx> circle_coefficients(std::span<const cplx> samples, double radius, int lo, int hi)
{
    const int n = static_cast<int>(samples.size());
    if (n == 0 || hi < lo) return {};
    std::vector<cplx> in(samples.begin(), samples.end());
    std::vector<cplx> spectrum;
    Eigen::FFT<double> fft;
    fft.fwd(spectrum, in);
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int j = lo; j <= hi; ++j) {
        int idx = j % n;
        if (idx < 0) idx += n;
        out.push_back(spectrum[static_cast<std::size_t>(idx)] / (static_cast<double>(n) * std::pow(radius, j)));
    }
    return out;
}

PowerSeries extract_taylor(const ComplexFn& fn, cplx center, double radius, int order, int nodes,
                           ExecPolicy policy)
{
    if (order < 0) throw DomainError("extract_taylor: order must be non-negative");
    if (nodes == 0) nodes = pow2_at_least(std::max(64, 2 * (order + 1)));
    const CircleContour contour(center, radius, nodes);
    const auto points = contour.points();
    const auto values = evaluate_nodes(fn, points, policy);
    for (std::size_t j = 0; j < values.size(); ++j)
        if (!is_finite(values[j])) throw QuadratureError(node_message("extract_taylor", j, points[j]));
    PowerSeries series;
    series.center = center;
    series.radius = radius;
    series.coefficients = circle_coefficients(values, radius, 0, order);
    return series;
}

cplx area_pairing(const OneForm& form1, const OneForm& form2, const Chart& chart, const DiskGrid& grid,
                  ExecPolicy policy)
{
    if (form1.is_conjugate() != form2.is_conjugate()) return {0.0, 0.0};
    const bool conj = form1.is_conjugate();
    const auto& nodes = grid.nodes();
    std::vector<cplx> values(nodes.size());
    for_each_index(
        nodes.size(),
        [&](std::size_t i) {
            const cplx zeta = nodes[i].point;
            const cplx w = chart.map(zeta);
            const cplx jac = chart.derivative(zeta);
            const cplx p1 = form1.coefficient(w) * jac;
            const cplx p2 = form2.coefficient(w) * jac;
            values[i] = conj ? 2.0 * std::conj(p1) * p2 : 2.0 * p1 * std::conj(p2);
        },
        policy);
    std::vector<double> weights(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!is_finite(values[i])) throw QuadratureError(node_message("area_pairing", i, nodes[i].point));
        weights[i] = nodes[i].weight;
    }
    return weighted_sum(values, weights);
}

cplx area_pairing_checked(const OneForm& form1, const OneForm& form2, const Chart& chart,
                          const DiskGrid& grid, double tolerance, ExecPolicy policy)
{
    const cplx coarse = area_pairing(form1, form2, chart, grid, policy);
    const cplx fine = area_pairing(form1, form2, chart, grid.refined(), policy);
    const double gap = std::abs(fine - coarse);
    if (gap > tolerance * std::max(1.0, std::abs(fine))) {
        std::ostringstream os;
        os << "area_pairing: grid too coarse, refinement changed the value by " << gap;
        throw QuadratureError(os.str());
    }
    return fine;
}

LeastSquaresResult least_squares(const CMatrix& gram, const CVector& rhs, const LeastSquaresOptions& options)
{
    const auto n = gram.rows();
    if (gram.cols() != n || rhs.size() != n)
        throw DomainError("least_squares: Gram matrix and right-hand side dimensions differ");
    LeastSquaresResult result;
    if (n == 0) {
        result.solution = CVector(0);
        return result;
    }

    Eigen::VectorXd scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = gram(i, i).real();
        scale(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
    }
    CMatrix scaled = scale.asDiagonal() * gram * scale.asDiagonal();
    scaled = 0.5 * (scaled + scaled.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(scaled);
    if (eig.info() != Eigen::Success) throw NumericalError("least_squares: eigendecomposition failed");
    Eigen::VectorXd lambda = eig.eigenvalues();
    const double lmax = lambda.maxCoeff();
    const double lmin = lambda.minCoeff();
    result.condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();

    if (result.condition > options.condition_limit) {
        result.flagged = true;
        result.regularized = true;
        const double shift = options.tikhonov * scaled.trace().real();
        for (Eigen::Index i = 0; i < n; ++i) lambda(i) = std::max(lambda(i), 0.0) + shift;
    }

    const CVector b = scale.asDiagonal() * rhs;
    CVector y = eig.eigenvectors().adjoint() * b;
    for (Eigen::Index i = 0; i < n; ++i) y(i) /= lambda(i);
    result.solution = scale.asDiagonal() * (eig.eigenvectors() * y);
    return result;
}

} // namespace tietz::numerics
