#pragma once

#include <utility>
#include <vector>

#include "tietz/common.hpp"

namespace tietz::elliptic {

/// Jacobi theta_1 machinery for the lattice Z + tau Z, in the variable x
/// with theta(x) = theta_1(pi x | tau). All series are summed after reducing
/// x to the centred fundamental cell, where they converge like e^{-n pi Im tau}.
class ThetaLattice {
public:
    explicit ThetaLattice(cplx tau);

    cplx tau() const noexcept { return tau_; }

    /// x - (m + n tau) with lattice coordinates in [-1/2, 1/2).
    cplx reduce(cplx x, long* n_tau = nullptr) const;

    /// (s, t) with x = s + t tau.
    std::pair<double, double> lattice_coordinates(cplx x) const;

    /// log|theta(x)| - pi (Im x)^2 / Im tau; doubly periodic, harmonic up to
    /// the constant Laplacian -2 pi / Im tau, and ~ log|x| + const at 0.
    double periodic_log_theta(cplx x) const;

    /// theta'(x) / theta(x): simple poles of residue 1 at lattice points,
    /// L(x + 1) = L(x), L(x + tau) = L(x) - 2 pi i.
    cplx log_derivative(cplx x) const;

    /// d/dx of log_derivative: doubly periodic, -1/x^2 + O(1) at 0.
    cplx log_derivative_prime(cplx x) const;

private:
    cplx tau_;
    cplx nome_;
    double log_abs_constant_ = 0.0;
    std::vector<cplx> q2n_;      // q^{2n}
    std::vector<cplx> sin_coef_; // 4 pi q^{2n} / (1 - q^{2n})
    std::vector<cplx> cos_coef_; // 8 pi^2 n q^{2n} / (1 - q^{2n})
};

} // namespace tietz::elliptic
