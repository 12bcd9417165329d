#include "tietz/elliptic.hpp"

#include <cmath>

namespace tietz::elliptic {

ThetaLattice::ThetaLattice(cplx tau) : tau_(tau)
{
    if (!(tau.imag() > 0.0) || !is_finite(tau)) throw DomainError("ThetaLattice: Im tau must be positive");
    nome_ = std::exp(I * pi * tau);
    const int terms = static_cast<int>(std::ceil(50.0 / (pi * tau.imag()))) + 2;
    q2n_.resize(static_cast<std::size_t>(terms));
    sin_coef_.resize(q2n_.size());
    cos_coef_.resize(q2n_.size());
    const cplx q2 = nome_ * nome_;
    cplx power{1.0, 0.0};
    double log_product = 0.0;
    for (int n = 1; n <= terms; ++n) {
        power *= q2;
        const auto i = static_cast<std::size_t>(n - 1);
        q2n_[i] = power;
        sin_coef_[i] = 4.0 * pi * power / (1.0 - power);
        cos_coef_[i] = 8.0 * pi * pi * static_cast<double>(n) * power / (1.0 - power);
        log_product += std::log(std::abs(1.0 - power));
    }
    // |2 q^{1/4}| = 2 e^{-pi Im tau / 4}
    log_abs_constant_ = std::log(2.0) - 0.25 * pi * tau.imag() + log_product;
}

std::pair<double, double> ThetaLattice::lattice_coordinates(cplx x) const
{
    const double t = x.imag() / tau_.imag();
    return {x.real() - t * tau_.real(), t};
}

cplx ThetaLattice::reduce(cplx x, long* n_tau) const
{
    const double n = std::floor(x.imag() / tau_.imag() + 0.5);
    x -= n * tau_;
    const double m = std::floor(x.real() + 0.5);
    x -= m;
    if (n_tau) *n_tau = static_cast<long>(n);
    return x;
}

double ThetaLattice::periodic_log_theta(cplx x) const
{
    const cplx y = reduce(x);
    const cplx e = std::exp(2.0 * pi * I * y);
    const cplx einv = 1.0 / e;
    double acc = log_abs_constant_ + std::log(std::abs(std::sin(pi * y)));
    for (std::size_t n = 0; n < q2n_.size(); ++n)
        acc += std::log(std::abs(1.0 - q2n_[n] * e)) + std::log(std::abs(1.0 - q2n_[n] * einv));
    return acc - pi * y.imag() * y.imag() / tau_.imag();
}

cplx ThetaLattice::log_derivative(cplx x) const
{
    long n_tau = 0;
    const cplx y = reduce(x, &n_tau);
    const cplx e = std::exp(2.0 * pi * I * y);
    const cplx einv = 1.0 / e;
    cplx en{1.0, 0.0}, eninv{1.0, 0.0};
    cplx acc = pi * std::cos(pi * y) / std::sin(pi * y);
    for (std::size_t n = 0; n < q2n_.size(); ++n) {
        en *= e;
        eninv *= einv;
        acc += sin_coef_[n] * (en - eninv) / (2.0 * I);
    }
    return acc - 2.0 * pi * I * static_cast<double>(n_tau);
}

cplx ThetaLattice::log_derivative_prime(cplx x) const
{
    const cplx y = reduce(x);
    const cplx e = std::exp(2.0 * pi * I * y);
    const cplx einv = 1.0 / e;
    cplx en{1.0, 0.0}, eninv{1.0, 0.0};
    const cplx s = std::sin(pi * y);
    cplx acc = -pi * pi / (s * s);
    for (std::size_t n = 0; n < q2n_.size(); ++n) {
        en *= e;
        eninv *= einv;
        acc += cos_coef_[n] * 0.5 * (en + eninv);
    }
    return acc;
}

} // namespace tietz::elliptic
