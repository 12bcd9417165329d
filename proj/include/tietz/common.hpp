#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tietz {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(cplx)>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Invalid input: bad parameters, points outside an operation's domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature produced non-finite samples or two resolutions disagreed.
class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Newton inversion of a conformal map did not converge.
class InversionError : public NumericalError {
public:
    InversionError(const std::string& what, cplx last_iterate, double residual)
        : NumericalError(what), last_iterate_(last_iterate), residual_(residual) {}

    cplx last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    cplx last_iterate_;
    double residual_;
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Unit root e^{2 pi i j / n} computed from the reduced index, so that
/// equal residues give bitwise equal nodes.
inline cplx unit_root(long j, long n)
{
    long r = j % n;
    if (r < 0) r += n;
    return std::polar(1.0, 2.0 * pi * static_cast<double>(r) / static_cast<double>(n));
}

} // namespace tietz
