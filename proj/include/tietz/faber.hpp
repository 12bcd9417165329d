#pragma once

// Faber-Tietz forms alpha^m_k = T(e^m_k), their Laurent data in the cap
// coordinate, and the classical Faber polynomials of a sphere cap.

#include <string>
#include <vector>

#include "tietz/conformal.hpp"
#include "tietz/schiffer.hpp"
#include "tietz/surface.hpp"

namespace tietz::faber {

enum class BasisTag { beta, gamma, alpha };
std::string to_string(BasisTag tag);

struct FaberOptions {
    int contour_nodes = 512;
    /// alpha is evaluated on |eta| = radius_factor * min(1, |f_k^{-1}(z)|).
    double radius_factor = 0.9;
    int max_order = 24;
};

struct FaberBasisElement {
    BasisTag tag = BasisTag::alpha;
    std::size_t k = 0; // 0-based cap (beta, alpha) or gamma index
    int m = 0;         // alpha only
    OneForm form;
    std::string method; // e.g. "contour"
    int contour_nodes = 0;
    double radius_factor = 0.0;
};

/// alpha^m_k as a contour evaluator valid on the whole chart minus z_k.
FaberBasisElement faber_tietz_form(const surface::SurfaceSpec& surface, std::size_t k, int m,
                                   const FaberOptions& options = {});
FaberBasisElement beta_element(const surface::SurfaceSpec& surface, std::size_t k);
FaberBasisElement gamma_element(const surface::SurfaceSpec& surface, std::size_t j);

/// alpha^1_k .. alpha^M_k at a chart point (one contour, one FFT).
std::vector<cplx> alpha_values(const surface::SurfaceSpec& surface, std::size_t k, int max_order, cplx z,
                               const FaberOptions& options = {});
/// The same at z = f_k(zeta) when the preimage zeta is known.
std::vector<cplx> alpha_values_at_preimage(const surface::SurfaceSpec& surface, std::size_t k, int max_order,
                                           cplx zeta, const FaberOptions& options = {});

/// sum over k, m of coefficients(m - 1, k) alpha^m_k as one evaluator
/// (one contour per cap and point).
OneForm faber_combination(const surface::SurfaceSpec& surface, const numerics::CMatrix& coefficients,
                          const FaberOptions& options = {});

/// sum_{j=1}^{M} coefficients[j-1] (z - center)^{-j}.
struct LaurentTail {
    cplx center{0.0, 0.0};
    std::vector<cplx> coefficients;

    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
};

struct PrincipalPart {
    /// Coefficients of zeta^{-1} .. zeta^{-depth} of f_k^* alpha.
    LaurentTail tail;
    /// Coefficients of zeta^0 .. zeta^{order} (the regular head h).
    std::vector<cplx> head;
    double radius = 0.5;

    /// Coefficient of zeta^j (j may be negative); zero outside the stored range.
    cplx coefficient(int j) const;
};

/// Laurent coefficients of f_k^* form on |zeta| = radius for indices lo..hi.
std::vector<cplx> pullback_laurent(const OneForm& form, const conformal::ConformalMap& map, double radius, int lo,
                                   int hi, int nodes = 256, ExecPolicy policy = default_policy());

/// Laurent expansion of f_k^* alpha^m_k about zeta = 0. The tail runs to
/// depth max(order, m + 4).
PrincipalPart principal_part(const surface::SurfaceSpec& surface, const FaberBasisElement& element, int order = 8,
                             double radius = 0.5, int nodes = 256);

/// Phi^m as a polynomial in 1/(z - z_k) for the single cap of a sphere,
/// from Phi^m(z) = (1/2 pi i) contour integral over |eta| = r0 of
/// f'(eta) / (f(eta) - z) eta^{-m} d eta. Throws NumericalError when
/// coefficients outside 1..m exceed 1e-8 (relative to the samples).
LaurentTail faber_polynomial(const conformal::ConformalMap& map, int m, double r0 = 0.9, int nodes = 512);

} // namespace tietz::faber
