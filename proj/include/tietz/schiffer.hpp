#pragma once

// The Schiffer operator T from anti-holomorphic forms on the caps to
// holomorphic forms on the complement Sigma:
//
//   T(conj(h) dw-bar)(z) = -(integral over the caps of) K(w, z) conj(h(w)) dA_w  dz
//
// with K = schiffer_kernel. The area form is the reference implementation;
// the contour reduction of T applied to the monomial data is the fast path.

#include <vector>

#include "tietz/numerics.hpp"
#include "tietz/surface.hpp"

namespace tietz::schiffer {

/// Sum over caps of conj(b_k(eta)) d eta-bar, each b_k holomorphic on the
/// closed unit disk (the cap's own coordinate).
class AntiHolomorphicDatum {
public:
    struct Term {
        std::size_t cap;
        ComplexFn b;
    };

    AntiHolomorphicDatum() = default;

    /// e^m_k = d(conj(eta)^m), i.e. b = m eta^{m-1} on cap k.
    static AntiHolomorphicDatum monomial(std::size_t cap, int m);

    AntiHolomorphicDatum& add(std::size_t cap, ComplexFn b);
    const std::vector<Term>& terms() const noexcept { return terms_; }

    /// The datum times s (b -> conj(s) b).
    AntiHolomorphicDatum scaled(cplx s) const;
    AntiHolomorphicDatum& operator+=(const AntiHolomorphicDatum& other);

    /// The form value conj(b_k(eta)) at a disk point, summed over terms on cap k.
    cplx value(std::size_t cap, cplx eta) const;

private:
    std::vector<Term> terms_;
};

struct AreaOptions {
    int radial = 24;
    int angular = 64;
    double tolerance = 1e-8; // between the grid and its refinement
};

/// dz-coefficient of T(datum) at z in Sigma by area quadrature on every cap,
/// checked against the doubly refined grid (QuadratureError on disagreement).
cplx apply_schiffer(const surface::SurfaceSpec& surface, const AntiHolomorphicDatum& datum, cplx z,
                    const AreaOptions& options = {}, ExecPolicy policy = default_policy());

/// Single-grid version (no refinement check).
cplx apply_schiffer(const surface::SurfaceSpec& surface, const AntiHolomorphicDatum& datum, cplx z,
                    const numerics::DiskGrid& grid, ExecPolicy policy = default_policy());

/// -(1/2i) contour integral over |eta| = r0 of K(f_k(eta), z) f_k'(eta) eta^{-m} d eta:
/// the extension of T(e^m_k) to every z outside f_k(|eta| <= r0).
cplx schiffer_contour(const surface::SurfaceSpec& surface, std::size_t k, int m, cplx z, double r0,
                      int nodes = 512, ExecPolicy policy = default_policy());

/// The same contour value for m = 1..max_order at once (one FFT of the
/// contour samples). With verify_position == false the caller guarantees
/// that z lies outside f_k(|eta| <= r0), which saves an inversion.
std::vector<cplx> schiffer_contour_batch(const surface::SurfaceSpec& surface, std::size_t k, int max_order,
                                         cplx z, double r0, int nodes = 512,
                                         ExecPolicy policy = ExecPolicy::serial, bool verify_position = true);

} // namespace tietz::schiffer
