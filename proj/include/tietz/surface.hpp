#pragma once

// Compact surfaces (Riemann sphere, flat tori) with caps: Green's function,
// Schiffer kernel, the meromorphic forms beta_k, the holomorphic basis
// gamma_j and homology cycles.
//
// The torus C / (Z + tau Z) is handled in its universal-cover chart; caps
// must sit inside the fundamental parallelogram {s + t tau : s, t in [0,1)}
// at least `margin` away from its edges (in lattice coordinates). The
// a-cycle is the edge [0, 1], the b-cycle the edge [0, tau].

#include <functional>
#include <optional>
#include <vector>

#include "tietz/conformal.hpp"
#include "tietz/elliptic.hpp"
#include "tietz/one_form.hpp"
#include "tietz/parallel.hpp"

namespace tietz::surface {

class SurfaceSpec {
public:
    /// Sphere; q == nullopt places the base point at infinity.
    static SurfaceSpec sphere(conformal::CapFamily caps, cplx w0, std::optional<cplx> q = std::nullopt);
    static SurfaceSpec torus(cplx tau, conformal::CapFamily caps, cplx q, cplx w0, double margin = 0.05);

    int genus() const noexcept { return genus_; }
    /// Lattice parameter; throws DomainError on the sphere.
    cplx tau() const;
    const elliptic::ThetaLattice& lattice() const;
    /// Base point q (nullopt means infinity on the sphere).
    std::optional<cplx> base_point() const noexcept { return q_; }
    cplx normalization_point() const noexcept { return w0_; }
    double margin() const noexcept { return margin_; }

    const conformal::CapFamily& caps() const noexcept { return caps_; }
    std::size_t cap_count() const noexcept { return caps_.size(); }
    const conformal::ConformalMap& cap(std::size_t k) const { return caps_[k]; }
    cplx cap_center(std::size_t k) const { return caps_[k].center_image(); }

    /// Representative of w in the fundamental parallelogram (torus); w itself on the sphere.
    cplx canonical(cplx w) const;
    /// Difference a - b reduced to the centred cell (torus); a - b on the sphere.
    cplx difference(cplx a, cplx b) const;

    std::optional<std::size_t> cap_containing(cplx w) const;
    bool in_closed_cap(cplx w) const { return cap_containing(w).has_value(); }
    /// Distance from w to the nearest cap boundary sample (periodic on the torus).
    double distance_to_caps(cplx w) const;

    /// Same surface with every cap composed with g. On the torus g must be
    /// a translation; q and w0 are transported as well.
    SurfaceSpec transported(const conformal::Moebius& g) const;

private:
    SurfaceSpec() = default;
    void validate() const;

    int genus_ = 0;
    cplx tau_{0.0, 1.0};
    std::optional<elliptic::ThetaLattice> lattice_;
    std::optional<cplx> q_;
    cplx w0_{0.0, 0.0};
    double margin_ = 0.0;
    conformal::CapFamily caps_;
};

/// Green's function G(w, w0; z, q) normalized to vanish at the surface's w0:
/// -log at z, +log at q, harmonic elsewhere (doubly periodic on the torus).
/// On the sphere q == nullopt means q = infinity.
double green(const SurfaceSpec& surface, cplx w, cplx z, std::optional<cplx> q);
double green(const SurfaceSpec& surface, cplx w, cplx z);

/// K(w, z) = (2/pi) d_z d_w G. Sphere: -1/(pi (w - z)^2); torus:
/// (1/pi) (theta'/theta)'(w - z) + 1/Im tau. Independent of q and w0.
cplx schiffer_kernel(const SurfaceSpec& surface, cplx w, cplx z);

/// (2/pi) d_z d_w G computed from green alone: circle-mean differentiation
/// d_w u(w) = (1/(2 pi rho)) integral u(w + rho e^{it}) e^{-it} dt, applied in
/// w and then in z (nodes x nodes evaluations). Points must be farther than
/// 2 rho from each other and from q.
cplx kernel_from_green(const SurfaceSpec& surface, cplx w, cplx z, std::optional<cplx> q, double rho = 0.05,
                       int nodes = 32);

/// Meromorphic form with residue +1 at z_k and -1 at z_{n-1} (0-based k < n-1).
OneForm beta_form(const SurfaceSpec& surface, std::size_t k);

/// a-normalized holomorphic basis: empty on the sphere, {dw} on the torus.
std::vector<OneForm> gamma_basis(const SurfaceSpec& surface);

enum class CycleKind { a, b, boundary };

/// Closed path t in [0, 1) -> point(t), sampled by the trapezoid rule.
struct Cycle {
    CycleKind kind = CycleKind::a;
    std::size_t index = 0;
    std::function<cplx(double)> point;
    std::function<cplx(double)> tangent; // d point / dt
    int nodes = 512;
};

Cycle a_cycle(const SurfaceSpec& surface, int nodes = 512);
Cycle b_cycle(const SurfaceSpec& surface, int nodes = 512);
/// The curve f_k(radius e^{2 pi i t}); radius 1 is the cap boundary itself.
Cycle boundary_cycle(const SurfaceSpec& surface, std::size_t k, double radius = 1.0, int nodes = 512);

/// Integral of form over cycle (trapezoid; spectral for periodic analytic data).
cplx period(const OneForm& form, const Cycle& cycle, ExecPolicy policy = default_policy());

/// Pi_{jk} = integral over b_j of gamma_k (1x1 on the torus, empty on the sphere).
std::vector<cplx> period_matrix(const SurfaceSpec& surface);

} // namespace tietz::surface
