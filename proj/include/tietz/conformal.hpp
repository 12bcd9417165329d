#pragma once

// Cap maps f_k : D -> Omega_k and the built-in analytic families used in
// experiments. Every family extends analytically across the unit circle, so
// boundary curves f(e^{i theta}) can be sampled directly.
//
// Injectivity ranges (checked at construction):
//   affine                   f = c + s zeta,                       s != 0
//   joukowski-ellipse        f = c + s zeta / (1 + a zeta^2),      |a| < 1
//   polynomial-perturbation  f = c + s (zeta + sum_j c_j zeta^j),  sum_j j |c_j| < 1
//   moebius-composed         f = g o inner,                        pole of g off cl(inner(D))

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tietz/common.hpp"
#include "tietz/numerics.hpp"
#include "tietz/one_form.hpp"

namespace tietz::conformal {

enum class MapKind { affine, joukowski_ellipse, polynomial_perturbation, moebius_composed };

std::string_view to_string(MapKind kind);
/// Throws DomainError for unknown names.
MapKind parse_map_kind(std::string_view name);

/// w -> (a w + b) / (c w + d).
struct Moebius {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    cplx c{0.0, 0.0};
    cplx d{1.0, 0.0};

    static Moebius translation(cplx shift) { return {{1.0, 0.0}, shift, {0.0, 0.0}, {1.0, 0.0}}; }

    cplx operator()(cplx w) const { return (a * w + b) / (c * w + d); }
    cplx derivative(cplx w) const
    {
        const cplx den = c * w + d;
        return (a * d - b * c) / (den * den);
    }
    cplx determinant() const { return a * d - b * c; }
    /// Finite pole -d/c, or nullopt when c == 0.
    std::optional<cplx> pole() const;
};

class ConformalMap {
public:
    static ConformalMap affine(cplx center, cplx scale);
    static ConformalMap joukowski_ellipse(cplx center, cplx scale, cplx a);
    static ConformalMap polynomial_perturbation(cplx center, cplx scale, std::vector<cplx> higher);
    static ConformalMap moebius_composed(const Moebius& g, const ConformalMap& inner);

    MapKind kind() const noexcept;
    /// Flattened parameter list in construction order (inner map last).
    std::vector<cplx> parameters() const;
    std::string describe() const;

    /// z_k = f(0).
    cplx center_image() const;

    /// Requires |zeta| < 1.
    cplx evaluate(cplx zeta) const;
    cplx derivative(cplx zeta) const;

    /// Analytic continuation; valid for |zeta| < extension_radius().
    cplx evaluate_extended(cplx zeta) const;
    cplx derivative_extended(cplx zeta) const;
    double extension_radius() const noexcept;

    /// Newton inversion seeded from the nearest entry of a 64x64 polar table
    /// of forward values. Converges to |f(zeta) - w| < 1e-12 max(1, |scale|)
    /// in at most 50 steps or throws InversionError.
    cplx invert(cplx w) const;
    cplx invert(cplx w, cplx seed) const;

    /// Argument-principle count of preimages of w in the disk (trapezoid on
    /// the unit circle): ~1 inside, ~0 outside, unreliable very near the boundary.
    double winding_number(cplx w) const;

    /// |f^{-1}(w)| when w lies in the closed image, +infinity otherwise.
    double preimage_modulus(cplx w) const;
    bool contains_closed(cplx w) const { return preimage_modulus(w) <= 1.0; }

    /// max |f(e^{i theta}) - f(0)| over boundary samples.
    double bounding_radius() const noexcept;
    /// Characteristic length |f'(0)|.
    double scale() const noexcept;

    std::vector<cplx> boundary_samples(int count) const;
    const numerics::PowerSeries& taylor() const;
    Chart chart() const;

private:
    struct Data;
    explicit ConformalMap(std::shared_ptr<Data> data);
    void finalize();

    std::shared_ptr<const Data> data_;
};

/// Ordered caps with pairwise disjoint closures.
class CapFamily {
public:
    CapFamily() = default;
    /// Throws DomainError when two closed caps come closer than separation
    /// (boundary samples) or one contains the other.
    explicit CapFamily(std::vector<ConformalMap> maps, double separation = 0.0);

    std::size_t size() const noexcept { return maps_.size(); }
    const ConformalMap& operator[](std::size_t k) const { return maps_.at(k); }
    auto begin() const { return maps_.begin(); }
    auto end() const { return maps_.end(); }
    double separation() const noexcept { return separation_; }

    /// Index of the closed cap containing w.
    std::optional<std::size_t> cap_containing(cplx w) const;

private:
    std::vector<ConformalMap> maps_;
    double separation_ = 0.0;
};

} // namespace tietz::conformal
