#pragma once

#include <memory>
#include <vector>

#include "tietz/common.hpp"

namespace tietz {

/// A holomorphic coordinate change w = map(zeta) with its derivative.
struct Chart {
    ComplexFn map;
    ComplexFn derivative;
};

struct Pole {
    cplx location;
    int order = 1;
};

/// One-form in a single chart coordinate w.
///
/// Holomorphic forms are a(w) dw; with the conjugate flag set the same
/// evaluator describes conj(a(w)) dw-bar. Pole tags are descriptive (used
/// to reject quadrature paths that pass through them), not enforced.
class OneForm {
public:
    OneForm();
    explicit OneForm(ComplexFn coefficient, bool conjugate = false, std::vector<Pole> poles = {});

    /// The holomorphic coefficient a(w) (not conjugated, even for conjugate forms).
    cplx coefficient(cplx w) const { return (*coefficient_)(w); }
    cplx operator()(cplx w) const { return (*coefficient_)(w); }
    const ComplexFn& coefficient_fn() const noexcept { return *coefficient_; }

    bool is_conjugate() const noexcept { return conjugate_; }
    const std::vector<Pole>& poles() const noexcept { return poles_; }

    /// Complex conjugate form: a dw <-> conj(a) dw-bar.
    OneForm conjugated() const;

    /// Pull-back through a chart; obeys a(f) f' (holomorphic part) and its
    /// conjugate for conjugate forms.
    OneForm pullback(const Chart& chart) const;

    OneForm& operator+=(const OneForm& other);
    friend OneForm operator+(OneForm lhs, const OneForm& rhs) { return lhs += rhs; }
    friend OneForm operator-(OneForm lhs, const OneForm& rhs);
    friend OneForm operator*(cplx scale, const OneForm& form);

private:
    std::shared_ptr<const ComplexFn> coefficient_;
    bool conjugate_ = false;
    std::vector<Pole> poles_;
};

} // namespace tietz
