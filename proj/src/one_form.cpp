#include "tietz/one_form.hpp"

namespace tietz {

OneForm::OneForm()
    : coefficient_(std::make_shared<const ComplexFn>([](cplx) { return cplx{0.0, 0.0}; }))
{
}

OneForm::OneForm(ComplexFn coefficient, bool conjugate, std::vector<Pole> poles)
    : coefficient_(std::make_shared<const ComplexFn>(std::move(coefficient))),
      conjugate_(conjugate),
      poles_(std::move(poles))
{
}

OneForm OneForm::conjugated() const
{
    OneForm out = *this;
    out.conjugate_ = !conjugate_;
    return out;
}

OneForm OneForm::pullback(const Chart& chart) const
{
    auto coeff = coefficient_;
    auto map = chart.map;
    auto deriv = chart.derivative;
    return OneForm([coeff, map, deriv](cplx zeta) { return (*coeff)(map(zeta)) * deriv(zeta); },
                   conjugate_);
}

OneForm& OneForm::operator+=(const OneForm& other)
{
    if (conjugate_ != other.conjugate_)
        throw DomainError("OneForm: cannot add a holomorphic and an anti-holomorphic form");
    auto a = coefficient_;
    auto b = other.coefficient_;
    coefficient_ = std::make_shared<const ComplexFn>([a, b](cplx w) { return (*a)(w) + (*b)(w); });
    poles_.insert(poles_.end(), other.poles_.begin(), other.poles_.end());
    return *this;
}

OneForm operator-(OneForm lhs, const OneForm& rhs)
{
    return lhs += cplx{-1.0, 0.0} * rhs;
}

OneForm operator*(cplx scale, const OneForm& form)
{
    // conj(a) dw-bar scaled by s is conj(conj(s) a) dw-bar
    const cplx s = form.conjugate_ ? std::conj(scale) : scale;
    auto a = form.coefficient_;
    OneForm out = form;
    out.coefficient_ = std::make_shared<const ComplexFn>([a, s](cplx w) { return s * (*a)(w); });
    return out;
}

} // namespace tietz
