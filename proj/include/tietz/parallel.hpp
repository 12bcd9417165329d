#pragma once

// Node-evaluation kernels. Every quadrature in the library separates the
// (embarrassingly parallel) evaluation of an integrand at its nodes from
// the reduction, which always runs serially in index order. The parallel
// and serial paths therefore produce bitwise identical results.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tietz/common.hpp"

namespace tietz {

enum class ExecPolicy { serial, parallel };

/// Process-wide default used when callers do not pass a policy.
ExecPolicy default_policy() noexcept;
void set_default_policy(ExecPolicy policy) noexcept;

/// Runs body(i) for i in [0, n). With ExecPolicy::parallel the iterations
/// are distributed by OpenMP; an exception thrown by any iteration is
/// rethrown after the loop (the one with the lowest index wins).
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    ExecPolicy policy);

/// Evaluates fn at each point.
std::vector<cplx> evaluate_nodes(const ComplexFn& fn, std::span<const cplx> points,
                                 ExecPolicy policy);

/// Serial, index-ordered sum of weight[i] * values[i].
cplx weighted_sum(std::span<const cplx> values, std::span<const double> weights);
cplx weighted_sum(std::span<const cplx> values, std::span<const cplx> weights);

} // namespace tietz
