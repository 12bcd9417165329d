#include "tietz/parallel.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>

#include <omp.h>

namespace tietz {

namespace {
std::atomic<ExecPolicy> g_policy{ExecPolicy::parallel};
}

ExecPolicy default_policy() noexcept { return g_policy.load(); }

void set_default_policy(ExecPolicy policy) noexcept { g_policy.store(policy); }

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    ExecPolicy policy)
{
    if (policy == ExecPolicy::serial || n < 2 || omp_in_parallel()) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::mutex guard;
    std::exception_ptr first_error;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();

    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(guard);
            if (static_cast<std::size_t>(i) < first_index) {
                first_index = static_cast<std::size_t>(i);
                first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<cplx> evaluate_nodes(const ComplexFn& fn, std::span<const cplx> points,
                                 ExecPolicy policy)
{
    std::vector<cplx> values(points.size());
    for_each_index(points.size(), [&](std::size_t i) { values[i] = fn(points[i]); }, policy);
    return values;
}

cplx weighted_sum(std::span<const cplx> values, std::span<const double> weights)
{
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
    return acc;
}

cplx weighted_sum(std::span<const cplx> values, std::span<const cplx> weights)
{
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
    return acc;
}

} // namespace tietz
