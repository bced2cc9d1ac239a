#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

namespace hfinsler {

/// How sampled scans evaluate their per-sample kernel. `serial` is the
/// reference path; `parallel` distributes samples over OpenMP threads. Both
/// produce bitwise-identical results because every sample is computed
/// independently from its index and reductions run afterwards in index order.
enum class Execution { serial, parallel };

/// Evaluates fn(i) for i in [0, n) and returns the results in index order.
/// The first exception (lowest index) thrown by any sample is rethrown.
template <class Fn>
auto map_indices(std::size_t n, Execution exec, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);

    const auto count = static_cast<long long>(n);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < count; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (long long i = 0; i < count; ++i) {
            try {
                out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

} // namespace hfinsler
