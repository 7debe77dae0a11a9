#pragma once

// Index-space loop that runs either serially or under OpenMP. The body
// must write only to state owned by its index. An exception thrown by any
// iteration is rethrown after the loop; when several throw, the one with
// the lowest index wins so both paths report the same error.

#include "sqz/dsp.hpp"

#include <cstddef>
#include <exception>
#include <vector>

namespace sqz::detail {

template <typename Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
    std::vector<std::exception_ptr> errors(count);
    bool failed = false;
    const auto n = static_cast<std::ptrdiff_t>(count);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) reduction(|| : failed)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
                failed = true;
            }
        }
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
                failed = true;
                break;
            }
        }
    }
    if (failed) {
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
}

}  // namespace sqz::detail
