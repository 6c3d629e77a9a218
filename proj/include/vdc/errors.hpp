#pragma once

#include <stdexcept>
#include <string>

namespace vdc {

// Domain errors thrown by the library. Everything derives from vdc::error so
// callers can catch the whole family at once.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct not_invertible : error {
    using error::error;
};

struct not_prime : error {
    using error::error;
};

struct infeasible : error {
    using error::error;
};

// Work-cap overruns. The CLI maps these to exit code 3.
struct budget_exceeded : error {
    using error::error;
};

struct chain_budget_exceeded : budget_exceeded {
    using budget_exceeded::budget_exceeded;
};

struct io_error : error {
    using error::error;
};

struct format_error : error {
    using error::error;
};

struct not_majorant : error {
    using error::error;
};

struct quadrature_not_converged : error {
    using error::error;
};

struct empty_support : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

} // namespace vdc
