#pragma once

#include <stdexcept>
#include <string>

namespace ktop {

// Bad arguments or configuration supplied by a caller or a config file.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical contract failed (non-convergence, lost Hermiticity, ...).
// best_value carries the closest result obtained before giving up, when
// one is meaningful.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, double best = 0.0)
        : std::runtime_error(what), best_value(best) {}

    double best_value;
};

}  // namespace ktop
