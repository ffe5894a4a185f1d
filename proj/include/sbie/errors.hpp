#pragma once

#include <stdexcept>
#include <string>

namespace sbie {

// parameter or argument outside the documented contract
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// evaluation at a pole or at coincident points
struct singularity_error : std::runtime_error {
    explicit singularity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// linear system unusable; carries a condition estimate when available
struct solver_error : std::runtime_error {
    double cond_estimate;
    explicit solver_error(const std::string& msg, double cond = 0.0)
        : std::runtime_error(msg), cond_estimate(cond) {}
};

// lambda = -2 with the first-kind kernel: -2 is an eigenvalue, the system is singular by design
struct eigenvalue_case_error : solver_error {
    explicit eigenvalue_case_error(const std::string& msg) : solver_error(msg) {}
};

} // namespace sbie
