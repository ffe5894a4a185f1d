#pragma once

// Nystrom discretization of the second-kind density equations
// mu - lambda * Int K mu = f, with the diagonal closed through the exact
// unit-density flux values (singularity subtraction).

#include "sbie/geometry.hpp"
#include "sbie/kernels.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace sbie {

struct NystromSystem {
    Eigen::MatrixXd A;
    double lambda = 0.0;
    KernelKind kind = KernelKind::Q1;
    const QuadratureGrid* grid = nullptr;

    // factorization formed on first solve and reused afterwards
    std::shared_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
};

NystromSystem assemble(KernelKind kind, const QuadratureGrid& grid,
                       const SingularityParams& sp, double lambda);

// Dense direct solve. Throws eigenvalue_case_error for the first-kind kernel
// at lambda = -2 (known eigenvalue) and solver_error when the condition
// estimate indicates a numerically singular system.
std::vector<double> solve_density(NystromSystem& system, const std::vector<double>& rhs);

// 1-norm condition estimate (exact ||A||_1, Hager-style estimate of ||A^-1||_1)
double condition_estimate(NystromSystem& system);

} // namespace sbie
