#include "sbie/bie.hpp"
#include "sbie/errors.hpp"
#include "sbie/parallel.hpp"
#include "sbie/potentials.hpp"

#include <cmath>

namespace sbie {

NystromSystem assemble(KernelKind kind, const QuadratureGrid& grid,
                       const SingularityParams& sp, double lambda)
{
    const int n = static_cast<int>(grid.nodes.size());
    NystromSystem sys;
    sys.A.resize(n, n);
    sys.lambda = lambda;
    sys.kind = kind;
    sys.grid = &grid;

    parallel_for(n, [&](int i) {
        const GridNode& ni = grid.nodes[i];
        double offsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            const GridNode& nj = grid.nodes[j];
            const double nrm[3] = {nj.nx, nj.ny, nj.nz};
            const double kij = nj.w * conormal(kind, nj.p, nrm, ni.p, sp);
            sys.A(i, j) = -lambda * kij;
            offsum += kij;
        }
        // diagonal closure: the row applied to a constant density must
        // reproduce the exact on-surface flux value
        double flux;
        if (kind == KernelKind::Q1) {
            flux = -0.5;
        } else {
            if (grid.edge_radius <= 0.0)
                throw domain_error("assemble: Q2 closure needs grid.edge_radius");
            flux = plane_flux_i(ni.p, grid.edge_radius, sp) - 0.5;
        }
        sys.A(i, i) = 1.0 - lambda * (flux - offsum);
    });
    return sys;
}

namespace {

void ensure_factorized(NystromSystem& sys)
{
    if (!sys.lu)
        sys.lu = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(sys.A);
}

// Hager's 1-norm estimator for ||A^-1||_1 using a handful of solves
double inverse_norm1_estimate(NystromSystem& sys)
{
    ensure_factorized(sys);
    const auto& lu = *sys.lu;
    const int n = static_cast<int>(sys.A.rows());
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
    double est = 0.0;
    for (int it = 0; it < 8; ++it) {
        Eigen::VectorXd y = lu.solve(x);
        const double y1 = y.lpNorm<1>();
        Eigen::VectorXd xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
        Eigen::VectorXd z = lu.transpose().solve(xi);
        int jmax = 0;
        const double zmax = z.cwiseAbs().maxCoeff(&jmax);
        est = std::max(est, y1);
        if (zmax <= z.dot(x))
            break;
        x.setZero();
        x(jmax) = 1.0;
    }
    return est;
}

} // namespace

double condition_estimate(NystromSystem& sys)
{
    double norm1 = 0.0;
    for (int j = 0; j < sys.A.cols(); ++j)
        norm1 = std::max(norm1, sys.A.col(j).lpNorm<1>());
    return norm1 * inverse_norm1_estimate(sys);
}

std::vector<double> solve_density(NystromSystem& sys, const std::vector<double>& rhs)
{
    const int n = static_cast<int>(sys.A.rows());
    if (static_cast<int>(rhs.size()) != n)
        throw domain_error("solve_density: rhs length does not match system");
    if (sys.kind == KernelKind::Q1 && sys.lambda == -2.0)
        throw eigenvalue_case_error(
            "solve_density: lambda = -2 is an eigenvalue of the first-kind kernel (constants)");

    ensure_factorized(sys);
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
    Eigen::VectorXd mu = sys.lu->solve(b);

    // one step of iterative refinement, then validate the residual
    Eigen::VectorXd res = b - sys.A * mu;
    mu += sys.lu->solve(res);
    res = b - sys.A * mu;
    const double rn = res.lpNorm<Eigen::Infinity>();
    const double bn = b.lpNorm<Eigen::Infinity>();
    if (bn > 0.0 && !(rn <= 1e-10 * bn)) {
        const double cond = condition_estimate(sys);
        throw solver_error("solve_density: residual exceeds tolerance, condition estimate "
                               + std::to_string(cond),
                           cond);
    }
    return std::vector<double>(mu.data(), mu.data() + n);
}

} // namespace sbie
