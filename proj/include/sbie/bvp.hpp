#pragma once

// Dirichlet and Holmgren solvers on a domain bounded by a surface Gamma in
// x > 0 and a disk X in the plane x = 0. The plane data is reduced away by a
// plane potential, the remaining surface problem is solved as a second-kind
// density equation, and the solution is evaluated as reduction potential plus
// double layer.

#include "sbie/bie.hpp"
#include "sbie/geometry.hpp"
#include "sbie/kernels.hpp"

#include <functional>
#include <vector>

namespace sbie {

enum class ProblemKind { Dirichlet, Holmgren };

struct BvpProblem {
    explicit BvpProblem(const SingularityParams& sp_) : sp(sp_) {}

    SingularityParams sp;
    ParamSurface surface;
    int Ns = 32, Nt = 32;         // surface grid
    double region_radius = 1.0;   // X: y^2 + z^2 <= region_radius^2
    int Nr = 24, Nphi = 48;       // disk grid
    ProblemKind kind = ProblemKind::Dirichlet;

    std::function<double(double s, double t)> phi;        // data on Gamma
    // tau1(y,z) for Dirichlet, nu1(y,z) for Holmgren
    std::function<double(double y, double z)> plane_data;
};

struct SolutionField {
    explicit SolutionField(const SingularityParams& sp_) : sp(sp_) {}

    SingularityParams sp;
    KernelKind kind = KernelKind::Q2;
    ParamSurface surface;
    QuadratureGrid surface_grid;
    QuadratureGrid disk_grid;          // extended disk for Dirichlet
    std::vector<double> plane_values;  // plane data at disk nodes
    std::vector<double> mu;            // solved density at surface nodes
    double mesh_width = 0.0;           // near-surface evaluation guard width
    double region_radius = 0.0;

    // problem data, kept for diagnostics
    std::function<double(double s, double t)> phi;
    std::function<double(double y, double z)> plane_data;
};

// Surface data phi on Gamma, weighted x-derivative nu1 on X. Reduces by the
// v1 plane potential and solves the first-kind density equation at lambda=2.
SolutionField solve_holmgren(const BvpProblem& problem);

// Surface data phi on Gamma, trace tau1 on X (compatible with phi along the
// rim). Reduces by the v2 plane potential (data extended to 1.5x the region
// radius by radial clamping) and solves the second-kind equation at lambda=2.
SolutionField solve_dirichlet(const BvpProblem& problem);

// The reduction potential v alone (v1 or v2 depending on the problem kind).
double reduction_potential(const SolutionField& sol, const HalfSpacePoint& p);

// u(p) = v(p) + double layer. Throws domain_error when p is outside the
// domain, has x <= 0, or lies within one mesh width of Gamma.
double evaluate_solution(const SolutionField& sol, const HalfSpacePoint& p);

// Relative discrepancy between the weighted Dirichlet energy, integrated over
// an n^3 interior lattice with finite-difference gradients, and the boundary
// expression (surface integral of phi times the conormal of u, minus the
// plane integral of tau1 nu1). Diagnostic; assumes the surface is star-shaped
// about the origin in its (s,t) parameterization.
double energy_diagnostic(const SolutionField& sol, int n_lattice);

} // namespace sbie
