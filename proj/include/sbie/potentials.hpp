#pragma once

// Layer potentials over a surface grid, the Gauss-flux integrals, and the
// planar reduction potentials over the disk in x = 0.

#include "sbie/geometry.hpp"
#include "sbie/kernels.hpp"

#include <vector>

namespace sbie {

// Double layer with density mu (one value per grid node): sum w K(node -> target) mu.
// Target must stay off the surface; accuracy degrades within one mesh width.
double eval_double_layer(KernelKind kind, const std::vector<double>& mu,
                         const QuadratureGrid& grid, const HalfSpacePoint& target,
                         const SingularityParams& sp);

// Same integral with the constant part split off and replaced by the exact
// unit-density flux value, which stays accurate arbitrarily close to (and
// inside) the surface. `inside` selects the branch of the flux trichotomy,
// mu_star is the density value subtracted (normally the value at the surface
// point nearest the target). Requires grid.edge_radius for kind Q2.
double eval_double_layer_subtracted(KernelKind kind, const std::vector<double>& mu,
                                    const QuadratureGrid& grid, const HalfSpacePoint& target,
                                    bool inside, double mu_star, const SingularityParams& sp);

double eval_single_layer(KernelKind kind, const std::vector<double>& rho,
                         const QuadratureGrid& grid, const HalfSpacePoint& target,
                         const SingularityParams& sp);

// Conormal derivative of the single layer at the target (weight target.x^{2a}).
double eval_single_layer_conormal(KernelKind kind, const std::vector<double>& rho,
                                  const QuadratureGrid& grid, const HalfSpacePoint& target,
                                  const double normal_at_target[3], const SingularityParams& sp);

// Unit-density double layer (the Gauss-flux integral of the trichotomy).
double gauss_flux(KernelKind kind, const QuadratureGrid& grid, const HalfSpacePoint& target,
                  const SingularityParams& sp);

// Integral over the disk of radius a centered at the origin of
// [x^2 + |(y,z) - node|^2]^{expo}, where b is the distance of (y,z) from the
// disk center. Full-circle part analytic, partial arcs by panel quadrature.
double disk_radial_integral(double x, double b, double a, double expo);

// i(x,y,z): weighted flux of the second-kind unit double layer through the
// plane region, semi-analytic (exact radial reduction).
double plane_flux_i(const HalfSpacePoint& target, double disk_radius, const SingularityParams& sp);

// same quantity by plain quadrature on a disk grid (cross-check path)
double plane_flux_i(const HalfSpacePoint& target, const QuadratureGrid& disk,
                    const SingularityParams& sp);

// v1-type plane potential: -(1/2pi) sum w nu1 [x^2 + dist^2]^{-1/2-a}.
// Values are given at disk-grid nodes. Singularity subtraction against the
// value at the node nearest the target's shadow keeps it accurate as x -> 0.
double plane_potential_holmgren(const std::vector<double>& nu1, const QuadratureGrid& disk,
                                const HalfSpacePoint& target, const SingularityParams& sp);

// v2-type plane potential with trace-recovering prefactor (1-2a)/2pi x^{1-2a}
// and kernel [x^2 + dist^2]^{a-3/2}. The grid should cover the extended disk
// (data continued beyond the base region by the caller).
double plane_potential_dirichlet(const std::vector<double>& tau1, const QuadratureGrid& disk,
                                 const HalfSpacePoint& target, const SingularityParams& sp);

} // namespace sbie
