#pragma once

// Parametric surfaces in the half-space x > 0, the planar region in x = 0,
// and the Gauss-Legendre quadrature grids built over them.

#include <functional>
#include <vector>

namespace sbie {

struct HalfSpacePoint {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Gauss-Legendre nodes/weights on [-1,1], n >= 1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct ParamSurface {
    double s1 = 0.0, s2 = 0.0, t1 = 0.0, t2 = 0.0;
    std::function<HalfSpacePoint(double s, double t)> eval;
    // optional analytic partials; when absent they are approximated by
    // central differences with step 1e-6 * parameter range
    std::function<void(double s, double t, double dPds[3], double dPdt[3])> partials;
    bool meets_plane_orthogonally = false;
};

// hemisphere x = a cos t, y = a sin t cos s, z = a sin t sin s,
// (s,t) in [0,2pi) x [0,pi/2]; outward normal is radial
ParamSurface make_hemisphere(double a);

// analytic partials when the surface provides them, central differences
// (step 1e-6 * parameter range) otherwise
void surface_partials(const ParamSurface& surf, double s, double t,
                      double dPds[3], double dPdt[3]);

struct GridNode {
    double s = 0.0, t = 0.0;   // surface parameters, or (phi, r) for disk grids
    HalfSpacePoint p;
    double nx = 0.0, ny = 0.0, nz = 0.0; // unit outward normal (surface grids)
    double w = 0.0;                      // quadrature weight x area element
};

struct QuadratureGrid {
    std::vector<GridNode> nodes;
    int ns = 0, nt = 0;        // tensor dimensions (Ns x Nt, or Nphi x Nr)
    double ds_max = 0.0;       // largest gap between adjacent parameter values
    double dt_max = 0.0;
    double edge_radius = 0.0;  // radius of the edge circle in the plane x = 0 (hemisphere/disk)

    double weight_sum() const;
};

QuadratureGrid build_surface_grid(const ParamSurface& surf, int Ns, int Nt);
QuadratureGrid build_disk_grid(double a, int Nr, int Nphi);

} // namespace sbie
