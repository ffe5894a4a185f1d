#pragma once

// Closed-form half-ball solutions: Green functions of both kinds built by
// sphere inversion, and the explicit Poisson-type solution formulas for the
// Holmgren and Dirichlet problems. Everything here is independent of the
// integral-equation path and serves as its oracle.

#include "sbie/geometry.hpp"
#include "sbie/kernels.hpp"

#include <functional>

namespace sbie {

struct HalfBall {
    double a = 1.0; // radius; domain is x > 0, |p| < a
};

// G01(p, p0) = q1(p, p0) - (a/R)^{1+2a} q1(p, p0*), p0* = (a^2/R^2) p0,
// R = |p0|. Vanishes on the spherical surface, symmetric in p, p0.
double green_g01(const HalfSpacePoint& p, const HalfSpacePoint& p0, const HalfBall& hb,
                 const SingularityParams& sp);

// Same inversion with q2 (and the same image multiplier); additionally
// vanishes on the plane x = 0.
double green_g02(const HalfSpacePoint& p, const HalfSpacePoint& p0, const HalfBall& hb,
                 const SingularityParams& sp);

// Explicit solution of the Holmgren problem on the half-ball: plane integral
// of nu1 against the G01 plane trace (prefactor -1/2pi) plus the surface
// Poisson kernel (1+2a)/2pi xi^{2a} F(3/2+a, a; 2a; sigma) (a^2-R^2)/(a r^{3+2a})
// integrated against phi(s,t). p0 must be strictly interior.
double poisson_holmgren(const HalfBall& hb, const std::function<double(double, double)>& nu1,
                        const std::function<double(double, double)>& phi,
                        const HalfSpacePoint& p0, const SingularityParams& sp,
                        int Ns = 64, int Nt = 64, int Nr = 48, int Nphi = 96);

// Explicit Dirichlet solution: plane integral of tau1 against the weighted
// flux trace of G02 plus the surface kernel
// (3-2a)/2pi x0^{1-2a} xi F(5/2-a, 1-a; 2-2a; sigma) (a^2-R^2)/(a r^{5-2a}).
double poisson_dirichlet(const HalfBall& hb, const std::function<double(double, double)>& tau1,
                         const std::function<double(double, double)>& phi,
                         const HalfSpacePoint& p0, const SingularityParams& sp,
                         int Ns = 64, int Nt = 64, int Nr = 48, int Nphi = 96);

} // namespace sbie
