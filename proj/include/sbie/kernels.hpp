#pragma once

// Fundamental solutions q1, q2 of E(u) = u_xx + u_yy + u_zz + (2a/x) u_x = 0
// in the half-space x > 0, and their conormal-derivative kernels in the
// regularized form (hypergeometric argument 1 - r^2/r1^2 in [0,1)).

#include "sbie/geometry.hpp"

namespace sbie {

struct SingularityParams {
    double alpha;
    explicit SingularityParams(double a);
};

enum class KernelKind { Q1, Q2 };

struct PairGeometry {
    double r;        // |field - source|
    double r1;       // distance to the source reflected through x = 0
    double sigma;    // 1 - r1^2/r^2, always <= 0
    double co_sigma; // 1 - r^2/r1^2, in [0,1)
};

PairGeometry pair_geometry(const HalfSpacePoint& field, const HalfSpacePoint& source);

double q1(const HalfSpacePoint& field, const HalfSpacePoint& source, const SingularityParams& sp);
double q2(const HalfSpacePoint& field, const HalfSpacePoint& source, const SingularityParams& sp);

// Conormal derivative x^{2a}(n . grad) of q_k taken in the first point
// argument, with the weight at that point. For the double-layer kernel the
// differentiated point is the surface (source) node; for the adjoint
// (single-layer conormal) kernel it is the field point. Both reduce to the
// same function because q1, q2 are symmetric in their point arguments.
double conormal_q1(const HalfSpacePoint& at, const double normal[3],
                   const HalfSpacePoint& other, const SingularityParams& sp);
double conormal_q2(const HalfSpacePoint& at, const double normal[3],
                   const HalfSpacePoint& other, const SingularityParams& sp);
double conormal(KernelKind kind, const HalfSpacePoint& at, const double normal[3],
                const HalfSpacePoint& other, const SingularityParams& sp);
double conormal_of_field(KernelKind kind, const HalfSpacePoint& field_pt, const double normal[3],
                         const HalfSpacePoint& source, const SingularityParams& sp);

// Cross-check path: same conormal assembled from the raw partial-derivative
// formulas with hypergeometric argument sigma <= 0. Slower; used by tests.
double conormal_q1_raw(const HalfSpacePoint& at, const double normal[3],
                       const HalfSpacePoint& other, const SingularityParams& sp);
double conormal_q2_raw(const HalfSpacePoint& at, const double normal[3],
                       const HalfSpacePoint& other, const SingularityParams& sp);

} // namespace sbie
