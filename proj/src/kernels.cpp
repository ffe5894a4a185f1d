#include "sbie/kernels.hpp"
#include "sbie/errors.hpp"
#include "sbie/specfun.hpp"

#include <cmath>
#include <memory>

namespace sbie {

SingularityParams::SingularityParams(double a) : alpha(a)
{
    if (!(a > 0.0) || !(2.0 * a < 1.0))
        throw domain_error("SingularityParams: need 0 < 2*alpha < 1");
}

PairGeometry pair_geometry(const HalfSpacePoint& field, const HalfSpacePoint& source)
{
    const double dy = field.y - source.y, dz = field.z - source.z;
    const double r2 = (field.x - source.x) * (field.x - source.x) + dy * dy + dz * dz;
    const double r12 = (field.x + source.x) * (field.x + source.x) + dy * dy + dz * dz;
    PairGeometry g;
    g.r = std::sqrt(r2);
    g.r1 = std::sqrt(r12);
    if (g.r < 1e-12 * g.r1 || r2 == 0.0)
        throw singularity_error("kernel evaluated at (nearly) coincident points");
    g.sigma = 1.0 - r12 / r2;
    g.co_sigma = 1.0 - r2 / r12;
    return g;
}

namespace {

// fixed-parameter hypergeometric evaluators for one alpha; rebuilt only when
// alpha changes, which in practice is once per run
struct EvaluatorSet {
    double alpha;
    Hyp2F1 f_q1;       // F(a+1/2, a; 2a; sigma)
    Hyp2F1 f_q2;       // F(3/2-a, 1-a; 2-2a; sigma)
    Hyp2F1 f_c1_log;   // F(a-3/2, a; 2a; co_sigma)
    Hyp2F1 f_c1_x;     // F(a-1/2, 1+a; 1+2a; co_sigma)
    Hyp2F1 f_c2_log;   // F(-1/2-a, 1-a; 2-2a; co_sigma)
    Hyp2F1 f_c2_x;     // F(-1/2-a, 1-a; 1-2a; co_sigma)

    explicit EvaluatorSet(double a)
        : alpha(a),
          f_q1(a + 0.5, a, 2 * a),
          f_q2(1.5 - a, 1 - a, 2 - 2 * a),
          f_c1_log(a - 1.5, a, 2 * a),
          f_c1_x(a - 0.5, 1 + a, 1 + 2 * a),
          f_c2_log(-0.5 - a, 1 - a, 2 - 2 * a),
          f_c2_x(-0.5 - a, 1 - a, 1 - 2 * a)
    {
    }
};

const EvaluatorSet& evaluators(double alpha)
{
    thread_local std::unique_ptr<EvaluatorSet> cache;
    if (!cache || cache->alpha != alpha)
        cache = std::make_unique<EvaluatorSet>(alpha);
    return *cache;
}

} // namespace

double q1(const HalfSpacePoint& field, const HalfSpacePoint& source, const SingularityParams& sp)
{
    const double a = sp.alpha;
    const PairGeometry g = pair_geometry(field, source);
    return 0.5 / M_PI * std::pow(g.r, -2 * a - 1) * evaluators(a).f_q1(g.sigma);
}

double q2(const HalfSpacePoint& field, const HalfSpacePoint& source, const SingularityParams& sp)
{
    if (field.x == 0.0 || source.x == 0.0)
        return 0.0;
    const double a = sp.alpha;
    const PairGeometry g = pair_geometry(field, source);
    return 0.5 / M_PI * std::pow(g.r, 2 * a - 3) * std::pow(field.x * source.x, 1 - 2 * a)
         * evaluators(a).f_q2(g.sigma);
}

double conormal_q1(const HalfSpacePoint& at, const double n[3],
                   const HalfSpacePoint& other, const SingularityParams& sp)
{
    const double a = sp.alpha;
    const PairGeometry g = pair_geometry(at, other);
    const EvaluatorSet& ev = evaluators(a);
    const double wgt = std::pow(at.x, 2 * a);
    const double ndot = n[0] * (at.x - other.x) + n[1] * (at.y - other.y) + n[2] * (at.z - other.z);
    const double blog = wgt * 2.0 * ndot / (g.r * g.r);
    const double t1 = -(1 + 2 * a) / (4 * M_PI) * std::pow(g.r1, -2 * a) / g.r
                    * ev.f_c1_log(g.co_sigma) * blog;
    const double t2 = -(1 + 2 * a) / (2 * M_PI) * other.x * wgt
                    / (g.r * std::pow(g.r1, 2 * a + 2)) * ev.f_c1_x(g.co_sigma) * n[0];
    return t1 + t2;
}

double conormal_q2(const HalfSpacePoint& at, const double n[3],
                   const HalfSpacePoint& other, const SingularityParams& sp)
{
    const double a = sp.alpha;
    const PairGeometry g = pair_geometry(at, other);
    const EvaluatorSet& ev = evaluators(a);
    const double ox = std::pow(other.x, 1 - 2 * a);
    const double r1p = std::pow(g.r1, 2 * a - 2);
    const double ndot = n[0] * (at.x - other.x) + n[1] * (at.y - other.y) + n[2] * (at.z - other.z);
    const double blog = std::pow(at.x, 2 * a) * 2.0 * ndot / (g.r * g.r);
    const double t1 = -(3 - 2 * a) / (4 * M_PI) * ox * std::pow(at.x, 1 - 2 * a) / g.r * r1p
                    * ev.f_c2_log(g.co_sigma) * blog;
    const double t2 = (1 - 2 * a) / (2 * M_PI) * ox / g.r * r1p * ev.f_c2_x(g.co_sigma) * n[0];
    return t1 + t2;
}

double conormal(KernelKind kind, const HalfSpacePoint& at, const double n[3],
                const HalfSpacePoint& other, const SingularityParams& sp)
{
    return kind == KernelKind::Q1 ? conormal_q1(at, n, other, sp) : conormal_q2(at, n, other, sp);
}

double conormal_of_field(KernelKind kind, const HalfSpacePoint& field_pt, const double n[3],
                         const HalfSpacePoint& source, const SingularityParams& sp)
{
    return conormal(kind, field_pt, n, source, sp);
}

double conormal_q1_raw(const HalfSpacePoint& at, const double n[3],
                       const HalfSpacePoint& other, const SingularityParams& sp)
{
    // raw partials of q1(other, at) in the components of `at`
    const double a = sp.alpha;
    const PairGeometry g = pair_geometry(at, other);
    const double s = g.sigma;
    const double rp = std::pow(g.r, -2 * a - 3);
    const double c = (1 + 2 * a) / (2 * M_PI);
    const double fA = gauss_2f1(a + 1.5, a, 2 * a, s);
    const double fB = gauss_2f1(a + 1.5, 1 + a, 1 + 2 * a, s);
    const double dqdx = c * (other.x - at.x) * rp * fA - c * other.x * rp * fB;
    const double dqdy = c * (other.y - at.y) * rp * fA;
    const double dqdz = c * (other.z - at.z) * rp * fA;
    return std::pow(at.x, 2 * a) * (n[0] * dqdx + n[1] * dqdy + n[2] * dqdz);
}

double conormal_q2_raw(const HalfSpacePoint& at, const double n[3],
                       const HalfSpacePoint& other, const SingularityParams& sp)
{
    const double a = sp.alpha;
    const PairGeometry g = pair_geometry(at, other);
    const double s = g.sigma;
    const double xa = at.x, xb = other.x;
    const double fA = gauss_2f1(2.5 - a, 1 - a, 2 - 2 * a, s);
    const double fB = gauss_2f1(1.5 - a, 1 - a, 2 - 2 * a, s);
    const double fC = gauss_2f1(2.5 - a, 2 - a, 3 - 2 * a, s);
    const double c3 = (3 - 2 * a) / (2 * M_PI), c1 = (1 - 2 * a) / (2 * M_PI);
    const double r5 = std::pow(g.r, 2 * a - 5), r3 = std::pow(g.r, 2 * a - 3);
    const double x1m = std::pow(xa * xb, 1 - 2 * a);
    const double dqdx = c3 * x1m * (xb - xa) * r5 * fA
                      + c1 * std::pow(xb, 1 - 2 * a) * std::pow(xa, -2 * a) * r3 * fB
                      - c3 * std::pow(xb, 2 - 2 * a) * std::pow(xa, 1 - 2 * a) * r5 * fC;
    const double dqdy = c3 * x1m * (other.y - at.y) * r5 * fA;
    const double dqdz = c3 * x1m * (other.z - at.z) * r5 * fA;
    return std::pow(xa, 2 * a) * (n[0] * dqdx + n[1] * dqdy + n[2] * dqdz);
}

} // namespace sbie
