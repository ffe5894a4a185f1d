#include "sbie/hemisphere.hpp"
#include "sbie/errors.hpp"
#include "sbie/specfun.hpp"

#include <cmath>

namespace sbie {

namespace {

double norm3(const HalfSpacePoint& p)
{
    return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
}

HalfSpacePoint invert(const HalfSpacePoint& p0, double a, double R)
{
    const double f = a * a / (R * R);
    return HalfSpacePoint{f * p0.x, f * p0.y, f * p0.z};
}

void require_source(const HalfSpacePoint& p0, const HalfBall& hb, const char* who)
{
    if (hb.a <= 0.0)
        throw domain_error(std::string(who) + ": ball radius must be positive");
    const double R = norm3(p0);
    if (R <= 0.0 || R >= hb.a)
        throw domain_error(std::string(who) + ": source point must satisfy 0 < |p0| < a");
}

void require_interior(const HalfSpacePoint& p0, const HalfBall& hb, const char* who)
{
    require_source(p0, hb, who);
    if (p0.x <= 0.0)
        throw domain_error(std::string(who) + ": source point must have x > 0");
}

} // namespace

double green_g01(const HalfSpacePoint& p, const HalfSpacePoint& p0, const HalfBall& hb,
                 const SingularityParams& sp)
{
    require_source(p0, hb, "green_g01");
    const double R = norm3(p0);
    const double mult = std::pow(hb.a / R, 1.0 + 2.0 * sp.alpha);
    return q1(p, p0, sp) - mult * q1(p, invert(p0, hb.a, R), sp);
}

double green_g02(const HalfSpacePoint& p, const HalfSpacePoint& p0, const HalfBall& hb,
                 const SingularityParams& sp)
{
    require_source(p0, hb, "green_g02");
    const double R = norm3(p0);
    const double mult = std::pow(hb.a / R, 1.0 + 2.0 * sp.alpha);
    return q2(p, p0, sp) - mult * q2(p, invert(p0, hb.a, R), sp);
}

double poisson_holmgren(const HalfBall& hb, const std::function<double(double, double)>& nu1,
                        const std::function<double(double, double)>& phi,
                        const HalfSpacePoint& p0, const SingularityParams& sp,
                        int Ns, int Nt, int Nr, int Nphi)
{
    require_interior(p0, hb, "poisson_holmgren");
    if (!nu1 || !phi)
        throw domain_error("poisson_holmgren: data callables are not set");
    const double al = sp.alpha;
    const double a = hb.a;
    const double R = norm3(p0);

    Hyp2F1 F(1.5 + al, al, 2.0 * al);
    const QuadratureGrid g = build_surface_grid(make_hemisphere(a), Ns, Nt);
    double surf = 0.0;
    for (const auto& nd : g.nodes) {
        const PairGeometry pg = pair_geometry(nd.p, p0);
        const double K = (1.0 + 2.0 * al) / (2.0 * M_PI) * std::pow(nd.p.x, 2.0 * al)
                         * F(pg.sigma) * (a * a - R * R) / (a * std::pow(pg.r, 3.0 + 2.0 * al));
        surf += nd.w * phi(nd.s, nd.t) * K;
    }

    const QuadratureGrid disk = build_disk_grid(a, Nr, Nphi);
    const HalfSpacePoint im = invert(p0, a, R);
    const double mult = std::pow(a / R, 1.0 + 2.0 * al);
    double plane = 0.0;
    for (const auto& nd : disk.nodes) {
        const double d1 = norm3({p0.x, p0.y - nd.p.y, p0.z - nd.p.z});
        const double d2 = norm3({im.x, im.y - nd.p.y, im.z - nd.p.z});
        const double K = std::pow(d1, -1.0 - 2.0 * al) - mult * std::pow(d2, -1.0 - 2.0 * al);
        plane += nd.w * nu1(nd.p.y, nd.p.z) * K;
    }

    return -plane / (2.0 * M_PI) + surf;
}

double poisson_dirichlet(const HalfBall& hb, const std::function<double(double, double)>& tau1,
                         const std::function<double(double, double)>& phi,
                         const HalfSpacePoint& p0, const SingularityParams& sp,
                         int Ns, int Nt, int Nr, int Nphi)
{
    require_interior(p0, hb, "poisson_dirichlet");
    if (!tau1 || !phi)
        throw domain_error("poisson_dirichlet: data callables are not set");
    const double al = sp.alpha;
    const double a = hb.a;
    const double R = norm3(p0);

    Hyp2F1 F(2.5 - al, 1.0 - al, 2.0 - 2.0 * al);
    const QuadratureGrid g = build_surface_grid(make_hemisphere(a), Ns, Nt);
    const double x0w = std::pow(p0.x, 1.0 - 2.0 * al);
    double surf = 0.0;
    for (const auto& nd : g.nodes) {
        const PairGeometry pg = pair_geometry(nd.p, p0);
        const double K = (3.0 - 2.0 * al) / (2.0 * M_PI) * x0w * nd.p.x * F(pg.sigma)
                         * (a * a - R * R) / (a * std::pow(pg.r, 5.0 - 2.0 * al));
        surf += nd.w * phi(nd.s, nd.t) * K;
    }

    // weighted flux trace of G02 through the plane: direct term with the
    // source weight x0^{1-2a}, image term with the image weight
    const QuadratureGrid disk = build_disk_grid(a, Nr, Nphi);
    const HalfSpacePoint im = invert(p0, a, R);
    const double mult = std::pow(a / R, 1.0 + 2.0 * al);
    const double imw = std::pow(im.x, 1.0 - 2.0 * al);
    double plane = 0.0;
    for (const auto& nd : disk.nodes) {
        const double d1 = norm3({p0.x, p0.y - nd.p.y, p0.z - nd.p.z});
        const double d2 = norm3({im.x, im.y - nd.p.y, im.z - nd.p.z});
        const double K = x0w * std::pow(d1, 2.0 * al - 3.0)
                         - mult * imw * std::pow(d2, 2.0 * al - 3.0);
        plane += nd.w * tau1(nd.p.y, nd.p.z) * K;
    }

    return (1.0 - 2.0 * al) / (2.0 * M_PI) * plane + surf;
}

} // namespace sbie
