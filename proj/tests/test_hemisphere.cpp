#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sbie/errors.hpp"
#include "sbie/hemisphere.hpp"
#include "sbie/specfun.hpp"

#include <cmath>
#include <random>

using namespace sbie;

namespace {

double rel(double got, double want)
{
    return std::fabs(got - want) / std::fabs(want);
}

double norm3(const HalfSpacePoint& p)
{
    return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
}

HalfSpacePoint invert(const HalfSpacePoint& p0, double a)
{
    const double R2 = p0.x * p0.x + p0.y * p0.y + p0.z * p0.z;
    const double f = a * a / R2;
    return {f * p0.x, f * p0.y, f * p0.z};
}

const HalfSpacePoint SRC{2.2, 0.3, -0.4}; // exterior source for manufactured runs

// weighted plane trace of q2(.; src): lim x^{2a} d/dx q2((x,y,z), src)
double q2_plane_trace(double y, double z, const HalfSpacePoint& src, double alpha)
{
    const double dy = y - src.y, dz = z - src.z;
    const double d2 = src.x * src.x + dy * dy + dz * dz;
    return (1.0 - 2.0 * alpha) / (2.0 * M_PI) * std::pow(src.x, 1.0 - 2.0 * alpha)
           * std::pow(d2, alpha - 1.5);
}

} // namespace

TEST_CASE("green function pinned values")
{
    const SingularityParams sp(0.3);
    const HalfBall hb{1.0};
    const HalfSpacePoint p{0.7, 0.2, -0.4}, p0{0.5, -0.3, 0.6};
    CHECK(rel(green_g01(p, p0, hb, sp), 0.00401320802479410475904) <= 1e-12);
    CHECK(rel(green_g02(p, p0, hb, sp), 0.00293841167771653381166) <= 1e-12);
}

TEST_CASE("green functions vanish on the spherical surface")
{
    const SingularityParams sp(0.3);
    const HalfBall hb{1.0};
    const HalfSpacePoint p0{0.4, 0.1, -0.2};
    std::mt19937_64 rng(4242);
    auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int k = 0; k < 100; ++k) {
        const double t = 0.02 + (M_PI / 2 - 0.04) * uni();
        const double s = 2.0 * M_PI * uni();
        const HalfSpacePoint p{std::cos(t), std::sin(t) * std::cos(s),
                               std::sin(t) * std::sin(s)};
        CHECK(std::fabs(green_g01(p, p0, hb, sp)) <= 1e-10);
        CHECK(std::fabs(green_g02(p, p0, hb, sp)) <= 1e-10);
    }
}

TEST_CASE("green functions are symmetric in their arguments")
{
    const HalfBall hb{1.3};
    for (double al : {0.1, 0.3, 0.45}) {
        const SingularityParams sp(al);
        const HalfSpacePoint pairs[][2] = {
            {{0.7, 0.2, -0.4}, {0.5, -0.3, 0.6}},
            {{0.15, 0.8, 0.1}, {0.9, 0.05, -0.3}},
            {{0.3, 0.3, 0.3}, {0.6, -0.2, 0.5}},
        };
        for (const auto& pq : pairs) {
            const double ab = green_g01(pq[0], pq[1], hb, sp);
            const double ba = green_g01(pq[1], pq[0], hb, sp);
            CHECK(std::fabs(ab - ba) <= 1e-10 * std::max(1.0, std::fabs(ab)));
            const double ab2 = green_g02(pq[0], pq[1], hb, sp);
            const double ba2 = green_g02(pq[1], pq[0], hb, sp);
            CHECK(std::fabs(ab2 - ba2) <= 1e-10 * std::max(1.0, std::fabs(ab2)));
        }
    }
}

TEST_CASE("plane behavior of the green functions")
{
    const SingularityParams sp(0.3);
    const HalfBall hb{1.0};
    const HalfSpacePoint p0{0.4, 0.1, -0.2};
    // second kind vanishes exactly on x = 0
    CHECK(green_g02(HalfSpacePoint{0.0, 0.3, 0.2}, p0, hb, sp) == 0.0);

    // first kind has vanishing weighted x-derivative: sample the slope in
    // m = x^{1-2a}, where x^{2a} dG/dx = (1-2a) dG/dm
    const double beta = 1.0 - 2.0 * sp.alpha;
    auto g_of_m = [&](double m) {
        return green_g01(HalfSpacePoint{std::pow(m, 1.0 / beta), 0.3, 0.2}, p0, hb, sp);
    };
    const double hm = 1e-2;
    const double wslope = beta * (g_of_m(2.0 * hm) - g_of_m(hm)) / hm;
    CHECK(std::fabs(wslope) <= 1e-5);
}

TEST_CASE("poisson surface kernels match the image-derivative of the green functions")
{
    // the closed-form kernels pinned here must equal -B_nu[G0j] at the surface
    const double al = 0.3;
    const SingularityParams sp(al);
    const HalfSpacePoint p0{0.4, 0.1, -0.2};
    const HalfSpacePoint q{0.6, 0.48, 0.64}; // on the unit sphere
    const double nq[3] = {q.x, q.y, q.z};
    const double R = norm3(p0);
    const double mult = std::pow(1.0 / R, 1.0 + 2.0 * al);
    const HalfSpacePoint im = invert(p0, 1.0);

    const double kh = -(conormal_q1(q, nq, p0, sp) - mult * conormal_q1(q, nq, im, sp));
    CHECK(rel(kh, 0.103207387026378223345) <= 1e-10);

    const double kd = -(conormal_q2(q, nq, p0, sp) - mult * conormal_q2(q, nq, im, sp));
    CHECK(rel(kd, 0.0760943635411692329479) <= 1e-10);
}

TEST_CASE("poisson kernels stay nonnegative over the surface")
{
    const SingularityParams sp(0.25);
    const double a = 1.0;
    const QuadratureGrid g = build_surface_grid(make_hemisphere(a), 24, 24);
    std::mt19937_64 rng(17);
    auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int k = 0; k < 5; ++k) {
        const double th = 0.1 + 1.3 * uni(), ph = 2.0 * M_PI * uni(), r0 = 0.15 + 0.7 * uni();
        const HalfSpacePoint p0{r0 * std::cos(th), r0 * std::sin(th) * std::cos(ph),
                                r0 * std::sin(th) * std::sin(ph)};
        const double R = norm3(p0);
        const double mult = std::pow(a / R, 1.0 + 2.0 * sp.alpha);
        const HalfSpacePoint im = invert(p0, a);
        for (const auto& nd : g.nodes) {
            const double n[3] = {nd.nx, nd.ny, nd.nz};
            const double kh =
                -(conormal_q1(nd.p, n, p0, sp) - mult * conormal_q1(nd.p, n, im, sp));
            const double kd =
                -(conormal_q2(nd.p, n, p0, sp) - mult * conormal_q2(nd.p, n, im, sp));
            CHECK(kh >= -1e-12);
            CHECK(kd >= -1e-12);
        }
    }
}

TEST_CASE("holmgren formula reproduces a manufactured first-kind solution")
{
    const SingularityParams sp(0.3);
    const HalfBall hb{1.0};
    const ParamSurface hemi = make_hemisphere(1.0);
    auto phi = [&](double s, double t) { return q1(hemi.eval(s, t), SRC, sp); };
    auto zero = [](double, double) { return 0.0; };
    for (const auto& p0 : {HalfSpacePoint{0.3, 0.1, -0.2}, HalfSpacePoint{0.5, -0.3, 0.2},
                           HalfSpacePoint{0.1, 0.4, 0.3}, HalfSpacePoint{0.55, 0.2, 0.35}}) {
        const double want = q1(p0, SRC, sp);
        const double got = poisson_holmgren(hb, zero, phi, p0, sp);
        CHECK(rel(got, want) <= 1e-3);
    }
}

TEST_CASE("holmgren formula with active plane data")
{
    const SingularityParams sp(0.3);
    const HalfBall hb{1.0};
    const ParamSurface hemi = make_hemisphere(1.0);
    auto phi = [&](double s, double t) { return q2(hemi.eval(s, t), SRC, sp); };
    auto nu1 = [&](double y, double z) { return q2_plane_trace(y, z, SRC, sp.alpha); };
    for (const auto& p0 : {HalfSpacePoint{0.3, 0.1, -0.2}, HalfSpacePoint{0.45, -0.25, 0.3}}) {
        const double want = q2(p0, SRC, sp);
        const double got = poisson_holmgren(hb, nu1, phi, p0, sp);
        CHECK(rel(got, want) <= 1e-3);
    }
}

TEST_CASE("dirichlet formula reproduces a manufactured second-kind solution")
{
    const SingularityParams sp(0.3);
    const HalfBall hb{1.0};
    const ParamSurface hemi = make_hemisphere(1.0);
    auto phi = [&](double s, double t) { return q2(hemi.eval(s, t), SRC, sp); };
    auto zero = [](double, double) { return 0.0; };
    for (const auto& p0 : {HalfSpacePoint{0.3, 0.1, -0.2}, HalfSpacePoint{0.5, -0.3, 0.2},
                           HalfSpacePoint{0.55, 0.2, 0.35}}) {
        const double want = q2(p0, SRC, sp);
        const double got = poisson_dirichlet(hb, zero, phi, p0, sp);
        CHECK(rel(got, want) <= 1e-3);
    }
}

TEST_CASE("dirichlet formula with active plane data")
{
    const SingularityParams sp(0.3);
    const HalfBall hb{1.0};
    const ParamSurface hemi = make_hemisphere(1.0);
    auto phi = [&](double s, double t) { return q1(hemi.eval(s, t), SRC, sp); };
    auto tau = [&](double y, double z) { return q1(HalfSpacePoint{0.0, y, z}, SRC, sp); };
    for (const auto& p0 : {HalfSpacePoint{0.3, 0.1, -0.2}, HalfSpacePoint{0.45, -0.25, 0.3}}) {
        const double want = q1(p0, SRC, sp);
        const double got = poisson_dirichlet(hb, tau, phi, p0, sp);
        CHECK(rel(got, want) <= 1e-3);
    }
}

TEST_CASE("unit data returns the constant solution")
{
    const SingularityParams sp(0.25);
    const HalfBall hb{1.0};
    auto one = [](double, double) { return 1.0; };
    auto zero = [](double, double) { return 0.0; };
    const HalfSpacePoint p0{0.35, 0.15, -0.1};
    CHECK(std::fabs(poisson_dirichlet(hb, one, one, p0, sp) - 1.0) <= 1e-3);
    CHECK(std::fabs(poisson_holmgren(hb, zero, one, p0, sp) - 1.0) <= 1e-3);
    CHECK(std::fabs(poisson_holmgren(hb, zero, zero, p0, sp)) <= 1e-15);
}

TEST_CASE("interior preconditions are enforced")
{
    const SingularityParams sp(0.25);
    const HalfBall hb{1.0};
    auto zero = [](double, double) { return 0.0; };
    CHECK_THROWS_AS(poisson_holmgren(hb, zero, zero, HalfSpacePoint{1.2, 0.0, 0.0}, sp),
                    domain_error);
    CHECK_THROWS_AS(poisson_dirichlet(hb, zero, zero, HalfSpacePoint{0.0, 0.2, 0.0}, sp),
                    domain_error);
    CHECK_THROWS_AS(green_g01(HalfSpacePoint{0.3, 0, 0}, HalfSpacePoint{0.3, 0, 0}, hb, sp),
                    singularity_error);
}
