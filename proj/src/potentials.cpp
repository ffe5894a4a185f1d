#include "sbie/potentials.hpp"
#include "sbie/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sbie {

namespace {

struct GLRule {
    std::vector<double> x, w;
};

const GLRule& cached_gl(int n)
{
    thread_local std::vector<std::pair<int, GLRule>> cache;
    for (const auto& e : cache)
        if (e.first == n)
            return e.second;
    GLRule r;
    gauss_legendre(n, r.x, r.w);
    cache.emplace_back(n, std::move(r));
    return cache.back().second;
}

const GridNode& nearest_shadow_node(const QuadratureGrid& disk, double y, double z)
{
    const GridNode* best = &disk.nodes.front();
    double bestd = std::numeric_limits<double>::max();
    for (const auto& n : disk.nodes) {
        const double d = (n.p.y - y) * (n.p.y - y) + (n.p.z - z) * (n.p.z - z);
        if (d < bestd) {
            bestd = d;
            best = &n;
        }
    }
    return *best;
}

} // namespace

double eval_double_layer(KernelKind kind, const std::vector<double>& mu,
                         const QuadratureGrid& grid, const HalfSpacePoint& target,
                         const SingularityParams& sp)
{
    if (mu.size() != grid.nodes.size())
        throw domain_error("eval_double_layer: density length does not match grid");
    double acc = 0.0;
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        const GridNode& n = grid.nodes[i];
        const double nrm[3] = {n.nx, n.ny, n.nz};
        acc += n.w * mu[i] * conormal(kind, n.p, nrm, target, sp);
    }
    return acc;
}

double eval_double_layer_subtracted(KernelKind kind, const std::vector<double>& mu,
                                    const QuadratureGrid& grid, const HalfSpacePoint& target,
                                    bool inside, double mu_star, const SingularityParams& sp)
{
    if (mu.size() != grid.nodes.size())
        throw domain_error("eval_double_layer_subtracted: density length does not match grid");
    double acc = 0.0;
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        const GridNode& n = grid.nodes[i];
        const double nrm[3] = {n.nx, n.ny, n.nz};
        acc += n.w * (mu[i] - mu_star) * conormal(kind, n.p, nrm, target, sp);
    }
    double w_exact;
    if (kind == KernelKind::Q1) {
        w_exact = inside ? -1.0 : 0.0;
    } else {
        if (grid.edge_radius <= 0.0)
            throw domain_error("eval_double_layer_subtracted: Q2 needs grid.edge_radius");
        w_exact = plane_flux_i(target, grid.edge_radius, sp) - (inside ? 1.0 : 0.0);
    }
    return acc + mu_star * w_exact;
}

double eval_single_layer(KernelKind kind, const std::vector<double>& rho,
                         const QuadratureGrid& grid, const HalfSpacePoint& target,
                         const SingularityParams& sp)
{
    if (rho.size() != grid.nodes.size())
        throw domain_error("eval_single_layer: density length does not match grid");
    double acc = 0.0;
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        const GridNode& n = grid.nodes[i];
        const double v = kind == KernelKind::Q1 ? q1(target, n.p, sp) : q2(target, n.p, sp);
        acc += n.w * rho[i] * v;
    }
    return acc;
}

double eval_single_layer_conormal(KernelKind kind, const std::vector<double>& rho,
                                  const QuadratureGrid& grid, const HalfSpacePoint& target,
                                  const double normal_at_target[3], const SingularityParams& sp)
{
    if (rho.size() != grid.nodes.size())
        throw domain_error("eval_single_layer_conormal: density length does not match grid");
    double acc = 0.0;
    for (size_t i = 0; i < grid.nodes.size(); ++i)
        acc += grid.nodes[i].w * rho[i]
             * conormal_of_field(kind, target, normal_at_target, grid.nodes[i].p, sp);
    return acc;
}

double gauss_flux(KernelKind kind, const QuadratureGrid& grid, const HalfSpacePoint& target,
                  const SingularityParams& sp)
{
    const std::vector<double> unit(grid.nodes.size(), 1.0);
    return eval_double_layer(kind, unit, grid, target, sp);
}

double disk_radial_integral(double x, double b, double a, double expo)
{
    if (a <= 0.0)
        throw domain_error("disk_radial_integral: disk radius must be positive");
    b = std::fabs(b);
    double acc = 0.0;
    const double e1 = expo + 1.0;

    if (b < a) {
        // full circles out to radius a-b around the shadow point
        const double s0 = a - b;
        const double hi = std::pow(x * x + s0 * s0, e1);
        const double lo = x == 0.0 ? 0.0 : std::pow(x * x, e1);
        if (x == 0.0 && e1 <= 0.0)
            throw domain_error("disk_radial_integral: divergent at x = 0 for this exponent");
        acc += M_PI / e1 * (hi - lo);
    }
    if (b > 0.0) {
        // partial arcs on s in [|a-b|, a+b]
        const double L = std::fabs(a - b), R = a + b, W = R - L;
        auto arc = [&](double s) {
            const double c = std::clamp((b * b + s * s - a * a) / (2.0 * b * s), -1.0, 1.0);
            return 2.0 * std::acos(c);
        };
        auto integrand = [&](double s) { return s * arc(s) * std::pow(x * x + s * s, expo); };
        // denser panels at both ends where the arc angle has square-root behavior
        struct Panel { double lo, hi; int n; };
        const Panel panels[3] = {{L, L + 0.1 * W, 120}, {L + 0.1 * W, R - 0.1 * W, 80}, {R - 0.1 * W, R, 120}};
        for (const auto& p : panels) {
            const GLRule& rule = cached_gl(p.n);
            const double h = 0.5 * (p.hi - p.lo), m = 0.5 * (p.hi + p.lo);
            for (int k = 0; k < p.n; ++k)
                acc += rule.w[k] * h * integrand(m + h * rule.x[k]);
        }
    }
    return acc;
}

double plane_flux_i(const HalfSpacePoint& target, double disk_radius, const SingularityParams& sp)
{
    if (target.x <= 0.0)
        throw domain_error("plane_flux_i: target must have x > 0");
    const double a = sp.alpha;
    const double b = std::sqrt(target.y * target.y + target.z * target.z);
    const double pref = (1.0 - 2.0 * a) / (2.0 * M_PI) * std::pow(target.x, 1.0 - 2.0 * a);
    return pref * disk_radial_integral(target.x, b, disk_radius, a - 1.5);
}

double plane_flux_i(const HalfSpacePoint& target, const QuadratureGrid& disk,
                    const SingularityParams& sp)
{
    if (target.x <= 0.0)
        throw domain_error("plane_flux_i: target must have x > 0");
    const double a = sp.alpha;
    double acc = 0.0;
    for (const auto& n : disk.nodes) {
        const double dy = target.y - n.p.y, dz = target.z - n.p.z;
        acc += n.w * std::pow(target.x * target.x + dy * dy + dz * dz, a - 1.5);
    }
    return (1.0 - 2.0 * a) / (2.0 * M_PI) * std::pow(target.x, 1.0 - 2.0 * a) * acc;
}

double plane_potential_holmgren(const std::vector<double>& nu1, const QuadratureGrid& disk,
                                const HalfSpacePoint& target, const SingularityParams& sp)
{
    if (nu1.size() != disk.nodes.size())
        throw domain_error("plane_potential_holmgren: data length does not match grid");
    const double a = sp.alpha;
    const double expo = -0.5 - a;
    const double b = std::sqrt(target.y * target.y + target.z * target.z);

    // subtraction of the local value keeps the quadrature accurate as x -> 0
    double star = 0.0;
    bool subtract = b < disk.edge_radius && target.x < 0.5 * disk.edge_radius;
    if (subtract) {
        size_t idx = &nearest_shadow_node(disk, target.y, target.z) - disk.nodes.data();
        star = nu1[idx];
    }
    double acc = 0.0;
    for (size_t i = 0; i < disk.nodes.size(); ++i) {
        const auto& n = disk.nodes[i];
        const double dy = target.y - n.p.y, dz = target.z - n.p.z;
        acc += n.w * (nu1[i] - star)
             * std::pow(target.x * target.x + dy * dy + dz * dz, expo);
    }
    if (subtract)
        acc += star * disk_radial_integral(target.x, b, disk.edge_radius, expo);
    return -acc / (2.0 * M_PI);
}

double plane_potential_dirichlet(const std::vector<double>& tau1, const QuadratureGrid& disk,
                                 const HalfSpacePoint& target, const SingularityParams& sp)
{
    if (tau1.size() != disk.nodes.size())
        throw domain_error("plane_potential_dirichlet: data length does not match grid");
    if (target.x <= 0.0)
        throw domain_error("plane_potential_dirichlet: target must have x > 0");
    const double a = sp.alpha;
    const double expo = a - 1.5;
    const double b = std::sqrt(target.y * target.y + target.z * target.z);

    double star = 0.0;
    bool subtract = b < disk.edge_radius;
    if (subtract) {
        size_t idx = &nearest_shadow_node(disk, target.y, target.z) - disk.nodes.data();
        star = tau1[idx];
    }
    double acc = 0.0;
    for (size_t i = 0; i < disk.nodes.size(); ++i) {
        const auto& n = disk.nodes[i];
        const double dy = target.y - n.p.y, dz = target.z - n.p.z;
        acc += n.w * (tau1[i] - star)
             * std::pow(target.x * target.x + dy * dy + dz * dz, expo);
    }
    if (subtract)
        acc += star * disk_radial_integral(target.x, b, disk.edge_radius, expo);
    return (1.0 - 2.0 * a) / (2.0 * M_PI) * std::pow(target.x, 1.0 - 2.0 * a) * acc;
}

} // namespace sbie
