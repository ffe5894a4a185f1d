#include "sbie/geometry.hpp"
#include "sbie/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sbie {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1)
        throw domain_error("gauss_legendre: need n >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15)
                break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

ParamSurface make_hemisphere(double a)
{
    if (a <= 0.0)
        throw domain_error("make_hemisphere: radius must be positive");
    ParamSurface surf;
    surf.s1 = 0.0;
    surf.s2 = 2.0 * M_PI;
    surf.t1 = 0.0;
    surf.t2 = 0.5 * M_PI;
    surf.eval = [a](double s, double t) {
        return HalfSpacePoint{a * std::cos(t), a * std::sin(t) * std::cos(s), a * std::sin(t) * std::sin(s)};
    };
    surf.partials = [a](double s, double t, double dPds[3], double dPdt[3]) {
        dPds[0] = 0.0;
        dPds[1] = -a * std::sin(t) * std::sin(s);
        dPds[2] = a * std::sin(t) * std::cos(s);
        dPdt[0] = -a * std::sin(t);
        dPdt[1] = a * std::cos(t) * std::cos(s);
        dPdt[2] = a * std::cos(t) * std::sin(s);
    };
    surf.meets_plane_orthogonally = true;
    return surf;
}

void surface_partials(const ParamSurface& surf, double s, double t,
                      double dPds[3], double dPdt[3])
{
    if (surf.partials) {
        surf.partials(s, t, dPds, dPdt);
        return;
    }
    const double eps_s = 1e-6 * (surf.s2 - surf.s1);
    const double eps_t = 1e-6 * (surf.t2 - surf.t1);
    const HalfSpacePoint sp = surf.eval(s + eps_s, t), sm = surf.eval(s - eps_s, t);
    const HalfSpacePoint tp = surf.eval(s, t + eps_t), tm = surf.eval(s, t - eps_t);
    dPds[0] = (sp.x - sm.x) / (2 * eps_s);
    dPds[1] = (sp.y - sm.y) / (2 * eps_s);
    dPds[2] = (sp.z - sm.z) / (2 * eps_s);
    dPdt[0] = (tp.x - tm.x) / (2 * eps_t);
    dPdt[1] = (tp.y - tm.y) / (2 * eps_t);
    dPdt[2] = (tp.z - tm.z) / (2 * eps_t);
}

double QuadratureGrid::weight_sum() const
{
    double s = 0.0;
    for (const auto& n : nodes)
        s += n.w;
    return s;
}

QuadratureGrid build_surface_grid(const ParamSurface& surf, int Ns, int Nt)
{
    if (Ns < 4 || Nt < 4)
        throw domain_error("build_surface_grid: need Ns, Nt >= 4");
    if (!surf.eval)
        throw domain_error("build_surface_grid: surface has no evaluator");

    std::vector<double> xs, ws, xt, wt;
    gauss_legendre(Ns, xs, ws);
    gauss_legendre(Nt, xt, wt);

    const double hs = 0.5 * (surf.s2 - surf.s1), ms = 0.5 * (surf.s2 + surf.s1);
    const double ht = 0.5 * (surf.t2 - surf.t1), mt = 0.5 * (surf.t2 + surf.t1);

    QuadratureGrid g;
    g.ns = Ns;
    g.nt = Nt;
    g.nodes.reserve(static_cast<size_t>(Ns) * Nt);
    for (int j = 0; j < Nt; ++j) {
        const double t = mt + ht * xt[j];
        for (int i = 0; i < Ns; ++i) {
            const double s = ms + hs * xs[i];
            GridNode node;
            node.s = s;
            node.t = t;
            node.p = surf.eval(s, t);
            double Ps[3], Pt[3];
            surface_partials(surf, s, t, Ps, Pt);
            // cross product dP/dt x dP/ds points outward for the hemisphere
            double cx = Pt[1] * Ps[2] - Pt[2] * Ps[1];
            double cy = Pt[2] * Ps[0] - Pt[0] * Ps[2];
            double cz = Pt[0] * Ps[1] - Pt[1] * Ps[0];
            const double area = std::sqrt(cx * cx + cy * cy + cz * cz);
            if (area < 1e-14)
                throw domain_error("build_surface_grid: degenerate area element at a node");
            node.nx = cx / area;
            node.ny = cy / area;
            node.nz = cz / area;
            node.w = ws[i] * wt[j] * hs * ht * area;
            g.nodes.push_back(node);
        }
    }

    // adjacent parameter gaps (GL nodes are non-uniform)
    auto max_gap = [](const std::vector<double>& x, double h, double m) {
        double worst = 0.0;
        for (size_t k = 1; k < x.size(); ++k)
            worst = std::max(worst, (m + h * x[k]) - (m + h * x[k - 1]));
        return worst;
    };
    g.ds_max = max_gap(xs, hs, ms);
    g.dt_max = max_gap(xt, ht, mt);

    // radius of the edge curve in the plane x = 0 (parameter line t = t2)
    const HalfSpacePoint rim = surf.eval(surf.s1, surf.t2);
    g.edge_radius = std::sqrt(rim.y * rim.y + rim.z * rim.z);
    return g;
}

QuadratureGrid build_disk_grid(double a, int Nr, int Nphi)
{
    if (a <= 0.0)
        throw domain_error("build_disk_grid: radius must be positive");
    if (Nr < 4 || Nphi < 4)
        throw domain_error("build_disk_grid: need Nr, Nphi >= 4");

    std::vector<double> xr, wr, xp, wp;
    gauss_legendre(Nr, xr, wr);
    gauss_legendre(Nphi, xp, wp);
    const double hr = 0.5 * a, mr = 0.5 * a;
    const double hp = M_PI, mp = M_PI;

    QuadratureGrid g;
    g.ns = Nphi;
    g.nt = Nr;
    g.nodes.reserve(static_cast<size_t>(Nr) * Nphi);
    for (int j = 0; j < Nr; ++j) {
        const double r = mr + hr * xr[j];
        for (int i = 0; i < Nphi; ++i) {
            const double phi = mp + hp * xp[i];
            GridNode node;
            node.s = phi;
            node.t = r;
            node.p = HalfSpacePoint{0.0, r * std::cos(phi), r * std::sin(phi)};
            node.nx = -1.0; // outward normal of the half-ball on the plane face
            node.ny = 0.0;
            node.nz = 0.0;
            node.w = wr[j] * wp[i] * hr * hp * r;
            g.nodes.push_back(node);
        }
    }
    g.ds_max = 0.0;
    g.dt_max = 0.0;
    g.edge_radius = a;
    return g;
}

} // namespace sbie
