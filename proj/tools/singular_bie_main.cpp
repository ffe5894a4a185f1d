// Command line front end: solve, verify, convergence.

#include "sbie/bie.hpp"
#include "sbie/bvp.hpp"
#include "sbie/config.hpp"
#include "sbie/errors.hpp"
#include "sbie/hemisphere.hpp"
#include "sbie/parallel.hpp"
#include "sbie/potentials.hpp"
#include "sbie/specfun.hpp"

#include "CLI11.hpp"
#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace sbie;

std::string fmt15(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

double wall_seconds()
{
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// solve

SolutionField run_solver(const BvpProblem& problem)
{
    return problem.kind == ProblemKind::Dirichlet ? solve_dirichlet(problem)
                                                  : solve_holmgren(problem);
}

int cmd_solve(const std::string& cfg_path)
{
    RunConfig cfg;
    BvpProblem* problem = nullptr;
    try {
        cfg = parse_config(cfg_path);
    } catch (const domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    try {
        BvpProblem prob = make_problem(cfg);
        problem = &prob;
        SolutionField sol = run_solver(prob);

        const int npts = static_cast<int>(cfg.eval_points.size());
        std::vector<double> u(npts);
        std::vector<std::string> point_errors(npts);
        parallel_for(npts, [&](int i) {
            try {
                u[i] = evaluate_solution(sol, cfg.eval_points[i]);
            } catch (const std::exception& e) {
                point_errors[i] = e.what();
            }
        });
        for (const auto& msg : point_errors)
            if (!msg.empty()) {
                std::fprintf(stderr, "config error: %s\n", msg.c_str());
                return 2;
            }

        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "config error: cannot write '%s'\n", cfg.output_path.c_str());
            return 2;
        }
        out << "x,y,z,u\n";
        for (int i = 0; i < npts; ++i) {
            const auto& p = cfg.eval_points[i];
            out << fmt15(p.x) << ',' << fmt15(p.y) << ',' << fmt15(p.z) << ','
                << fmt15(u[i]) << '\n';
        }
        return out.good() ? 0 : 2;
    } catch (const solver_error& e) {
        std::fprintf(stderr, "solver error: %s (condition estimate %.3e)\n", e.what(),
                     e.cond_estimate);
        return 3;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    (void)problem;
}

// ---------------------------------------------------------------------------
// verify

struct Reporter {
    bool all_ok = true;
    void line(const std::string& name, double measured, double expected, double tol)
    {
        const bool ok = std::isfinite(measured) && std::fabs(measured - expected) <= tol;
        std::printf("%-34s measured=% .12e expected=% .12e tol=%.1e %s\n", name.c_str(),
                    measured, expected, tol, ok ? "PASS" : "FAIL");
        all_ok = all_ok && ok;
    }
};

// deterministic uniform doubles in [0,1)
struct Uniform {
    std::mt19937_64 rng;
    explicit Uniform(unsigned long long seed) : rng(seed) {}
    double operator()() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
};

void suite_specfun(Reporter& rep)
{
    // Gauss summation at z = 1 against the Gamma quotient
    Uniform u(20260825);
    double worst_gauss = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double a = 0.05 + 1.95 * u();
        const double b = 0.05 + 1.95 * u();
        const double s = 0.2 + 2.8 * u();
        const double c = a + b + s;
        const double lhs = gauss_2f1(a, b, c, 1.0);
        const double rhs = gamma_fn(c) * gamma_fn(s) / (gamma_fn(c - a) * gamma_fn(c - b));
        worst_gauss = std::max(worst_gauss, std::fabs(lhs - rhs) / std::fabs(rhs));
    }
    rep.line("specfun.gauss-summation", worst_gauss, 0.0, 1e-10);

    // Euler transformation self-consistency across the evaluation branches
    const double params[][3] = {
        {0.8, 0.3, 1.6}, {-0.8, 0.7, 1.4}, {1.75, 0.25, 0.5}, {0.55, 0.25, 0.5}, {1.2, 0.45, 1.1}};
    double worst_euler = 0.0;
    for (const auto& pr : params) {
        const double a = pr[0], b = pr[1], c = pr[2];
        for (int k = 0; k <= 60; ++k) {
            const double z = -5.0 + (0.9 + 5.0) * k / 60.0;
            const double lhs = gauss_2f1(a, b, c, z);
            const double rhs = std::pow(1.0 - z, c - a - b) * gauss_2f1(c - a, c - b, c, z);
            const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
            worst_euler = std::max(worst_euler, std::fabs(lhs - rhs) / scale);
        }
    }
    rep.line("specfun.euler-transformation", worst_euler, 0.0, 1e-9);

    rep.line("specfun.gamma-half", gamma_fn(0.5), std::sqrt(M_PI), 1e-12 * std::sqrt(M_PI));
    // reflection: Gamma(t) Gamma(1-t) = pi / sin(pi t) at t = 0.3
    const double refl = gamma_fn(0.3) * gamma_fn(0.7);
    rep.line("specfun.gamma-reflection", refl, M_PI / std::sin(0.3 * M_PI), 1e-12 * refl);
}

void suite_gauss_flux(Reporter& rep)
{
    const double alphas[] = {0.1, 0.25, 0.4};
    const ParamSurface hemi = make_hemisphere(1.0);
    const QuadratureGrid g = build_surface_grid(hemi, 32, 32);
    for (const double al : alphas) {
        const SingularityParams sp(al);
        Uniform u(777);
        double worst_int = 0.0, worst_ext = 0.0, worst_sur = 0.0;
        for (int k = 0; k < 10; ++k) {
            const double th = 0.15 + 1.2 * u(), ph = 2.0 * M_PI * u();
            const double ri = 0.15 + 0.55 * u();
            const HalfSpacePoint pin{ri * std::cos(th), ri * std::sin(th) * std::cos(ph),
                                     ri * std::sin(th) * std::sin(ph)};
            worst_int = std::max(worst_int,
                                 std::fabs(gauss_flux(KernelKind::Q1, g, pin, sp) - (-1.0)));
            const double re = 1.3 + 1.0 * u();
            const HalfSpacePoint pex{re * std::cos(th), re * std::sin(th) * std::cos(ph),
                                     re * std::sin(th) * std::sin(ph)};
            worst_ext = std::max(worst_ext, std::fabs(gauss_flux(KernelKind::Q1, g, pex, sp)));

            // surface value by averaging the two one-sided approaches
            const double dloc = std::max(g.ds_max * std::max(std::sin(th), 0.15), g.dt_max);
            auto mean_at = [&](double eps) {
                const HalfSpacePoint pi{(1.0 - eps) * std::cos(th),
                                        (1.0 - eps) * std::sin(th) * std::cos(ph),
                                        (1.0 - eps) * std::sin(th) * std::sin(ph)};
                const HalfSpacePoint pe{(1.0 + eps) * std::cos(th),
                                        (1.0 + eps) * std::sin(th) * std::cos(ph),
                                        (1.0 + eps) * std::sin(th) * std::sin(ph)};
                return 0.5 * (gauss_flux(KernelKind::Q1, g, pi, sp)
                              + gauss_flux(KernelKind::Q1, g, pe, sp));
            };
            const double m1 = mean_at(1.7 * dloc), m2 = mean_at(3.4 * dloc);
            worst_sur = std::max(worst_sur, std::fabs(2.0 * m1 - m2 - (-0.5)));
        }
        const std::string tag = "gauss-flux.a=" + fmt15(al);
        rep.line(tag + ".interior", worst_int, 0.0, 1e-3);
        rep.line(tag + ".exterior", worst_ext, 0.0, 1e-3);
        rep.line(tag + ".surface", worst_sur, 0.0, 5e-3);
    }
}

void suite_jumps(Reporter& rep)
{
    const double al = 0.3;
    const SingularityParams sp(al);
    const QuadratureGrid g = build_surface_grid(make_hemisphere(1.0), 192, 192);
    auto mu_f = [](double s, double t) {
        return 1.0 + 0.5 * std::sin(s) * std::sin(t) * std::sin(t) + 0.3 * std::cos(t);
    };
    std::vector<double> mu(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i)
        mu[i] = mu_f(g.nodes[i].s, g.nodes[i].t);

    const int npts = 20;
    const double mults[4] = {3.375, 2.25, 1.5, 1.0};
    std::vector<double> err_dl1(npts), err_dl2(npts), err_sl1(npts), err_sl2(npts);
    parallel_for(npts, [&](int i) {
        const double th = 0.3 + 1.0 * (i + 0.5) / npts;
        const double ph = 2.0 * M_PI * std::fmod(0.6180339887498949 * (i + 1), 1.0);
        const double n[3] = {std::cos(th), std::sin(th) * std::cos(ph),
                             std::sin(th) * std::sin(ph)};
        const double muP = mu_f(ph, th);
        const double dloc = std::max(g.ds_max * std::max(std::sin(th), 0.15), g.dt_max);
        Eigen::Matrix4d V;
        Eigen::Vector4d ddl1, ddl2, dsl1, dsl2;
        for (int r = 0; r < 4; ++r) {
            const double eps = 1.7 * dloc * mults[r];
            for (int cpow = 0; cpow < 4; ++cpow)
                V(r, cpow) = std::pow(eps, cpow);
            const HalfSpacePoint pin{(1 - eps) * n[0], (1 - eps) * n[1], (1 - eps) * n[2]};
            const HalfSpacePoint pex{(1 + eps) * n[0], (1 + eps) * n[1], (1 + eps) * n[2]};
            ddl1(r) = eval_double_layer_subtracted(KernelKind::Q1, mu, g, pin, true, muP, sp)
                      - eval_double_layer_subtracted(KernelKind::Q1, mu, g, pex, false, muP, sp);
            ddl2(r) = eval_double_layer_subtracted(KernelKind::Q2, mu, g, pin, true, muP, sp)
                      - eval_double_layer_subtracted(KernelKind::Q2, mu, g, pex, false, muP, sp);
            dsl1(r) = eval_single_layer_conormal(KernelKind::Q1, mu, g, pin, n, sp)
                      - eval_single_layer_conormal(KernelKind::Q1, mu, g, pex, n, sp);
            dsl2(r) = eval_single_layer_conormal(KernelKind::Q2, mu, g, pin, n, sp)
                      - eval_single_layer_conormal(KernelKind::Q2, mu, g, pex, n, sp);
        }
        const Eigen::PartialPivLU<Eigen::Matrix4d> lu(V);
        // inner-minus-outer double layer extrapolates to -mu, the single
        // layer conormal difference to +mu
        err_dl1[i] = std::fabs(lu.solve(ddl1)(0) + muP);
        err_dl2[i] = std::fabs(lu.solve(ddl2)(0) + muP);
        err_sl1[i] = std::fabs(lu.solve(dsl1)(0) - muP);
        err_sl2[i] = std::fabs(lu.solve(dsl2)(0) - muP);
    });
    auto vmax = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v)
            m = std::max(m, x);
        return m;
    };
    rep.line("jumps.double-layer.q1", vmax(err_dl1), 0.0, 1e-2);
    rep.line("jumps.double-layer.q2", vmax(err_dl2), 0.0, 1e-2);
    rep.line("jumps.single-layer-conormal.q1", vmax(err_sl1), 0.0, 1e-2);
    rep.line("jumps.single-layer-conormal.q2", vmax(err_sl2), 0.0, 1e-2);
}

void suite_eigen(Reporter& rep)
{
    const SingularityParams sp(0.25);
    const QuadratureGrid g = build_surface_grid(make_hemisphere(1.0), 24, 24);
    const int n = static_cast<int>(g.nodes.size());

    NystromSystem s1m = assemble(KernelKind::Q1, g, sp, -2.0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const double resid = (s1m.A * ones).lpNorm<Eigen::Infinity>();
    rep.line("eigen.q1.lambda=-2.null-vector", resid, 0.0, 5e-3);

    NystromSystem s1p = assemble(KernelKind::Q1, g, sp, 2.0);
    rep.line("eigen.q1.lambda=+2.condition", condition_estimate(s1p), 0.0, 1e6);
    NystromSystem s2p = assemble(KernelKind::Q2, g, sp, 2.0);
    rep.line("eigen.q2.lambda=+2.condition", condition_estimate(s2p), 0.0, 1e6);
    NystromSystem s2m = assemble(KernelKind::Q2, g, sp, -2.0);
    rep.line("eigen.q2.lambda=-2.condition", condition_estimate(s2m), 0.0, 1e6);
}

// quadrature of (1 + t^2 + s^2)^(-a-3/2) over [-T,T]^2 plus an analytic tail
double plane_identity_numeric(double al, double T)
{
    std::vector<double> pts, wts;
    {
        const double edges[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, T};
        std::vector<double> xg, wg;
        gauss_legendre(16, xg, wg);
        const int npan = static_cast<int>(sizeof(edges) / sizeof(edges[0])) - 1;
        for (int side = -1; side <= 1; side += 2)
            for (int p = 0; p < npan; ++p) {
                const double lo = edges[p], hi = edges[p + 1];
                for (size_t k = 0; k < xg.size(); ++k) {
                    pts.push_back(side * (0.5 * (hi - lo) * xg[k] + 0.5 * (hi + lo)));
                    wts.push_back(0.5 * (hi - lo) * wg[k]);
                }
            }
    }
    double sq = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        double row = 0.0;
        for (size_t j = 0; j < pts.size(); ++j)
            row += wts[j] * std::pow(1.0 + pts[i] * pts[i] + pts[j] * pts[j], -al - 1.5);
        sq += wts[i] * row;
    }
    // complement of the square = complement of the inscribed disk minus the
    // four corner lens regions (inside the square, outside the disk)
    const double c1 = 1.0 + 2.0 * al;
    const double tail_disk = 2.0 * M_PI * std::pow(1.0 + T * T, -0.5 - al) / c1;
    std::vector<double> xg, wg;
    gauss_legendre(64, xg, wg);
    double lens = 0.0;
    for (size_t k = 0; k < xg.size(); ++k) {
        const double th = 0.125 * M_PI * (xg[k] + 1.0);
        const double rr = T / std::cos(th);
        lens += 0.125 * M_PI * wg[k]
                * (std::pow(1.0 + T * T, -0.5 - al) - std::pow(1.0 + rr * rr, -0.5 - al)) / c1;
    }
    return sq + tail_disk - 8.0 * lens;
}

void suite_plane_identity(Reporter& rep)
{
    for (const double al : {0.1, 0.25, 0.4}) {
        const double expect = 2.0 * M_PI / (1.0 + 2.0 * al);
        rep.line("plane-identity.a=" + fmt15(al), plane_identity_numeric(al, 40.0), expect, 1e-6);
    }
}

int cmd_verify(const std::string& suite)
{
    Reporter rep;
    if (suite == "specfun")
        suite_specfun(rep);
    else if (suite == "gauss-flux")
        suite_gauss_flux(rep);
    else if (suite == "jumps")
        suite_jumps(rep);
    else if (suite == "eigen")
        suite_eigen(rep);
    else if (suite == "plane-identity")
        suite_plane_identity(rep);
    else {
        std::fprintf(stderr,
                     "unknown suite '%s' (available: specfun, gauss-flux, jumps, eigen,"
                     " plane-identity)\n",
                     suite.c_str());
        return 2;
    }
    return rep.all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// convergence

int cmd_convergence(const std::string& cfg_path, int levels)
{
    if (levels < 2) {
        std::fprintf(stderr, "config error: convergence needs at least 2 levels\n");
        return 2;
    }
    RunConfig cfg;
    try {
        cfg = parse_config(cfg_path);
    } catch (const domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    try {
        const SingularityParams sp(cfg.alpha);
        const ParamSurface surface = make_hemisphere(cfg.radius);
        const BuiltinData data = make_builtin_data(cfg.data_name, cfg.kind, surface, sp);

        double exact_scale = 0.0;
        for (const auto& p : cfg.eval_points)
            exact_scale = std::max(exact_scale, std::fabs(data.exact(p)));
        const double denom = std::max(exact_scale, 1e-15);

        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "config error: cannot write '%s'\n", cfg.output_path.c_str());
            return 2;
        }
        out << "level,Ns,Nt,max_rel_err,runtime_s\n";
        for (int level = 1; level <= levels; ++level) {
            const int N = 8 * (level + 1);
            RunConfig c = cfg;
            c.Ns = c.Nt = N;
            c.Nr = (3 * N) / 4;
            c.Nphi = 2 * N;
            const double t0 = wall_seconds();
            const BvpProblem prob = make_problem(c);
            const SolutionField sol = run_solver(prob);
            double max_rel = 0.0;
            for (const auto& p : cfg.eval_points)
                max_rel = std::max(max_rel,
                                   std::fabs(evaluate_solution(sol, p) - data.exact(p)) / denom);
            const double dt = wall_seconds() - t0;
            out << level << ',' << N << ',' << N << ',' << fmt15(max_rel) << ','
                << fmt15(dt) << '\n';
        }
        return out.good() ? 0 : 2;
    } catch (const solver_error& e) {
        std::fprintf(stderr, "solver error: %s (condition estimate %.3e)\n", e.what(),
                     e.cond_estimate);
        return 3;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"boundary-integral solver for u_xx + u_yy + u_zz + (2a/x) u_x = 0"
                 " on half-space domains"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "solve a configured problem and tabulate u");
    std::string solve_cfg;
    solve->add_option("--config", solve_cfg, "configuration file")->required();

    auto* verify = app.add_subcommand("verify", "run a named identity-verification suite");
    std::string suite;
    verify->add_option("--suite", suite,
                       "specfun | gauss-flux | jumps | eigen | plane-identity")
        ->required();

    auto* conv = app.add_subcommand("convergence", "grid-refinement error table");
    std::string conv_cfg;
    int levels = 0;
    conv->add_option("--config", conv_cfg, "configuration file")->required();
    conv->add_option("--levels", levels, "number of refinement levels (>= 2)")->required();

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed())
        return cmd_solve(solve_cfg);
    if (verify->parsed())
        return cmd_verify(suite);
    return cmd_convergence(conv_cfg, levels);
}
