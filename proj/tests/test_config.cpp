#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sbie/config.hpp"
#include "sbie/errors.hpp"
#include "sbie/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef SBIE_CLI_PATH
#error "SBIE_CLI_PATH must point at the command line binary"
#endif

using namespace sbie;

namespace {

void write_file(const std::string& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    out << body;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(SBIE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    if (st == -1)
        return -1;
    return WEXITSTATUS(st);
}

const char* GOOD_CFG = R"(# manufactured second-kind problem
alpha = 0.3
domain.radius = 1.0
grid.Ns = 24
grid.Nt = 24
grid.Nr = 20
grid.Nphi = 40
problem.kind = dirichlet
problem.data = q2-exterior(2.2, 0.3, -0.4)
evaluation.point = 0.35 0.1 -0.2
evaluation.point = 0.55 -0.3 0.2
evaluation.point = 0.15 0.1 0.05
output.path = cfgtest_out.csv
)";

std::vector<std::vector<double>> parse_csv(const std::string& body, std::string& header)
{
    std::istringstream in(body);
    std::string line;
    std::getline(in, line);
    header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("config parsing round trip")
{
    write_file("cfgtest_good.cfg", GOOD_CFG);
    const RunConfig cfg = parse_config("cfgtest_good.cfg");
    CHECK(cfg.alpha == doctest::Approx(0.3));
    CHECK(cfg.radius == doctest::Approx(1.0));
    CHECK(cfg.Ns == 24);
    CHECK(cfg.Nt == 24);
    CHECK(cfg.Nr == 20);
    CHECK(cfg.Nphi == 40);
    CHECK(cfg.kind == ProblemKind::Dirichlet);
    CHECK(cfg.data_name == "q2-exterior(2.2, 0.3, -0.4)");
    CHECK(cfg.eval_points.size() == 3);
    CHECK(cfg.eval_points[1].y == doctest::Approx(-0.3));
    CHECK(cfg.output_path == "cfgtest_out.csv");
}

TEST_CASE("config lattice expansion")
{
    write_file("cfgtest_lattice.cfg",
               "alpha = 0.25\n"
               "problem.kind = holmgren\n"
               "problem.data = zero\n"
               "evaluation.lattice = 3 0.8\n");
    const RunConfig cfg = parse_config("cfgtest_lattice.cfg");
    CHECK(cfg.eval_points.size() == 27);
    for (const auto& p : cfg.eval_points) {
        CHECK(p.x > 0.0);
        CHECK(std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z) < 1.0);
    }
}

TEST_CASE("config rejections name the problem")
{
    write_file("cfgtest_bad1.cfg", "alpha = 0.6\nproblem.data = zero\nevaluation.point = 0.3 0 0\n");
    CHECK_THROWS_WITH_AS(parse_config("cfgtest_bad1.cfg"),
                         doctest::Contains("alpha"), domain_error);

    write_file("cfgtest_bad2.cfg", "alpha = 0.25\nnot a key value line\n");
    CHECK_THROWS_AS(parse_config("cfgtest_bad2.cfg"), domain_error);

    write_file("cfgtest_bad3.cfg", "alpha = 0.25\nmystery.key = 1\nevaluation.point = 0.3 0 0\n");
    CHECK_THROWS_WITH_AS(parse_config("cfgtest_bad3.cfg"),
                         doctest::Contains("mystery.key"), domain_error);

    write_file("cfgtest_bad4.cfg", "alpha = 0.25\nevaluation.point = 1.4 0 0\n");
    CHECK_THROWS_WITH_AS(parse_config("cfgtest_bad4.cfg"),
                         doctest::Contains("interior"), domain_error);

    write_file("cfgtest_bad5.cfg", "alpha = 0.25\ngrid.Ns = 2\nevaluation.point = 0.3 0 0\n");
    CHECK_THROWS_AS(parse_config("cfgtest_bad5.cfg"), domain_error);

    write_file("cfgtest_bad6.cfg", "alpha = 0.25\n"); // no evaluation points
    CHECK_THROWS_AS(parse_config("cfgtest_bad6.cfg"), domain_error);

    CHECK_THROWS_AS(parse_config("cfgtest_missing_file.cfg"), domain_error);
}

TEST_CASE("builtin data sets carry their exact solutions")
{
    const SingularityParams sp(0.3);
    const ParamSurface hemi = make_hemisphere(1.0);

    const BuiltinData zero = make_builtin_data("zero", ProblemKind::Dirichlet, hemi, sp);
    CHECK(zero.phi(1.0, 0.5) == 0.0);
    CHECK(zero.exact(HalfSpacePoint{0.3, 0.1, 0.0}) == 0.0);

    const BuiltinData one_h = make_builtin_data("one", ProblemKind::Holmgren, hemi, sp);
    CHECK(one_h.phi(1.0, 0.5) == 1.0);
    CHECK(one_h.plane(0.2, 0.1) == 0.0); // weighted derivative of a constant
    const BuiltinData one_d = make_builtin_data("one", ProblemKind::Dirichlet, hemi, sp);
    CHECK(one_d.plane(0.2, 0.1) == 1.0);

    const BuiltinData xp = make_builtin_data("x-power", ProblemKind::Dirichlet, hemi, sp);
    const HalfSpacePoint q = hemi.eval(1.0, 0.7);
    CHECK(xp.phi(1.0, 0.7) == doctest::Approx(std::pow(q.x, 0.4)).epsilon(1e-14));
    CHECK(xp.plane(0.3, 0.0) == 0.0);
    const BuiltinData xph = make_builtin_data("x-power", ProblemKind::Holmgren, hemi, sp);
    CHECK(xph.plane(0.3, 0.0) == doctest::Approx(0.4));

    const HalfSpacePoint src{2.2, 0.3, -0.4};
    const BuiltinData m1 = make_builtin_data("q1-exterior(2.2,0.3,-0.4)",
                                             ProblemKind::Dirichlet, hemi, sp);
    CHECK(m1.phi(1.0, 0.7) == doctest::Approx(q1(q, src, sp)).epsilon(1e-14));
    CHECK(m1.plane(0.2, 0.1)
          == doctest::Approx(q1(HalfSpacePoint{0.0, 0.2, 0.1}, src, sp)).epsilon(1e-14));
    CHECK(m1.exact(HalfSpacePoint{0.4, 0.0, 0.1})
          == doctest::Approx(q1(HalfSpacePoint{0.4, 0.0, 0.1}, src, sp)).epsilon(1e-14));

    const BuiltinData m2 = make_builtin_data("q2-exterior(2.2, 0.3, -0.4)",
                                             ProblemKind::Dirichlet, hemi, sp);
    CHECK(m2.plane(0.5, -0.2) == 0.0);
    const BuiltinData m2h = make_builtin_data("q2-exterior(2.2, 0.3, -0.4)",
                                              ProblemKind::Holmgren, hemi, sp);
    CHECK(m2h.plane(0.5, -0.2) > 0.0);

    CHECK_THROWS_AS(make_builtin_data("nonsense", ProblemKind::Dirichlet, hemi, sp),
                    domain_error);
    // interior source rejected
    CHECK_THROWS_AS(make_builtin_data("q1-exterior(0.5, 0, 0)", ProblemKind::Dirichlet,
                                      hemi, sp),
                    domain_error);
    // malformed source
    CHECK_THROWS_AS(make_builtin_data("q1-exterior(1, 2)", ProblemKind::Dirichlet, hemi, sp),
                    domain_error);
}

TEST_CASE("make_problem wires the configuration through")
{
    write_file("cfgtest_good.cfg", GOOD_CFG);
    const RunConfig cfg = parse_config("cfgtest_good.cfg");
    const BvpProblem prob = make_problem(cfg);
    CHECK(prob.Ns == 24);
    CHECK(prob.kind == ProblemKind::Dirichlet);
    CHECK(prob.region_radius == doctest::Approx(1.0));
    CHECK(prob.phi);
    CHECK(prob.plane_data);
    CHECK(prob.plane_data(0.3, 0.2) == 0.0);
}

TEST_CASE("cli solve produces an accurate, bit-stable table")
{
    write_file("cfgtest_good.cfg", GOOD_CFG);
    CHECK(run_cli("solve --config cfgtest_good.cfg") == 0);
    const std::string body = read_file("cfgtest_out.csv");
    std::string header;
    const auto rows = parse_csv(body, header);
    CHECK(header == "x,y,z,u");
    REQUIRE(rows.size() == 3);

    const SingularityParams sp(0.3);
    const HalfSpacePoint src{2.2, 0.3, -0.4};
    double scale = 0.0;
    for (const auto& r : rows)
        scale = std::max(scale, std::fabs(q2(HalfSpacePoint{r[0], r[1], r[2]}, src, sp)));
    for (const auto& r : rows) {
        REQUIRE(r.size() == 4);
        const double want = q2(HalfSpacePoint{r[0], r[1], r[2]}, src, sp);
        CHECK(std::fabs(r[3] - want) <= 1e-3 * scale);
    }

    // identical run, identical bytes
    CHECK(run_cli("solve --config cfgtest_good.cfg") == 0);
    CHECK(read_file("cfgtest_out.csv") == body);
}

TEST_CASE("cli solve on homogeneous data returns zeros")
{
    write_file("cfgtest_zero.cfg",
               "alpha = 0.25\n"
               "grid.Ns = 16\ngrid.Nt = 16\ngrid.Nr = 12\ngrid.Nphi = 24\n"
               "problem.kind = holmgren\n"
               "problem.data = zero\n"
               "evaluation.point = 0.3 0.1 -0.2\n"
               "evaluation.point = 0.5 0.2 0.1\n"
               "output.path = cfgtest_zero.csv\n");
    CHECK(run_cli("solve --config cfgtest_zero.cfg") == 0);
    std::string header;
    const auto rows = parse_csv(read_file("cfgtest_zero.csv"), header);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows)
        CHECK(std::fabs(r[3]) <= 1e-6);
}

TEST_CASE("cli exit codes follow the documented mapping")
{
    write_file("cfgtest_badalpha.cfg",
               "alpha = 0.6\nproblem.data = zero\nevaluation.point = 0.3 0 0\n");
    CHECK(run_cli("solve --config cfgtest_badalpha.cfg") == 2);
    CHECK(run_cli("solve --config cfgtest_does_not_exist.cfg") == 2);
    CHECK(run_cli("verify --suite nonsense") == 2);
    write_file("cfgtest_conv.cfg",
               "alpha = 0.3\n"
               "problem.kind = dirichlet\n"
               "problem.data = q2-exterior(2.2, 0.3, -0.4)\n"
               "evaluation.point = 0.35 0.1 -0.2\n"
               "evaluation.point = 0.15 0.1 0.05\n"
               "output.path = cfgtest_conv.csv\n");
    CHECK(run_cli("convergence --config cfgtest_conv.cfg --levels 1") == 2);
}

TEST_CASE("cli verify specfun suite passes")
{
    CHECK(run_cli("verify --suite specfun") == 0);
}

TEST_CASE("cli convergence table shrinks under refinement")
{
    write_file("cfgtest_conv.cfg",
               "alpha = 0.3\n"
               "problem.kind = dirichlet\n"
               "problem.data = q2-exterior(2.2, 0.3, -0.4)\n"
               "evaluation.point = 0.35 0.1 -0.2\n"
               "evaluation.point = 0.55 -0.3 0.2\n"
               "evaluation.point = 0.15 0.1 0.05\n"
               "output.path = cfgtest_conv.csv\n");
    CHECK(run_cli("convergence --config cfgtest_conv.cfg --levels 3") == 0);
    std::string header;
    const auto rows = parse_csv(read_file("cfgtest_conv.csv"), header);
    CHECK(header == "level,Ns,Nt,max_rel_err,runtime_s");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][1] == 16);
    CHECK(rows[1][1] == 24);
    CHECK(rows[2][1] == 32);
    // monotone nonincreasing from the second level onward
    CHECK(rows[2][3] <= rows[1][3] * (1.0 + 1e-12));
    for (const auto& r : rows)
        CHECK(r[3] <= 0.05);
}
