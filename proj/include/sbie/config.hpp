#pragma once

// Run configuration for the command line driver: a flat key-value file
// (`section.key = value`, one per line, '#' comments), plus the builtin
// manufactured boundary data sets used for self-contained verification.

#include "sbie/bvp.hpp"
#include "sbie/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sbie {

struct RunConfig {
    double alpha = 0.25;              // alpha
    double radius = 1.0;              // domain.radius (hemisphere)
    int Ns = 32, Nt = 32;             // grid.Ns, grid.Nt (surface)
    int Nr = 24, Nphi = 48;           // grid.Nr, grid.Nphi (plane disk)
    ProblemKind kind = ProblemKind::Dirichlet; // problem.kind
    std::string data_name = "zero";   // problem.data
    std::vector<HalfSpacePoint> eval_points;   // evaluation.point / evaluation.lattice
    std::string output_path = "solution.csv";  // output.path
};

// Throws domain_error naming the offending line or the violated bound.
RunConfig parse_config(const std::string& path);

// Builtin data sets; every builtin corresponds to a known exact solution.
//   zero                      u* = 0
//   one                       u* = 1
//   q1-exterior(x0,y0,z0)     u* = q1(p; source), zero plane flux
//   q2-exterior(x0,y0,z0)     u* = q2(p; source), zero plane trace
//   x-power                   u* = x^{1-2a}, zero plane trace
struct BuiltinData {
    std::function<double(double s, double t)> phi;   // surface data on Gamma
    std::function<double(double y, double z)> plane; // tau1 or nu1, per problem kind
    std::function<double(const HalfSpacePoint&)> exact;
};

BuiltinData make_builtin_data(const std::string& name, ProblemKind kind,
                              const ParamSurface& surface, const SingularityParams& sp);

// Hemisphere problem assembled from a parsed configuration.
BvpProblem make_problem(const RunConfig& cfg);

} // namespace sbie
