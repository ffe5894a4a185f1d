#include "sbie/config.hpp"
#include "sbie/errors.hpp"
#include "sbie/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sbie {

namespace {

std::string trim(const std::string& s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& v, const std::string& key)
{
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty())
            return d;
    } catch (const std::exception&) {
    }
    throw domain_error("config: key '" + key + "' needs a number, got '" + v + "'");
}

int parse_int(const std::string& v, const std::string& key)
{
    const double d = parse_double(v, key);
    const int i = static_cast<int>(std::lround(d));
    if (std::fabs(d - i) > 0.0)
        throw domain_error("config: key '" + key + "' needs an integer, got '" + v + "'");
    return i;
}

std::vector<double> parse_numbers(const std::string& v, const std::string& key)
{
    std::istringstream in(v);
    std::vector<double> out;
    double d;
    while (in >> d)
        out.push_back(d);
    std::string rest;
    if (in.clear(), in >> rest)
        throw domain_error("config: key '" + key + "' has a non-numeric token '" + rest + "'");
    return out;
}

void add_lattice(RunConfig& cfg, const std::vector<double>& args)
{
    if (args.size() != 2)
        throw domain_error("config: evaluation.lattice needs 'n rmax'");
    const int n = static_cast<int>(std::lround(args[0]));
    const double rmax = args[1];
    if (n < 1 || std::fabs(args[0] - n) > 0.0)
        throw domain_error("config: evaluation.lattice size must be a positive integer");
    if (rmax <= 0.0 || rmax > 0.95)
        throw domain_error("config: evaluation.lattice rmax must lie in (0, 0.95]");
    for (int i = 0; i < n; ++i) {
        const double r = cfg.radius * rmax * (i + 0.5) / n;
        for (int j = 0; j < n; ++j) {
            const double t = 0.5 * M_PI * (j + 0.5) / n;
            for (int k = 0; k < n; ++k) {
                const double s = 2.0 * M_PI * k / n;
                cfg.eval_points.push_back(HalfSpacePoint{
                    r * std::cos(t), r * std::sin(t) * std::cos(s), r * std::sin(t) * std::sin(s)});
            }
        }
    }
}

} // namespace

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw domain_error("config: cannot open '" + path + "'");

    RunConfig cfg;
    std::vector<std::pair<std::string, std::string>> lattice_specs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw domain_error("config: line " + std::to_string(lineno)
                               + " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "alpha")
            cfg.alpha = parse_double(val, key);
        else if (key == "domain.radius")
            cfg.radius = parse_double(val, key);
        else if (key == "grid.Ns")
            cfg.Ns = parse_int(val, key);
        else if (key == "grid.Nt")
            cfg.Nt = parse_int(val, key);
        else if (key == "grid.Nr")
            cfg.Nr = parse_int(val, key);
        else if (key == "grid.Nphi")
            cfg.Nphi = parse_int(val, key);
        else if (key == "problem.kind") {
            if (val == "dirichlet")
                cfg.kind = ProblemKind::Dirichlet;
            else if (val == "holmgren")
                cfg.kind = ProblemKind::Holmgren;
            else
                throw domain_error("config: problem.kind must be dirichlet or holmgren, got '"
                                   + val + "'");
        } else if (key == "problem.data")
            cfg.data_name = val;
        else if (key == "evaluation.point") {
            const auto nums = parse_numbers(val, key);
            if (nums.size() != 3)
                throw domain_error("config: evaluation.point needs three coordinates");
            cfg.eval_points.push_back(HalfSpacePoint{nums[0], nums[1], nums[2]});
        } else if (key == "evaluation.lattice")
            lattice_specs.emplace_back(key, val);
        else if (key == "output.path")
            cfg.output_path = val;
        else
            throw domain_error("config: unknown key '" + key + "' on line "
                               + std::to_string(lineno));
    }

    // validation; lattices are expanded after radius is known
    if (!(cfg.alpha > 0.0 && 2.0 * cfg.alpha < 1.0))
        throw domain_error("config: require 0 < 2*alpha < 1, got alpha = "
                           + std::to_string(cfg.alpha));
    if (cfg.radius <= 0.0)
        throw domain_error("config: domain.radius must be positive");
    if (cfg.Ns < 4 || cfg.Nt < 4 || cfg.Nr < 4 || cfg.Nphi < 4)
        throw domain_error("config: grid sizes must be >= 4");
    for (const auto& [key, val] : lattice_specs)
        add_lattice(cfg, parse_numbers(val, key));
    if (cfg.eval_points.empty())
        throw domain_error("config: no evaluation points given");
    for (const auto& p : cfg.eval_points) {
        const double R = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        if (p.x <= 0.0 || R >= cfg.radius)
            throw domain_error("config: evaluation point (" + std::to_string(p.x) + ", "
                               + std::to_string(p.y) + ", " + std::to_string(p.z)
                               + ") is not strictly interior");
    }
    if (cfg.output_path.empty())
        throw domain_error("config: output.path must not be empty");
    return cfg;
}

namespace {

// "q1-exterior(x0,y0,z0)" -> source point
bool parse_source(const std::string& name, const std::string& prefix, HalfSpacePoint& src)
{
    if (name.compare(0, prefix.size(), prefix) != 0)
        return false;
    std::string rest = trim(name.substr(prefix.size()));
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
        throw domain_error("config: malformed source in '" + name + "'");
    rest = rest.substr(1, rest.size() - 2);
    for (auto& ch : rest)
        if (ch == ',')
            ch = ' ';
    std::istringstream in(rest);
    if (!(in >> src.x >> src.y >> src.z))
        throw domain_error("config: source in '" + name + "' needs three coordinates");
    std::string extra;
    if (in >> extra)
        throw domain_error("config: trailing tokens in '" + name + "'");
    return true;
}

// the source (and its mirror image in x = 0) must stay outside the closed
// domain so that the manufactured solution is regular inside it
void validate_exterior_source(const ParamSurface& surface, const HalfSpacePoint& src)
{
    if (src.x <= 0.0)
        throw domain_error("config: manufactured source must have x > 0");
    const double R = std::sqrt(src.x * src.x + src.y * src.y + src.z * src.z);
    double t = std::acos(std::clamp(src.x / R, -1.0, 1.0));
    double s = std::atan2(src.z, src.y);
    if (s < surface.s1)
        s += 2.0 * M_PI;
    s = std::clamp(s, surface.s1, surface.s2);
    t = std::clamp(t, surface.t1, surface.t2);
    const HalfSpacePoint q = surface.eval(s, t);
    const double Rs = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    if (R <= Rs)
        throw domain_error("config: manufactured source must lie outside the domain");
}

} // namespace

BuiltinData make_builtin_data(const std::string& name, ProblemKind kind,
                              const ParamSurface& surface, const SingularityParams& sp)
{
    BuiltinData d;
    const auto eval = surface.eval;
    if (!eval)
        throw domain_error("make_builtin_data: surface has no evaluator");

    if (name == "zero") {
        d.phi = [](double, double) { return 0.0; };
        d.plane = [](double, double) { return 0.0; };
        d.exact = [](const HalfSpacePoint&) { return 0.0; };
        return d;
    }
    if (name == "one") {
        d.phi = [](double, double) { return 1.0; };
        // u = 1 has zero weighted x-derivative, so the Holmgren datum is 0
        const double pv = kind == ProblemKind::Dirichlet ? 1.0 : 0.0;
        d.plane = [pv](double, double) { return pv; };
        d.exact = [](const HalfSpacePoint&) { return 1.0; };
        return d;
    }
    if (name == "x-power") {
        const double beta = 1.0 - 2.0 * sp.alpha;
        d.phi = [eval, beta](double s, double t) { return std::pow(eval(s, t).x, beta); };
        // trace and weighted flux: x^{1-2a} vanishes on the plane and has
        // x^{2a} d/dx = 1-2a there
        const double pv = kind == ProblemKind::Dirichlet ? 0.0 : beta;
        d.plane = [pv](double, double) { return pv; };
        d.exact = [beta](const HalfSpacePoint& p) { return std::pow(p.x, beta); };
        return d;
    }

    HalfSpacePoint src;
    if (parse_source(name, "q1-exterior", src)) {
        validate_exterior_source(surface, src);
        d.phi = [eval, src, sp](double s, double t) { return q1(eval(s, t), src, sp); };
        // x^{2a} dq1/dx vanishes on the plane; the trace q1(0,y,z) does not
        if (kind == ProblemKind::Holmgren) {
            d.plane = [](double, double) { return 0.0; };
        } else {
            d.plane = [src, sp](double y, double z) {
                return q1(HalfSpacePoint{0.0, y, z}, src, sp);
            };
        }
        d.exact = [src, sp](const HalfSpacePoint& p) { return q1(p, src, sp); };
        return d;
    }
    if (parse_source(name, "q2-exterior", src)) {
        validate_exterior_source(surface, src);
        d.phi = [eval, src, sp](double s, double t) { return q2(eval(s, t), src, sp); };
        if (kind == ProblemKind::Dirichlet) {
            d.plane = [](double, double) { return 0.0; }; // q2 vanishes on the plane
        } else {
            // nu1 = lim x^{2a} dq2/dx = (1-2a)/2pi x0^{1-2a} [x0^2 + dist^2]^{a-3/2}
            const double al = sp.alpha;
            d.plane = [src, al](double y, double z) {
                const double d2 = src.x * src.x + (y - src.y) * (y - src.y)
                                  + (z - src.z) * (z - src.z);
                return (1.0 - 2.0 * al) / (2.0 * M_PI) * std::pow(src.x, 1.0 - 2.0 * al)
                       * std::pow(d2, al - 1.5);
            };
        }
        d.exact = [src, sp](const HalfSpacePoint& p) { return q2(p, src, sp); };
        return d;
    }

    throw domain_error("config: unknown problem.data '" + name
                       + "' (builtins: zero, one, q1-exterior(x0,y0,z0),"
                         " q2-exterior(x0,y0,z0), x-power)");
}

BvpProblem make_problem(const RunConfig& cfg)
{
    const SingularityParams sp(cfg.alpha);
    BvpProblem prob(sp);
    prob.surface = make_hemisphere(cfg.radius);
    prob.Ns = cfg.Ns;
    prob.Nt = cfg.Nt;
    prob.region_radius = cfg.radius;
    prob.Nr = cfg.Nr;
    prob.Nphi = cfg.Nphi;
    prob.kind = cfg.kind;
    const BuiltinData data = make_builtin_data(cfg.data_name, cfg.kind, prob.surface, sp);
    prob.phi = data.phi;
    prob.plane_data = data.plane;
    return prob;
}

} // namespace sbie
