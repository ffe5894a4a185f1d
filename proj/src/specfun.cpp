#include "sbie/specfun.hpp"
#include "sbie/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace sbie {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// core approximation on [1,2); everything else reached by recurrence
double lanczos_core(double t)
{
    const double z = t - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        acc += kLanczos[i] / (z + i);
    const double w = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(w, z + 0.5) * std::exp(-w) * acc;
}

bool is_nonpos_int(double x, double tol = 1e-12)
{
    return x < 0.5 && std::fabs(x - std::round(x)) < tol;
}

// truncated series: stop when |term| < 1e-16 |sum| three times in a row
double series_2f1(double a, double b, double c, double z, int cap = 10000)
{
    double term = 1.0, sum = 1.0;
    int small = 0;
    for (int k = 0; k < cap; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::fabs(term) < 1e-16 * std::fabs(sum)) {
            if (++small >= 3)
                break;
        } else {
            small = 0;
        }
    }
    return sum;
}

} // namespace

double gamma_fn(double t)
{
    if (t <= 0.5 && t == std::floor(t))
        throw domain_error("gamma_fn: pole at nonpositive integer argument");
    double prod = 1.0;
    if (t >= 2.0) {
        while (t >= 2.0) {
            t -= 1.0;
            prod *= t;
        }
        return prod * lanczos_core(t);
    }
    while (t < 1.0) {
        prod *= t;
        t += 1.0;
    }
    return lanczos_core(t) / prod;
}

double pochhammer(double t, int n)
{
    if (n < 0)
        throw domain_error("pochhammer: negative order");
    double prod = 1.0;
    for (int k = 0; k < n; ++k)
        prod *= t + k;
    return prod;
}

Hyp2F1::Hyp2F1(double a, double b, double c) : a_(a), b_(b), c_(c)
{
    if (is_nonpos_int(c))
        throw domain_error("gauss_2f1: c is a nonpositive integer");

    terminating_ = is_nonpos_int(a) || is_nonpos_int(b);
    nterm_ = 0;
    if (terminating_) {
        double m = 0.0;
        if (is_nonpos_int(a))
            m = -a;
        if (is_nonpos_int(b) && (!is_nonpos_int(a) || -b < m))
            m = -b;
        nterm_ = static_cast<int>(std::lround(m)) + 1;
    }

    auto connection = [](double a2, double b2, double c2, double& s, double& A, double& B) {
        s = c2 - a2 - b2;
        if (std::fabs(s - std::round(s)) < 1e-6)
            return false;
        if (is_nonpos_int(c2 - a2) || is_nonpos_int(c2 - b2) || is_nonpos_int(a2) || is_nonpos_int(b2))
            return false;
        A = gamma_fn(c2) * gamma_fn(s) / (gamma_fn(c2 - a2) * gamma_fn(c2 - b2));
        B = gamma_fn(c2) * gamma_fn(-s) / (gamma_fn(a2) * gamma_fn(b2));
        return true;
    };

    s_pos_ = A_pos_ = B_pos_ = 0.0;
    s_neg_ = A_neg_ = B_neg_ = 0.0;
    conn_pos_ok_ = !terminating_ && connection(a, b, c, s_pos_, A_pos_, B_pos_);
    conn_neg_ok_ = !terminating_ && connection(c - a, b, c, s_neg_, A_neg_, B_neg_);
}

double Hyp2F1::eval_pos(double z, double u) const
{
    if (z <= 0.5 || !conn_pos_ok_)
        return series_2f1(a_, b_, c_, z);
    return A_pos_ * series_2f1(a_, b_, 1.0 - s_pos_, u)
         + B_pos_ * std::pow(u, s_pos_) * series_2f1(c_ - a_, c_ - b_, 1.0 + s_pos_, u);
}

double Hyp2F1::eval_neg(double z) const
{
    // Pfaff transformation onto w = z/(z-1) in (0,1)
    const double w = z / (z - 1.0);
    const double pref = std::pow(1.0 - z, -b_);
    if (w <= 0.5)
        return pref * series_2f1(c_ - a_, b_, c_, w);
    if (!conn_neg_ok_)
        return pref * series_2f1(c_ - a_, b_, c_, w);
    const double u = 1.0 / (1.0 - z); // 1 - w without cancellation
    return pref * (A_neg_ * series_2f1(c_ - a_, b_, 1.0 - s_neg_, u)
                 + B_neg_ * std::pow(u, s_neg_) * series_2f1(a_, c_ - b_, 1.0 + s_neg_, u));
}

double Hyp2F1::operator()(double z) const
{
    if (z > 1.0)
        throw domain_error("gauss_2f1: argument z > 1 unsupported");
    if (terminating_)
        return series_2f1(a_, b_, c_, z, nterm_);
    if (z == 1.0) {
        const double s = c_ - a_ - b_;
        if (s <= 0.0)
            throw domain_error("gauss_2f1: divergent at z = 1 (c-a-b <= 0)");
        return gamma_fn(c_) * gamma_fn(s) / (gamma_fn(c_ - a_) * gamma_fn(c_ - b_));
    }
    if (z < 0.0)
        return eval_neg(z);
    return eval_pos(z, 1.0 - z);
}

double gauss_2f1(double a, double b, double c, double z)
{
    return Hyp2F1(a, b, c)(z);
}

} // namespace sbie
