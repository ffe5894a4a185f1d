#pragma once

// Real-valued Gamma, Pochhammer and Gauss hypergeometric 2F1 for arguments
// z <= 1. Everything is plain double precision; no external dependencies.

namespace sbie {

// Gamma function for real t, t not a nonpositive integer.
// Relative error <= 1e-12 for |t| <= 50.
double gamma_fn(double t);

// Rising factorial (t)_n = t (t+1) ... (t+n-1), exact product, (t)_0 = 1.
double pochhammer(double t, int n);

// Gauss hypergeometric F(a,b;c;z) for z <= 1.
// c must not be a nonpositive integer; z = 1 requires c-a-b > 0.
// Relative error <= 1e-10 over the supported domain.
double gauss_2f1(double a, double b, double c, double z);

// Fixed-parameter evaluator. Caches the Gamma connection constants of the
// linear transformations so that repeated evaluations (kernel hot paths)
// skip the per-call Gamma work. Immutable after construction, safe to share
// across threads.
class Hyp2F1 {
public:
    Hyp2F1(double a, double b, double c);
    double operator()(double z) const;

private:
    double a_, b_, c_;
    bool terminating_;
    int nterm_;
    // connection constants for z in (0.5,1): F about 1-z
    bool conn_pos_ok_;
    double s_pos_, A_pos_, B_pos_;
    // Pfaff image parameters (c-a, b, c) for z < 0 and their connection constants
    bool conn_neg_ok_;
    double s_neg_, A_neg_, B_neg_;

    double eval_pos(double z, double u) const; // z in [0,1), u = 1-z exact
    double eval_neg(double z) const;           // z < 0
};

} // namespace sbie
