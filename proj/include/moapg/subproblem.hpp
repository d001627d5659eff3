#pragma once

#include "moapg/problem.hpp"
#include "moapg/prox.hpp"

namespace moapg {

struct SubproblemInput {
    Vec x;     // anchor, supplies the F_i(x) offsets
    Vec y;     // extrapolated base point
    double s;  // step, quadratic coefficient 1/(2s)
};

struct SubproblemSolution {
    Vec z;                        // p_s(x, y)
    double theta = 0.0;           // primal optimal value
    Vec lambda;                   // dual weights on the simplex
    double gap = 0.0;             // primal - dual value
    std::vector<int> active_set;  // indices attaining the inner max, ties included
    bool converged = true;
    int inner_iters = 0;
};

// Euclidean projection onto the standard simplex (sorted-threshold method).
Vec simplex_project(const Vec& v);

struct DualEval {
    Vec z;      // exact inner minimizer for this lambda
    double d;   // dual value
    Vec psi;    // per-objective linearized terms at z (a supergradient of d)
};

DualEval dual_value(const Problem& problem, const SubproblemInput& input, const Vec& lambda);

// max_i [<grad f_i(y), z-y> + g_i(z) + f_i(y) - F_i(x)] + ||z-y||^2/(2s);
// +inf when z violates a box indicator.
double primal_value(const Problem& problem, const SubproblemInput& input, const Vec& z);

SubproblemSolution solve_subproblem(const Problem& problem, const SubproblemInput& input,
                                    double tol = 1e-8, int max_inner = 5000);

struct ThetaBoundsReport {
    bool upper_ok = false;      // theta <= max_i [F_i(y) - F_i(x)] + tol
    bool lower_checked = false; // only when s <= 1/L(f)
    bool lower_ok = false;      // theta >= max_i [F_i(z) - F_i(x)] - tol
    double upper_margin = 0.0;
    double lower_margin = 0.0;
};

ThetaBoundsReport theta_bounds_check(const Problem& problem, const SubproblemInput& input,
                                     const SubproblemSolution& sol, double tol = 1e-8);

// Sup-norm of the stationarity residual, with the subgradient of the combined
// nonsmooth term chosen to minimize the residual componentwise.
double kkt_residual(const Problem& problem, const SubproblemInput& input,
                    const SubproblemSolution& sol);

}  // namespace moapg
