#include "moapg/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace moapg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared per-solve data: gradients and values at y, offsets at x.
struct Context {
    const Problem* problem;
    const SubproblemInput* input;
    std::vector<Vec> grads;   // grad f_i(y)
    Vec fy;                   // f_i(y)
    Vec Fx;                   // F_i(x)

    Context(const Problem& p, const SubproblemInput& in) : problem(&p), input(&in) {
        if (in.x.size() != p.n || in.y.size() != p.n)
            throw std::invalid_argument("subproblem input dimension mismatch");
        if (!(in.s > 0)) throw std::invalid_argument("subproblem step must be positive");
        grads.reserve(p.m);
        fy.resize(p.m);
        Fx.resize(p.m);
        for (int i = 0; i < p.m; ++i) {
            grads.push_back(p.smooth[i].gradient(in.y));
            fy[i] = p.smooth[i].value(in.y);
        }
        ObjectiveVector Fxv = evaluate_F(p, in.x);
        if (!Fxv.feasible) throw std::invalid_argument("anchor point x is infeasible");
        Fx = Fxv.values;
    }

    // Combined nonsmooth term for given weights. Box indicators are included
    // unweighted: the primal domain is the intersection of all boxes, so
    // restricting the inner minimization to it tightens the dual bound.
    WeightedNonsmooth combined(const Vec& lambda) const {
        const auto& terms = problem->nonsmooth;
        bool any_box = false;
        for (const auto& t : terms)
            if (t.kind == NonsmoothKind::BoxIndicator) any_box = true;
        if (!any_box) return WeightedNonsmooth::combine(lambda, terms);
        Vec w = Vec::Ones(lambda.size());
        return WeightedNonsmooth::combine(w, terms);
    }

    DualEval eval(const Vec& lambda) const {
        const auto& p = *problem;
        const double s = input->s;
        Vec g = Vec::Zero(p.n);
        for (int i = 0; i < p.m; ++i)
            if (lambda[i] != 0.0) g.noalias() += lambda[i] * grads[i];
        WeightedNonsmooth h = combined(lambda);
        DualEval out;
        out.z = prox(h, s, input->y - s * g);
        Vec dz = out.z - input->y;
        out.psi.resize(p.m);
        for (int i = 0; i < p.m; ++i) {
            bool feas = true;
            double gi = p.nonsmooth[i].value(out.z, &feas);
            out.psi[i] = grads[i].dot(dz) + gi + fy[i] - Fx[i];
        }
        out.d = lambda.dot(out.psi) + dz.squaredNorm() / (2.0 * s);
        return out;
    }

    double primal(const Vec& z) const {
        const auto& p = *problem;
        double best = -kInf;
        for (int i = 0; i < p.m; ++i) {
            bool feas = true;
            double gi = p.nonsmooth[i].value(z, &feas);
            if (!feas) return kInf;
            best = std::max(best, grads[i].dot(z - input->y) + gi + fy[i] - Fx[i]);
        }
        return best + (z - input->y).squaredNorm() / (2.0 * input->s);
    }
};

// Maximizes the concave dual along the segment lam + t (e_i - e_j) for
// t in [0, mass], by bisection on the directional supergradient
// psi_i - psi_j. Values of the dual near its maximum are flat to machine
// precision, so comparing function values cannot localize the argmax; the
// supergradient stays well scaled all the way in.
template <class EvalT, class SlopeT>
std::pair<double, DualEval> edge_max(EvalT&& eval_t, SlopeT&& slope, double mass, int* evals) {
    DualEval e_lo = eval_t(0.0);
    DualEval e_hi = eval_t(mass);
    *evals += 2;
    if (slope(e_lo) <= 0.0) return {0.0, e_lo};
    if (slope(e_hi) >= 0.0) return {mass, e_hi};
    double lo = 0.0, hi = mass;
    for (int it = 0; it < 80 && lo < hi; ++it) {
        double mid = 0.5 * (lo + hi);
        DualEval em = eval_t(mid);
        ++(*evals);
        if (slope(em) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    DualEval e = eval_t(t);
    ++(*evals);
    if (e_lo.d > e.d) return {0.0, e_lo};
    if (e_hi.d > e.d) return {mass, e_hi};
    return {t, e};
}

}  // namespace

Vec simplex_project(const Vec& v) {
    const int m = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + m);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (int j = 0; j < m; ++j) {
        css += u[j];
        double t = (css - 1.0) / (j + 1);
        if (u[j] - t > 0) {
            rho = j + 1;
            theta = t;
        }
    }
    (void)rho;
    return (v.array() - theta).max(0.0);
}

DualEval dual_value(const Problem& problem, const SubproblemInput& input, const Vec& lambda) {
    if (lambda.size() != problem.m) throw std::invalid_argument("lambda dimension mismatch");
    if ((lambda.array() < -1e-12).any() || std::abs(lambda.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("lambda must lie on the simplex");
    Context ctx(problem, input);
    return ctx.eval(lambda.cwiseMax(0.0));
}

double primal_value(const Problem& problem, const SubproblemInput& input, const Vec& z) {
    Context ctx(problem, input);
    return ctx.primal(z);
}

SubproblemSolution solve_subproblem(const Problem& problem, const SubproblemInput& input,
                                    double tol, int max_inner) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    Context ctx(problem, input);
    const int m = problem.m;

    Vec best_lambda;
    DualEval best;
    int evals = 0;

    if (m == 1) {
        best_lambda = Vec::Ones(1);
        best = ctx.eval(best_lambda);
        evals = 1;
    } else if (m == 2) {
        auto eval_t = [&](double t) {
            Vec lam(2);
            lam << t, 1.0 - t;
            return ctx.eval(lam);
        };
        auto slope = [](const DualEval& e) { return e.psi[0] - e.psi[1]; };
        auto [t, e] = edge_max(eval_t, slope, 1.0, &evals);
        best = e;
        best_lambda = Vec(2);
        best_lambda << t, 1.0 - t;
    } else {
        // projected supergradient ascent with iterate averaging, then
        // pairwise golden-section refinement on the simplex
        Vec lam = Vec::Constant(m, 1.0 / m);
        Vec avg = lam;
        best_lambda = lam;
        best = ctx.eval(lam);
        ++evals;
        const int ascent_iters = std::min(max_inner / 2, 500);
        for (int t = 1; t <= ascent_iters; ++t) {
            DualEval e = ctx.eval(lam);
            ++evals;
            if (e.d > best.d) {
                best = e;
                best_lambda = lam;
            }
            lam = simplex_project(lam + (1.0 / std::sqrt(double(t))) * e.psi);
            avg = ((t - 1.0) * avg + lam) / t;
        }
        DualEval ea = ctx.eval(avg);
        ++evals;
        if (ea.d > best.d) {
            best = ea;
            best_lambda = avg;
        }
        lam = best_lambda;
        for (int round = 0; round < 60 && evals < max_inner; ++round) {
            double before = best.d;
            for (int i = 0; i < m; ++i) {
                for (int j = i + 1; j < m; ++j) {
                    double mass = lam[i] + lam[j];
                    if (mass <= 0) continue;
                    auto eval_t = [&](double t) {
                        Vec l = lam;
                        l[i] = t;
                        l[j] = mass - t;
                        return ctx.eval(l);
                    };
                    auto slope = [&](const DualEval& e) { return e.psi[i] - e.psi[j]; };
                    auto [ti, e] = edge_max(eval_t, slope, mass, &evals);
                    if (e.d > best.d) {
                        best = e;
                        best_lambda = lam;
                        best_lambda[i] = ti;
                        best_lambda[j] = mass - ti;
                        lam = best_lambda;
                    }
                }
            }
            double prim = ctx.primal(best.z);
            if (prim - best.d <= tol) break;
            if (best.d - before <= 1e-16 * (1.0 + std::abs(best.d))) break;
        }
    }

    SubproblemSolution sol;
    sol.z = best.z;
    sol.lambda = best_lambda;
    sol.theta = ctx.primal(best.z);
    sol.gap = sol.theta - best.d;
    sol.inner_iters = evals;
    sol.converged = sol.gap <= tol;

    double psi_max = best.psi.maxCoeff();
    double tie = 1e-9 * (1.0 + std::abs(psi_max));
    for (int i = 0; i < m; ++i)
        if (best.psi[i] >= psi_max - tie) sol.active_set.push_back(i);
    return sol;
}

ThetaBoundsReport theta_bounds_check(const Problem& problem, const SubproblemInput& input,
                                     const SubproblemSolution& sol, double tol) {
    ThetaBoundsReport report;
    ObjectiveVector Fy = evaluate_F(problem, input.y);
    ObjectiveVector Fx = evaluate_F(problem, input.x);
    double ub = (Fy.values - Fx.values).maxCoeff();
    report.upper_margin = ub + tol - sol.theta;
    report.upper_ok = report.upper_margin >= 0;
    if (problem.lipschitz_global > 0 && input.s <= 1.0 / problem.lipschitz_global) {
        report.lower_checked = true;
        ObjectiveVector Fz = evaluate_F(problem, sol.z);
        double lb = (Fz.values - Fx.values).maxCoeff();
        report.lower_margin = sol.theta - (lb - tol);
        report.lower_ok = report.lower_margin >= 0;
    }
    return report;
}

double kkt_residual(const Problem& problem, const SubproblemInput& input,
                    const SubproblemSolution& sol) {
    Context ctx(problem, input);
    Vec g = Vec::Zero(problem.n);
    for (int i = 0; i < problem.m; ++i)
        if (sol.lambda[i] != 0.0) g.noalias() += sol.lambda[i] * ctx.grads[i];
    Vec r = g + (sol.z - input.y) / input.s;
    WeightedNonsmooth h = ctx.combined(sol.lambda);
    // choose u in the subdifferential componentwise to cancel as much of the
    // residual as possible
    Vec res(problem.n);
    for (int j = 0; j < problem.n; ++j) {
        double lo = 0.0, hi = 0.0;
        switch (h.kind) {
            case NonsmoothKind::Zero:
                break;
            case NonsmoothKind::WeightedL1: {
                double W = h.total_weight;
                if (sol.z[j] > 0) lo = hi = W;
                else if (sol.z[j] < 0) lo = hi = -W;
                else { lo = -W; hi = W; }
                break;
            }
            case NonsmoothKind::BoxIndicator: {
                const double edge = 1e-12;
                bool at_lo = sol.z[j] <= h.lower[j] + edge;
                bool at_hi = sol.z[j] >= h.upper[j] - edge;
                lo = at_lo ? -kInf : 0.0;
                hi = at_hi ? kInf : 0.0;
                break;
            }
        }
        double u = std::clamp(-r[j], lo, hi);
        res[j] = r[j] + u;
    }
    return res.lpNorm<Eigen::Infinity>();
}

}  // namespace moapg
