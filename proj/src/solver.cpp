#include "moapg/solver.hpp"

#include <cmath>

namespace moapg {

double eta(int k, double alpha) {
    double a = k + alpha;
    if (std::abs(a - 3.0) < 1e-12)
        throw std::domain_error("eta undefined at k + alpha = 3; use the closed-form step size");
    return (a - 2.0) * (a - 2.0) / ((a - 1.0) * (a - 3.0));
}

double step_size(int k, double alpha, double s0) {
    if (k == 0) return s0;
    if (alpha == 3.0) return double(k) / (k + 1.0) * s0;
    return (alpha - 2.0) * (k + alpha - 3.0) / ((alpha - 3.0) * (k + alpha - 2.0)) * s0;
}

double extrapolation_coefficient(int k, double alpha) {
    return (k + alpha - 4.0) / (k + alpha - 1.0);
}

Vec extrapolate(const Vec& x_curr, const Vec& x_prev, int k, double alpha) {
    return x_curr + extrapolation_coefficient(k, alpha) * (x_curr - x_prev);
}

namespace {

void append_record(RunTrace& trace, const Problem& problem, int k, double s, double gamma,
                   const Vec& x, double step_norm) {
    TraceRecord rec;
    rec.k = k;
    rec.s = s;
    rec.gamma = gamma;
    rec.F = evaluate_F(problem, x).values;
    rec.step_norm = step_norm;
    trace.records.push_back(std::move(rec));
}

}  // namespace

RunTrace run(const Problem& problem, const SolverConfig& config, const Vec& x0) {
    ConfigReport report = validate_config(config, problem.lipschitz_global);
    if (!report.ok) throw std::invalid_argument("invalid solver config: " + report.violation);
    if (!evaluate_F(problem, x0).feasible)
        throw std::invalid_argument("starting point is infeasible");

    RunTrace trace;
    trace.iterates.push_back(x0);
    append_record(trace, problem, 0, config.s0, 0.0, x0, 0.0);

    const double subtol = 1e-9;
    Vec x_prev = x0, x_curr = x0;
    trace.stopping_reason = StopReason::MaxIters;

    for (int k = 0; k < config.max_iters; ++k) {
        double sk = step_size(k, config.alpha, config.s0);

        if (config.stop_rule == StopRule::SubproblemResidual) {
            SubproblemSolution probe =
                solve_subproblem(problem, {x_curr, x_curr, sk}, subtol);
            if ((probe.z - x_curr).lpNorm<Eigen::Infinity>() < config.epsilon) {
                trace.stopping_reason = StopReason::ToleranceMet;
                break;
            }
        }

        double gamma = extrapolation_coefficient(k, config.alpha);
        Vec y = x_curr + gamma * (x_curr - x_prev);
        SubproblemSolution sol = solve_subproblem(problem, {x_curr, y, sk}, subtol);
        if (!sol.converged) {
            trace.stopping_reason = StopReason::SubproblemFailure;
            break;
        }

        double step_norm = (sol.z - x_curr).norm();
        trace.extrapolated.push_back(std::move(y));
        trace.steps.push_back(sk);
        trace.iterates.push_back(sol.z);
        append_record(trace, problem, k + 1, sk, gamma, sol.z, step_norm);

        x_prev = x_curr;
        x_curr = sol.z;

        if (config.stop_rule == StopRule::StepNorm && step_norm < config.epsilon) {
            trace.stopping_reason = StopReason::ToleranceMet;
            break;
        }
    }
    return trace;
}

RunTrace run_baseline(const Problem& problem, Baseline variant, const Vec& x0, double step,
                      double epsilon, int max_iters) {
    if (problem.lipschitz_global > 0 && step > 1.0 / problem.lipschitz_global)
        throw std::invalid_argument("baseline step must satisfy step <= 1/L(f)");
    if (!(step > 0) || !(epsilon > 0)) throw std::invalid_argument("invalid baseline parameters");
    if (!evaluate_F(problem, x0).feasible)
        throw std::invalid_argument("starting point is infeasible");

    RunTrace trace;
    trace.iterates.push_back(x0);
    append_record(trace, problem, 0, step, 0.0, x0, 0.0);

    const double subtol = 1e-9;
    Vec x_prev = x0, x_curr = x0;
    double t = 1.0;
    trace.stopping_reason = StopReason::MaxIters;

    for (int k = 0; k < max_iters; ++k) {
        double gamma = 0.0;
        Vec y = x_curr;
        if (variant == Baseline::Fista) {
            double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
            gamma = (t - 1.0) / t_next;
            y = x_curr + gamma * (x_curr - x_prev);
            t = t_next;
        }
        SubproblemSolution sol = solve_subproblem(problem, {x_curr, y, step}, subtol);
        if (!sol.converged) {
            trace.stopping_reason = StopReason::SubproblemFailure;
            break;
        }

        double step_norm = (sol.z - x_curr).norm();
        trace.extrapolated.push_back(std::move(y));
        trace.steps.push_back(step);
        trace.iterates.push_back(sol.z);
        append_record(trace, problem, k + 1, step, gamma, sol.z, step_norm);

        x_prev = x_curr;
        x_curr = sol.z;

        if (step_norm < epsilon) {
            trace.stopping_reason = StopReason::ToleranceMet;
            break;
        }
    }
    return trace;
}

}  // namespace moapg
