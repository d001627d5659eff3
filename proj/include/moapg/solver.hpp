#pragma once

#include "moapg/subproblem.hpp"

#include <optional>

namespace moapg {

enum class StopReason { ToleranceMet, MaxIters, SubproblemFailure };

struct TraceRecord {
    int k = 0;            // iterate index of x_k
    double s = 0.0;       // step used to produce x_k (s_{k-1}); s_0 at k=0
    double gamma = 0.0;   // extrapolation coefficient used at that step
    Vec F;                // F(x_k)
    double step_norm = 0.0;
    std::optional<double> merit;
};

struct RunTrace {
    std::vector<TraceRecord> records;   // one per iterate, starting at x_0
    std::vector<Vec> iterates;          // x_0 .. x_N
    std::vector<Vec> extrapolated;      // y_0 .. y_{N-1}
    std::vector<double> steps;          // s_0 .. s_{N-1}, aligned with extrapolated
    StopReason stopping_reason = StopReason::MaxIters;

    int iterations() const { return static_cast<int>(extrapolated.size()); }
    const Vec& final_point() const { return iterates.back(); }
};

// (k+a-2)^2 / ((k+a-1)(k+a-3)); undefined at k+a = 3
double eta(int k, double alpha);

// Closed form of the multiplicative schedule s_{k+1} = eta(k) s_k.
double step_size(int k, double alpha, double s0);

// y_k = x_k + (k+a-4)/(k+a-1) (x_k - x_{k-1})
Vec extrapolate(const Vec& x_curr, const Vec& x_prev, int k, double alpha);
double extrapolation_coefficient(int k, double alpha);

RunTrace run(const Problem& problem, const SolverConfig& config, const Vec& x0);

enum class Baseline { Pg, Fista };

RunTrace run_baseline(const Problem& problem, Baseline variant, const Vec& x0, double step,
                      double epsilon, int max_iters);

}  // namespace moapg
