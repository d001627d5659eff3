#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace moapg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// F(x) componentwise; `feasible` is false when a box indicator is violated,
// in which case `values` holds the smooth parts only.
struct ObjectiveVector {
    Vec values;
    bool feasible = true;
};

struct SmoothObjective {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    double lipschitz = -1.0;      // < 0 means unknown
    std::optional<Mat> hessian;   // constant Hessian, set for quadratics

    static SmoothObjective quadratic(const Mat& Q, const Vec& b, double c);
};

enum class NonsmoothKind { Zero, WeightedL1, BoxIndicator };

struct NonsmoothTerm {
    NonsmoothKind kind = NonsmoothKind::Zero;
    double weight = 0.0;  // WeightedL1
    Vec lower, upper;     // BoxIndicator

    static NonsmoothTerm zero();
    static NonsmoothTerm l1(double w);
    static NonsmoothTerm box(Vec lo, Vec hi);

    bool contains(const Vec& x) const;              // always true unless BoxIndicator
    double value(const Vec& x, bool* feasible) const;
};

struct Problem {
    int n = 0;
    int m = 0;
    std::vector<SmoothObjective> smooth;
    std::vector<NonsmoothTerm> nonsmooth;
    double lipschitz_global = 0.0;  // L(f) = max_i L_i

    static Problem make(int n, std::vector<SmoothObjective> smooth,
                        std::vector<NonsmoothTerm> nonsmooth);
};

ObjectiveVector evaluate_F(const Problem& problem, const Vec& x);

// Largest per-objective curvature bound, from stored Hessians.
double lipschitz_bound_analytic(const Problem& problem);

struct PowerIterOptions {
    int trials = 5;
    int iters = 60;
    uint64_t seed = 0;
};

// Power iteration on finite-difference Hessian-vector products, inflated by
// a 1.05 safety factor so the result stays a usable upper bound.
double lipschitz_bound_power(const Problem& problem, const PowerIterOptions& opts = {});

enum class StopRule { StepNorm, SubproblemResidual };

struct SolverConfig {
    double alpha = 4.0;
    double s0 = 0.0;
    double epsilon = 1e-7;
    int max_iters = 10000;
    StopRule stop_rule = StopRule::StepNorm;
};

struct ConfigReport {
    bool ok = true;
    std::string violation;  // names the violated inequality when !ok
};

ConfigReport validate_config(const SolverConfig& config, double L);

}  // namespace moapg
