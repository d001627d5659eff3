#include "moapg/problem.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

namespace moapg {

SmoothObjective SmoothObjective::quadratic(const Mat& Q, const Vec& b, double c) {
    SmoothObjective obj;
    obj.value = [Q, b, c](const Vec& x) { return 0.5 * x.dot(Q * x) + b.dot(x) + c; };
    obj.gradient = [Q, b](const Vec& x) -> Vec { return Q * x + b; };
    obj.hessian = Q;
    Eigen::SelfAdjointEigenSolver<Mat> es(Q, Eigen::EigenvaluesOnly);
    obj.lipschitz = es.eigenvalues().cwiseAbs().maxCoeff();
    return obj;
}

NonsmoothTerm NonsmoothTerm::zero() { return NonsmoothTerm{}; }

NonsmoothTerm NonsmoothTerm::l1(double w) {
    if (w < 0) throw std::invalid_argument("l1 weight must be nonnegative");
    NonsmoothTerm t;
    t.kind = NonsmoothKind::WeightedL1;
    t.weight = w;
    return t;
}

NonsmoothTerm NonsmoothTerm::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size() || (lo.array() > hi.array()).any())
        throw std::invalid_argument("box bounds require lower <= upper componentwise");
    NonsmoothTerm t;
    t.kind = NonsmoothKind::BoxIndicator;
    t.lower = std::move(lo);
    t.upper = std::move(hi);
    return t;
}

bool NonsmoothTerm::contains(const Vec& x) const {
    if (kind != NonsmoothKind::BoxIndicator) return true;
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

double NonsmoothTerm::value(const Vec& x, bool* feasible) const {
    switch (kind) {
        case NonsmoothKind::Zero:
            return 0.0;
        case NonsmoothKind::WeightedL1:
            return weight * x.lpNorm<1>();
        case NonsmoothKind::BoxIndicator:
            if (!contains(x)) {
                if (feasible) *feasible = false;
            }
            return 0.0;
    }
    return 0.0;
}

Problem Problem::make(int n, std::vector<SmoothObjective> smooth,
                      std::vector<NonsmoothTerm> nonsmooth) {
    if (smooth.empty() || smooth.size() != nonsmooth.size())
        throw std::invalid_argument("need m >= 1 smooth objectives with matching nonsmooth terms");
    Problem p;
    p.n = n;
    p.m = static_cast<int>(smooth.size());
    p.smooth = std::move(smooth);
    p.nonsmooth = std::move(nonsmooth);
    double L = 0.0;
    for (const auto& f : p.smooth)
        if (f.lipschitz > L) L = f.lipschitz;
    p.lipschitz_global = L;
    return p;
}

ObjectiveVector evaluate_F(const Problem& problem, const Vec& x) {
    if (x.size() != problem.n) throw std::invalid_argument("point dimension mismatch");
    ObjectiveVector out;
    out.values.resize(problem.m);
    for (int i = 0; i < problem.m; ++i) {
        double v = problem.smooth[i].value(x);
        v += problem.nonsmooth[i].value(x, &out.feasible);
        out.values[i] = v;
    }
    return out;
}

double lipschitz_bound_analytic(const Problem& problem) {
    double L = 0.0;
    for (const auto& f : problem.smooth) {
        if (!f.hessian) throw std::invalid_argument("analytic Lipschitz bound needs a quadratic objective");
        Eigen::SelfAdjointEigenSolver<Mat> es(*f.hessian, Eigen::EigenvaluesOnly);
        L = std::max(L, es.eigenvalues().cwiseAbs().maxCoeff());
    }
    return L;
}

double lipschitz_bound_power(const Problem& problem, const PowerIterOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double h = 1e-5;
    double best = 0.0;
    for (const auto& f : problem.smooth) {
        for (int t = 0; t < opts.trials; ++t) {
            Vec x(problem.n), v(problem.n);
            for (int j = 0; j < problem.n; ++j) {
                x[j] = gauss(rng);
                v[j] = gauss(rng);
            }
            double vn = v.norm();
            if (vn == 0) continue;
            v /= vn;
            double est = 0.0;
            for (int it = 0; it < opts.iters; ++it) {
                Vec Hv = (f.gradient(x + h * v) - f.gradient(x - h * v)) / (2.0 * h);
                double nrm = Hv.norm();
                if (nrm < 1e-14) { est = nrm; break; }
                est = nrm;
                v = Hv / nrm;
            }
            best = std::max(best, est);
        }
    }
    return 1.05 * best;
}

ConfigReport validate_config(const SolverConfig& config, double L) {
    ConfigReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.violation = msg;
        return report;
    };
    if (!(L > 0)) return fail("L must be positive");
    if (!(config.alpha >= 3.0)) return fail("alpha must satisfy alpha >= 3");
    if (!(config.s0 > 0)) return fail("s0 must be positive");
    if (!(config.epsilon > 0)) return fail("epsilon must be positive");
    if (config.max_iters < 0) return fail("max_iters must be nonnegative");
    std::ostringstream os;
    if (config.alpha > 3.0) {
        double lhs = (config.alpha - 2.0) / (config.alpha - 3.0) * config.s0;
        if (!(lhs < 1.0 / L)) {
            os << "requires (alpha-2)/(alpha-3)*s0 < 1/L: " << lhs << " >= " << 1.0 / L;
            return fail(os.str());
        }
    } else {
        if (!(config.s0 < 1.0 / L)) {
            os << "requires s0 < 1/L strictly: " << config.s0 << " >= " << 1.0 / L;
            return fail(os.str());
        }
    }
    return report;
}

}  // namespace moapg
