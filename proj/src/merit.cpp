#include "moapg/merit.hpp"

#include <cmath>
#include <limits>

namespace moapg {

double sigma(const Problem& problem, const Vec& x, const Vec& z) {
    ObjectiveVector Fx = evaluate_F(problem, x);
    ObjectiveVector Fz = evaluate_F(problem, z);
    if (!Fx.feasible || !Fz.feasible)
        throw std::invalid_argument("sigma requires feasible arguments");
    return (Fx.values - Fz.values).minCoeff();
}

double rho(const Vec& x_p, const Vec& x_prev, const Vec& z, int p, double alpha) {
    if (p < 0) throw std::invalid_argument("rho index must be nonnegative");
    return ((p + alpha - 2.0) * x_p - (p + alpha - 4.0) * x_prev - z).squaredNorm();
}

double u0_lower_bound(const Vec& Fx, const ReferenceFront& ref) {
    if (ref.size() == 0) throw std::invalid_argument("reference front is empty");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& Fz : ref.values)
        best = std::max(best, (Fx - Fz).minCoeff());
    return best;
}

double u0_lower_bound(const Problem& problem, const Vec& x, const ReferenceFront& ref) {
    return u0_lower_bound(evaluate_F(problem, x).values, ref);
}

double empirical_R(const Vec& x0, const Vec& x1, const ReferenceFront& ref) {
    if (ref.size() == 0) throw std::invalid_argument("reference front is empty");
    double best = 0.0;
    for (const auto& z : ref.points)
        best = std::max(best, 4.0 * (2.0 * x0 - z).squaredNorm() + (x1 - z).squaredNorm());
    return best;
}

RateCertificate certify_rate(const Problem& problem, const RunTrace& trace,
                             const ReferenceFront& ref, double L, double alpha,
                             double R_scale) {
    (void)problem;
    RateCertificate cert;
    cert.L = L;
    cert.alpha = alpha;
    if (trace.iterates.size() < 2)
        throw std::invalid_argument("rate certification needs at least one completed iteration");
    cert.R_hat = R_scale * empirical_R(trace.iterates[0], trace.iterates[1], ref);
    for (size_t k = 1; k < trace.records.size(); ++k) {
        const auto& rec = trace.records[k];
        double denom = (rec.k + alpha - 1.0) * (rec.k + alpha - 1.0);
        RateCertificate::Row row;
        row.k = rec.k;
        row.u0_lower = u0_lower_bound(rec.F, ref);
        row.bound = L * cert.R_hat / denom;
        if (row.u0_lower > row.bound) ++cert.violations;
        cert.series.push_back(row);
    }
    return cert;
}

SigmaInequalityReport check_sigma_inequalities(const Problem& problem, const RunTrace& trace, const Vec& z) {
    SigmaInequalityReport report;
    report.worst_margin_decrease = std::numeric_limits<double>::infinity();
    report.worst_margin_upper = std::numeric_limits<double>::infinity();
    const int N = trace.iterations();
    ObjectiveVector Fz = evaluate_F(problem, z);
    if (!Fz.feasible) throw std::invalid_argument("sigma inequality check requires a feasible z");
    // records carry F(x_k) when the trace came from a solver run
    const bool cached = trace.records.size() == trace.iterates.size();
    auto sigma_at = [&](int k) {
        if (cached) return (trace.records[k].F - Fz.values).minCoeff();
        return (evaluate_F(problem, trace.iterates[k]).values - Fz.values).minCoeff();
    };
    for (int k = 0; k < N; ++k) {
        const Vec& xk = trace.iterates[k];
        const Vec& xk1 = trace.iterates[k + 1];
        const Vec& yk = trace.extrapolated[k];
        double sk = trace.steps[k];
        double sk_ = sigma_at(k);
        double sk1 = sigma_at(k + 1);

        double rhs_dec = -(2.0 * (yk - xk1).dot(yk - xk) + (xk1 - yk).squaredNorm()) / (2.0 * sk);
        double rhs_up = (2.0 * (yk - xk1).dot(yk - z) - (xk1 - yk).squaredNorm()) / (2.0 * sk);

        double scale_dec = 1.0 + std::abs(sk_) + std::abs(sk1) + std::abs(rhs_dec);
        double scale_up = 1.0 + std::abs(sk1) + std::abs(rhs_up);
        double m_dec = ((sk_ - sk1) - rhs_dec) + 1e-9 * scale_dec;
        double m_up = (rhs_up - sk1) + 1e-9 * scale_up;

        report.worst_margin_decrease = std::min(report.worst_margin_decrease, m_dec);
        report.worst_margin_upper = std::min(report.worst_margin_upper, m_up);
        if (m_dec < 0 || m_up < 0) report.ok = false;
    }
    return report;
}

}  // namespace moapg
