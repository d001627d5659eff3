#pragma once

#include "moapg/solver.hpp"

#include <string>

namespace moapg {

// Finite sample of approximate Pareto solutions used to lower-bound the
// merit function and to estimate the constant of the rate bound.
struct ReferenceFront {
    std::vector<Vec> points;   // z in problem space
    std::vector<Vec> values;   // F(z)
    std::string provenance;

    size_t size() const { return points.size(); }
};

// min_i [F_i(x) - F_i(z)]
double sigma(const Problem& problem, const Vec& x, const Vec& z);

// ||(p+a-2) x_p - (p+a-4) x_{p-1} - z||^2
double rho(const Vec& x_p, const Vec& x_prev, const Vec& z, int p, double alpha);

// max over reference points z of min_i [F_i(x) - F_i(z)]
double u0_lower_bound(const Problem& problem, const Vec& x, const ReferenceFront& ref);
double u0_lower_bound(const Vec& Fx, const ReferenceFront& ref);

// max over reference points z of 4||2 x0 - z||^2 + ||x1 - z||^2
double empirical_R(const Vec& x0, const Vec& x1, const ReferenceFront& ref);

struct RateCertificate {
    struct Row {
        int k;
        double u0_lower;
        double bound;  // L * R_hat / (k + alpha - 1)^2
    };
    std::vector<Row> series;
    double R_hat = 0.0;
    double L = 0.0;
    double alpha = 0.0;
    int violations = 0;
};

// Checks the O(1/k^2) decay of the merit lower bound along a trace.
// R_scale deflates R_hat; values < 1 serve as a negative control for the
// checker itself.
RateCertificate certify_rate(const Problem& problem, const RunTrace& trace,
                             const ReferenceFront& ref, double L, double alpha,
                             double R_scale = 1.0);

struct SigmaInequalityReport {
    bool ok = true;
    double worst_margin_decrease = 0.0;  // sigma_k - sigma_{k+1} inequality
    double worst_margin_upper = 0.0;     // sigma_{k+1} upper bound inequality
};

// Verifies the two per-iteration sigma inequalities along a trace for a
// fixed z. Margins are signed slack; negative beyond tolerance fails.
SigmaInequalityReport check_sigma_inequalities(const Problem& problem, const RunTrace& trace, const Vec& z);

}  // namespace moapg
