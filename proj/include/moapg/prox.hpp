#pragma once

#include "moapg/problem.hpp"

namespace moapg {

// Nonnegative combination sum_i w_i * g_i, collapsed to a single closed-form
// term. All contributing terms must share one family: a weighted l1 sum
// collapses to one total weight, box indicators collapse to the intersection
// box. Mixing l1 and box terms is rejected.
struct WeightedNonsmooth {
    NonsmoothKind kind = NonsmoothKind::Zero;
    double total_weight = 0.0;  // WeightedL1
    Vec lower, upper;           // BoxIndicator (intersection)

    static WeightedNonsmooth combine(const Vec& weights,
                                     const std::vector<NonsmoothTerm>& terms);
    static WeightedNonsmooth single(const NonsmoothTerm& term, double weight = 1.0);

    double value(const Vec& x, bool* feasible = nullptr) const;
};

// argmin_y { scale*h(y) + 1/2 ||v - y||^2 }
Vec prox(const WeightedNonsmooth& h, double scale, const Vec& v);

// h(p) + 1/2 ||x - p||^2 at p = prox(h, 1, x)
double moreau_envelope(const WeightedNonsmooth& h, const Vec& x);

}  // namespace moapg
