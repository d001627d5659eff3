#include "moapg/prox.hpp"

#include <cmath>

namespace moapg {

WeightedNonsmooth WeightedNonsmooth::combine(const Vec& weights,
                                             const std::vector<NonsmoothTerm>& terms) {
    if (static_cast<size_t>(weights.size()) != terms.size())
        throw std::invalid_argument("weights/terms length mismatch");
    WeightedNonsmooth h;
    for (int i = 0; i < weights.size(); ++i) {
        double w = weights[i];
        if (w < 0) throw std::invalid_argument("combination weights must be nonnegative");
        const auto& t = terms[i];
        if (w == 0.0 || t.kind == NonsmoothKind::Zero) continue;
        if (t.kind == NonsmoothKind::WeightedL1) {
            if (h.kind == NonsmoothKind::BoxIndicator)
                throw std::invalid_argument("cannot mix l1 and box-indicator terms in one combination");
            h.kind = NonsmoothKind::WeightedL1;
            h.total_weight += w * t.weight;
        } else {  // BoxIndicator; positive scaling leaves the indicator unchanged
            if (h.kind == NonsmoothKind::WeightedL1)
                throw std::invalid_argument("cannot mix l1 and box-indicator terms in one combination");
            if (h.kind == NonsmoothKind::Zero) {
                h.kind = NonsmoothKind::BoxIndicator;
                h.lower = t.lower;
                h.upper = t.upper;
            } else {
                h.lower = h.lower.cwiseMax(t.lower);
                h.upper = h.upper.cwiseMin(t.upper);
                if ((h.lower.array() > h.upper.array()).any())
                    throw std::invalid_argument("box intersection is empty");
            }
        }
    }
    return h;
}

WeightedNonsmooth WeightedNonsmooth::single(const NonsmoothTerm& term, double weight) {
    Vec w(1);
    w[0] = weight;
    return combine(w, {term});
}

double WeightedNonsmooth::value(const Vec& x, bool* feasible) const {
    switch (kind) {
        case NonsmoothKind::Zero:
            return 0.0;
        case NonsmoothKind::WeightedL1:
            return total_weight * x.lpNorm<1>();
        case NonsmoothKind::BoxIndicator:
            if (feasible &&
                ((x.array() < lower.array()).any() || (x.array() > upper.array()).any()))
                *feasible = false;
            return 0.0;
    }
    return 0.0;
}

Vec prox(const WeightedNonsmooth& h, double scale, const Vec& v) {
    if (!(scale > 0)) throw std::invalid_argument("prox scale must be positive");
    switch (h.kind) {
        case NonsmoothKind::Zero:
            return v;
        case NonsmoothKind::WeightedL1: {
            double t = scale * h.total_weight;
            return v.unaryExpr([t](double a) {
                double m = std::abs(a) - t;
                return m > 0 ? (a < 0 ? -m : m) : 0.0;
            });
        }
        case NonsmoothKind::BoxIndicator:
            return v.cwiseMax(h.lower).cwiseMin(h.upper);
    }
    return v;
}

double moreau_envelope(const WeightedNonsmooth& h, const Vec& x) {
    Vec p = prox(h, 1.0, x);
    return h.value(p) + 0.5 * (x - p).squaredNorm();
}

}  // namespace moapg
