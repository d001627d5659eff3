#include "moapg/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace moapg {

std::string to_string(BenchmarkName name) {
    switch (name) {
        case BenchmarkName::BK1: return "BK1";
        case BenchmarkName::JOS1: return "JOS1";
        case BenchmarkName::SP1: return "SP1";
    }
    return "?";
}

BenchmarkName benchmark_from_string(const std::string& name) {
    if (name == "BK1") return BenchmarkName::BK1;
    if (name == "JOS1") return BenchmarkName::JOS1;
    if (name == "SP1") return BenchmarkName::SP1;
    throw std::invalid_argument("unknown benchmark: " + name);
}

BenchmarkSpec BenchmarkSpec::defaults(BenchmarkName name) {
    BenchmarkSpec spec;
    spec.name = name;
    switch (name) {
        case BenchmarkName::BK1:
            spec.n = 2;
            spec.box_lower = Vec::Constant(2, -5.0);
            spec.box_upper = Vec::Constant(2, 10.0);
            break;
        case BenchmarkName::JOS1:
            spec.n = 50;
            spec.box_lower = Vec::Constant(spec.n, -10.0);
            spec.box_upper = Vec::Constant(spec.n, 10.0);
            break;
        case BenchmarkName::SP1:
            spec.n = 2;
            spec.box_lower = Vec::Constant(2, -5.0);
            spec.box_upper = Vec::Constant(2, 5.0);
            break;
    }
    return spec;
}

Problem make_problem(const BenchmarkSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("benchmark dimension must be >= 1");
    if (spec.l1_weight < 0) throw std::invalid_argument("l1 weight must be nonnegative");
    int n = spec.n;
    std::vector<SmoothObjective> smooth;
    switch (spec.name) {
        case BenchmarkName::BK1: {
            n = 2;
            Mat Q = 2.0 * Mat::Identity(2, 2);
            smooth.push_back(SmoothObjective::quadratic(Q, Vec::Zero(2), 0.0));
            Vec b(2);
            b << -10.0, -10.0;
            smooth.push_back(SmoothObjective::quadratic(Q, b, 50.0));
            break;
        }
        case BenchmarkName::JOS1: {
            Mat Q = (2.0 / n) * Mat::Identity(n, n);
            smooth.push_back(SmoothObjective::quadratic(Q, Vec::Zero(n), 0.0));
            smooth.push_back(
                SmoothObjective::quadratic(Q, Vec::Constant(n, -4.0 / n), 4.0));
            break;
        }
        case BenchmarkName::SP1: {
            n = 2;
            Mat Q1(2, 2), Q2(2, 2);
            Q1 << 4.0, -2.0, -2.0, 2.0;
            Q2 << 2.0, -2.0, -2.0, 4.0;
            Vec b1(2), b2(2);
            b1 << -2.0, 0.0;
            b2 << 0.0, -6.0;
            smooth.push_back(SmoothObjective::quadratic(Q1, b1, 1.0));
            smooth.push_back(SmoothObjective::quadratic(Q2, b2, 9.0));
            break;
        }
    }
    std::vector<NonsmoothTerm> nonsmooth;
    for (size_t i = 0; i < smooth.size(); ++i)
        nonsmooth.push_back(spec.l1_weight > 0 ? NonsmoothTerm::l1(spec.l1_weight)
                                               : NonsmoothTerm::zero());
    return Problem::make(n, std::move(smooth), std::move(nonsmooth));
}

std::vector<bool> nondominated_filter(const std::vector<Vec>& values) {
    const int N = static_cast<int>(values.size());
    std::vector<bool> keep(N, true);
    if (N == 0) return keep;
    const int m = static_cast<int>(values[0].size());
    for (const auto& v : values)
        if (v.size() != m) throw std::invalid_argument("inconsistent objective count");

    if (m == 2) {
        // sweep by first objective; a point is dominated iff some point with
        // strictly smaller f1 also has strictly smaller f2
        std::vector<int> order(N);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (values[a][0] != values[b][0]) return values[a][0] < values[b][0];
            return values[a][1] < values[b][1];
        });
        double min_f2_prev = std::numeric_limits<double>::infinity();
        size_t i = 0;
        while (i < order.size()) {
            size_t j = i;
            double block_f1 = values[order[i]][0];
            double block_min_f2 = std::numeric_limits<double>::infinity();
            for (; j < order.size() && values[order[j]][0] == block_f1; ++j) {
                if (values[order[j]][1] > min_f2_prev) keep[order[j]] = false;
                block_min_f2 = std::min(block_min_f2, values[order[j]][1]);
            }
            min_f2_prev = std::min(min_f2_prev, block_min_f2);
            i = j;
        }
        return keep;
    }

    for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N && keep[j]; ++i) {
            if (i == j) continue;
            if ((values[i].array() < values[j].array()).all()) keep[j] = false;
        }
    }
    return keep;
}

std::vector<Vec> uniform_starts(const BenchmarkSpec& spec) {
    if (spec.num_starts < 1) throw std::invalid_argument("num_starts must be positive");
    if (spec.box_lower.size() != spec.box_upper.size() ||
        (spec.box_lower.array() >= spec.box_upper.array()).any())
        throw std::invalid_argument("start box requires lower < upper");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vec> starts;
    starts.reserve(spec.num_starts);
    const int n = static_cast<int>(spec.box_lower.size());
    for (int s = 0; s < spec.num_starts; ++s) {
        Vec x(n);
        for (int j = 0; j < n; ++j)
            x[j] = spec.box_lower[j] + unit(rng) * (spec.box_upper[j] - spec.box_lower[j]);
        starts.push_back(std::move(x));
    }
    return starts;
}

FrontResult generate_front(const BenchmarkSpec& spec, const SolverConfig& config) {
    Problem problem = make_problem(spec);
    ConfigReport report = validate_config(config, problem.lipschitz_global);
    if (!report.ok) throw std::invalid_argument("invalid solver config: " + report.violation);

    FrontResult result;
    for (const Vec& x0 : uniform_starts(spec)) {
        FrontResult::Entry entry;
        entry.x0 = x0;
        RunTrace trace = run(problem, config, x0);
        entry.x_final = trace.final_point();
        entry.F_final = trace.records.back().F;
        entry.iterations = trace.iterations();
        entry.reason = trace.stopping_reason;
        result.solutions.push_back(std::move(entry));
    }

    // dedupe final objective vectors at 1e-9, keep the first representative
    std::vector<Vec> values;
    std::vector<int> rep;
    for (size_t i = 0; i < result.solutions.size(); ++i) {
        const Vec& F = result.solutions[i].F_final;
        bool dup = false;
        for (int r : rep) {
            if ((result.solutions[r].F_final - F).lpNorm<Eigen::Infinity>() <= 1e-9) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            rep.push_back(static_cast<int>(i));
            values.push_back(F);
        }
    }
    std::vector<bool> kept = nondominated_filter(values);
    result.nondominated_mask.assign(result.solutions.size(), false);
    for (size_t r = 0; r < rep.size(); ++r)
        if (kept[r]) result.nondominated_mask[rep[r]] = true;
    return result;
}

ReferenceFront build_reference_front(const BenchmarkSpec& spec, double epsilon, int max_iters) {
    Problem problem = make_problem(spec);
    double step = 0.99 / problem.lipschitz_global;
    ReferenceFront ref;
    std::vector<Vec> values;
    for (const Vec& x0 : uniform_starts(spec)) {
        RunTrace trace = run_baseline(problem, Baseline::Pg, x0, step, epsilon, max_iters);
        ref.points.push_back(trace.final_point());
        values.push_back(trace.records.back().F);
    }
    std::vector<bool> keep = nondominated_filter(values);
    ReferenceFront filtered;
    for (size_t i = 0; i < keep.size(); ++i) {
        if (!keep[i]) continue;
        filtered.points.push_back(std::move(ref.points[i]));
        filtered.values.push_back(std::move(values[i]));
    }
    std::ostringstream prov;
    prov << "proximal-gradient multi-start: " << to_string(spec.name) << " n=" << spec.n
         << " l1_weight=" << spec.l1_weight << " starts=" << spec.num_starts
         << " seed=" << spec.seed << " step=" << step << " epsilon=" << epsilon
         << " max_iters=" << max_iters << " filtered=" << filtered.points.size();
    filtered.provenance = prov.str();
    return filtered;
}

}  // namespace moapg
