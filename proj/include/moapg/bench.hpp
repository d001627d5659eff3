#pragma once

#include "moapg/merit.hpp"

namespace moapg {

enum class BenchmarkName { BK1, JOS1, SP1 };

std::string to_string(BenchmarkName name);
BenchmarkName benchmark_from_string(const std::string& name);

struct BenchmarkSpec {
    BenchmarkName name = BenchmarkName::BK1;
    int n = 2;               // JOS1 only; BK1 and SP1 are fixed at 2
    double l1_weight = 0.1;  // 0 disables the nonsmooth terms
    Vec box_lower, box_upper;
    int num_starts = 500;
    uint64_t seed = 0;

    static BenchmarkSpec defaults(BenchmarkName name);
};

Problem make_problem(const BenchmarkSpec& spec);

struct FrontResult {
    struct Entry {
        Vec x0, x_final, F_final;
        int iterations = 0;
        StopReason reason = StopReason::MaxIters;
    };
    std::vector<Entry> solutions;
    std::vector<bool> nondominated_mask;
};

// Point j is removed iff some other point is strictly smaller in every
// objective.
std::vector<bool> nondominated_filter(const std::vector<Vec>& values);

std::vector<Vec> uniform_starts(const BenchmarkSpec& spec);

FrontResult generate_front(const BenchmarkSpec& spec, const SolverConfig& config);

// Long proximal-gradient runs from uniform starts, filtered to the weakly
// nondominated subset.
ReferenceFront build_reference_front(const BenchmarkSpec& spec, double epsilon = 1e-9,
                                     int max_iters = 5000);

}  // namespace moapg
