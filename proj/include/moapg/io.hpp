#pragma once

#include "moapg/bench.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>

namespace moapg {

using json = nlohmann::json;

// ---- experiment configuration ------------------------------------------

enum class Method { Accelerated, Pg, Fista };

std::string to_string(Method method);
std::string to_string(StopRule rule);
std::string to_string(StopReason reason);

struct ExperimentConfig {
    // exactly one of the two problem sources is set
    std::optional<BenchmarkSpec> benchmark;
    std::optional<Problem> inline_problem;
    json inline_problem_json;  // retained for the summary echo

    SolverConfig solver;
    bool s0_explicit = false;  // when false, s0 is derived from L at resolve time
    Method method = Method::Accelerated;
    std::vector<Method> compare_methods = {Method::Accelerated, Method::Pg, Method::Fista};
    std::optional<Vec> x0;  // defaults to the start-box center (benchmark) or zero
    std::filesystem::path outputs = ".";
    bool emit_svg = false;
    double compare_threshold = 1e-6;
    double deflate_R = 1.0;  // test hook for the rate negative control
    int reference_starts = 200;

    Problem make_problem() const;
    // fills in s0 when not given: 90% of the admissible step-size bound
    void resolve(double L);
    json echo() const;  // full resolved config, defaults materialized
};

ExperimentConfig parse_experiment_config(const json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Problem construction from a structured JSON description: quadratic smooth
// parts (Q, b, c) with per-objective nonsmooth kind tags.
Problem problem_from_json(const json& j);

// ---- artifact writers ---------------------------------------------------

std::string format_double(double v);  // 17 significant digits, '.' decimal

void write_trace_csv(std::ostream& os, const RunTrace& trace, int m);
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace, int m);

json summary_json(const ExperimentConfig& config, const RunTrace& trace);

void write_front_csv(std::ostream& os, const FrontResult& front, int n, int m,
                     bool nondominated_only = true);
void write_front_svg(std::ostream& os, const FrontResult& front);

void write_rate_csv(std::ostream& os, const RateCertificate& cert);
json certificate_json(const RateCertificate& cert);

void write_reference_front_csv(std::ostream& os, const ReferenceFront& ref);
json reference_front_sidecar(const ReferenceFront& ref);
ReferenceFront read_reference_front_csv(std::istream& is, const std::string& provenance);

}  // namespace moapg
