#include "moapg/io.hpp"

#include <nlohmann/json.hpp>
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using namespace moapg;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitMaxIters = 2;
constexpr int kExitFailure = 3;

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::optional<int64_t> seed;
    bool emit_svg = false;
};

ExperimentConfig load_config(const CliOverrides& cli) {
    ExperimentConfig config = load_experiment_config(cli.config_path);
    if (!cli.out_dir.empty()) config.outputs = cli.out_dir;
    if (cli.seed && config.benchmark) config.benchmark->seed = static_cast<uint64_t>(*cli.seed);
    if (cli.emit_svg) config.emit_svg = true;
    return config;
}

Vec default_start(const ExperimentConfig& config, const Problem& problem) {
    if (config.x0) {
        if (config.x0->size() != problem.n)
            throw std::invalid_argument("x0 dimension does not match the problem");
        return *config.x0;
    }
    if (config.benchmark)
        return 0.5 * (config.benchmark->box_lower + config.benchmark->box_upper);
    return Vec::Zero(problem.n);
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

RunTrace run_method(const Problem& problem, const ExperimentConfig& config, Method method,
                    const Vec& x0) {
    if (method == Method::Accelerated) return run(problem, config.solver, x0);
    double step = 0.99 / problem.lipschitz_global;
    return run_baseline(problem, method == Method::Pg ? Baseline::Pg : Baseline::Fista, x0, step,
                        config.solver.epsilon, config.solver.max_iters);
}

int cmd_solve(const CliOverrides& cli) {
    ExperimentConfig config = load_config(cli);
    Problem problem = config.make_problem();
    config.resolve(problem.lipschitz_global);
    ConfigReport report = validate_config(config.solver, problem.lipschitz_global);
    if (!report.ok) {
        std::cerr << "config error: " << report.violation << '\n';
        return kExitConfig;
    }
    Vec x0 = default_start(config, problem);
    RunTrace trace = run_method(problem, config, config.method, x0);

    std::filesystem::create_directories(config.outputs);
    write_trace_csv(config.outputs / "trace.csv", trace, problem.m);
    write_json(config.outputs / "summary.json", summary_json(config, trace));

    switch (trace.stopping_reason) {
        case StopReason::ToleranceMet: return kExitOk;
        case StopReason::MaxIters: return kExitMaxIters;
        case StopReason::SubproblemFailure: return kExitFailure;
    }
    return kExitFailure;
}

int cmd_front(const CliOverrides& cli) {
    ExperimentConfig config = load_config(cli);
    if (!config.benchmark) {
        std::cerr << "config error: front generation needs a benchmark problem\n";
        return kExitConfig;
    }
    Problem problem = config.make_problem();
    config.resolve(problem.lipschitz_global);
    ConfigReport report = validate_config(config.solver, problem.lipschitz_global);
    if (!report.ok) {
        std::cerr << "config error: " << report.violation << '\n';
        return kExitConfig;
    }
    FrontResult front = generate_front(*config.benchmark, config.solver);

    std::filesystem::create_directories(config.outputs);
    {
        std::ofstream out(config.outputs / "front.csv");
        write_front_csv(out, front, problem.n, problem.m);
    }
    if (config.emit_svg) {
        std::ofstream out(config.outputs / "front.svg");
        write_front_svg(out, front);
    }
    return kExitOk;
}

int cmd_rate(const CliOverrides& cli) {
    ExperimentConfig config = load_config(cli);
    if (!config.benchmark) {
        std::cerr << "config error: rate certification needs a benchmark problem\n";
        return kExitConfig;
    }
    Problem problem = config.make_problem();
    config.resolve(problem.lipschitz_global);
    ConfigReport report = validate_config(config.solver, problem.lipschitz_global);
    if (!report.ok) {
        std::cerr << "config error: " << report.violation << '\n';
        return kExitConfig;
    }
    Vec x0 = default_start(config, problem);
    RunTrace trace = run(problem, config.solver, x0);
    if (trace.iterations() < 1) {
        std::cerr << "rate certification needs at least one completed iteration\n";
        return kExitFailure;
    }

    ReferenceFront ref;
    try {
        BenchmarkSpec ref_spec = *config.benchmark;
        ref_spec.num_starts = config.reference_starts;
        ref_spec.seed = config.benchmark->seed + 0x9e3779b97f4a7c15ULL;
        ref = build_reference_front(ref_spec, config.solver.epsilon);
    } catch (const std::exception& e) {
        std::cerr << "reference front generation failed: " << e.what() << '\n';
        return kExitFailure;
    }

    RateCertificate cert = certify_rate(problem, trace, ref, problem.lipschitz_global,
                                        config.solver.alpha, config.deflate_R);
    for (const auto& row : cert.series)
        trace.records[row.k].merit = row.u0_lower;

    std::filesystem::create_directories(config.outputs);
    {
        std::ofstream out(config.outputs / "rate.csv");
        write_rate_csv(out, cert);
    }
    write_json(config.outputs / "certificate.json", certificate_json(cert));
    write_trace_csv(config.outputs / "trace.csv", trace, problem.m);
    {
        std::ofstream out(config.outputs / "reference_front.csv");
        write_reference_front_csv(out, ref);
    }
    write_json(config.outputs / "reference_front.json", reference_front_sidecar(ref));
    return kExitOk;
}

int cmd_compare(const CliOverrides& cli) {
    ExperimentConfig config = load_config(cli);
    if (!config.benchmark) {
        std::cerr << "config error: compare needs a benchmark problem\n";
        return kExitConfig;
    }
    Problem problem = config.make_problem();
    config.resolve(problem.lipschitz_global);
    ConfigReport report = validate_config(config.solver, problem.lipschitz_global);
    if (!report.ok) {
        std::cerr << "config error: " << report.violation << '\n';
        return kExitConfig;
    }
    Vec x0 = default_start(config, problem);

    ReferenceFront ref;
    try {
        BenchmarkSpec ref_spec = *config.benchmark;
        ref_spec.num_starts = config.reference_starts;
        ref_spec.seed = config.benchmark->seed + 0x9e3779b97f4a7c15ULL;
        ref = build_reference_front(ref_spec, config.solver.epsilon);
    } catch (const std::exception& e) {
        std::cerr << "reference front generation failed: " << e.what() << '\n';
        return kExitFailure;
    }

    std::filesystem::create_directories(config.outputs);
    std::ofstream out(config.outputs / "compare.csv");
    out << "method,iterations_to_threshold,final_step_norm,wall_time_s,reached\n";
    for (Method method : config.compare_methods) {
        auto t0 = std::chrono::steady_clock::now();
        RunTrace trace = run_method(problem, config, method, x0);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        int iters_to = trace.iterations();
        bool reached = false;
        for (const auto& rec : trace.records) {
            if (u0_lower_bound(rec.F, ref) < config.compare_threshold) {
                iters_to = rec.k;
                reached = true;
                break;
            }
        }
        out << to_string(method) << ',' << iters_to << ','
            << format_double(trace.records.back().step_norm) << ',' << format_double(wall) << ','
            << (reached ? 1 : 0) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Accelerated proximal gradient solver for composite multiobjective problems"};
    app.require_subcommand(1);

    CliOverrides cli;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "experiment config JSON")->required();
        sub->add_option("--out", cli.out_dir, "output directory override");
        sub->add_option("--seed", cli.seed, "benchmark seed override");
        sub->add_flag("--emit-svg", cli.emit_svg, "emit SVG scatter of the front");
    };
    auto* solve = app.add_subcommand("solve", "run one solve, emit trace.csv and summary.json");
    auto* front = app.add_subcommand("front", "multi-start Pareto front, emit front.csv");
    auto* rate = app.add_subcommand("rate", "rate certificate, emit rate.csv and certificate.json");
    auto* compare = app.add_subcommand("compare", "method comparison, emit compare.csv");
    for (auto* sub : {solve, front, rate, compare}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(cli);
        if (front->parsed()) return cmd_front(cli);
        if (rate->parsed()) return cmd_rate(cli);
        if (compare->parsed()) return cmd_compare(cli);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitConfig;
}
