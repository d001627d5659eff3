#include "moapg/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace moapg {

std::string to_string(Method method) {
    switch (method) {
        case Method::Accelerated: return "accelerated";
        case Method::Pg: return "pg";
        case Method::Fista: return "fista";
    }
    return "?";
}

std::string to_string(StopRule rule) {
    return rule == StopRule::StepNorm ? "step-norm" : "subproblem-residual";
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::ToleranceMet: return "tolerance-met";
        case StopReason::MaxIters: return "max-iters";
        case StopReason::SubproblemFailure: return "subproblem-failure";
    }
    return "?";
}

namespace {

Vec vec_from_json(const json& j) {
    std::vector<double> v = j.get<std::vector<double>>();
    return Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json vec_to_json(const Vec& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Vec box_side_from_json(const json& j, int n) {
    if (j.is_number()) return Vec::Constant(n, j.get<double>());
    Vec v = vec_from_json(j);
    if (v.size() != n) throw std::invalid_argument("box bound dimension mismatch");
    return v;
}

NonsmoothTerm nonsmooth_from_json(const json& j, int n) {
    std::string kind = j.value("kind", "zero");
    if (kind == "zero") return NonsmoothTerm::zero();
    if (kind == "l1") return NonsmoothTerm::l1(j.at("weight").get<double>());
    if (kind == "box")
        return NonsmoothTerm::box(box_side_from_json(j.at("lower"), n),
                                  box_side_from_json(j.at("upper"), n));
    throw std::invalid_argument("unknown nonsmooth kind: " + kind);
}

}  // namespace

Problem problem_from_json(const json& j) {
    int n = j.at("n").get<int>();
    std::vector<SmoothObjective> smooth;
    std::vector<NonsmoothTerm> nonsmooth;
    for (const auto& obj : j.at("objectives")) {
        Mat Q(n, n);
        const auto& rows = obj.at("Q");
        if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("Q row count mismatch");
        for (int r = 0; r < n; ++r) {
            Vec row = vec_from_json(rows[r]);
            if (row.size() != n) throw std::invalid_argument("Q column count mismatch");
            Q.row(r) = row;
        }
        Vec b = obj.contains("b") ? vec_from_json(obj["b"]) : Vec::Zero(n);
        if (b.size() != n) throw std::invalid_argument("b dimension mismatch");
        double c = obj.value("c", 0.0);
        smooth.push_back(SmoothObjective::quadratic(Q, b, c));
        nonsmooth.push_back(obj.contains("nonsmooth") ? nonsmooth_from_json(obj["nonsmooth"], n)
                                                      : NonsmoothTerm::zero());
    }
    return Problem::make(n, std::move(smooth), std::move(nonsmooth));
}

namespace {

BenchmarkSpec benchmark_from_json(const json& j) {
    BenchmarkSpec spec = BenchmarkSpec::defaults(benchmark_from_string(j.at("name")));
    if (j.contains("n")) {
        spec.n = j["n"].get<int>();
        if (spec.name != BenchmarkName::JOS1 && spec.n != 2)
            throw std::invalid_argument("only JOS1 has a configurable dimension");
        spec.box_lower = Vec::Constant(spec.n, BenchmarkSpec::defaults(spec.name).box_lower[0]);
        spec.box_upper = Vec::Constant(spec.n, BenchmarkSpec::defaults(spec.name).box_upper[0]);
    }
    spec.l1_weight = j.value("l1_weight", spec.l1_weight);
    if (j.contains("box_lower")) spec.box_lower = box_side_from_json(j["box_lower"], spec.n);
    if (j.contains("box_upper")) spec.box_upper = box_side_from_json(j["box_upper"], spec.n);
    spec.num_starts = j.value("num_starts", spec.num_starts);
    spec.seed = j.value("seed", spec.seed);
    return spec;
}

json benchmark_to_json(const BenchmarkSpec& spec) {
    return json{{"name", to_string(spec.name)},
                {"n", spec.n},
                {"l1_weight", spec.l1_weight},
                {"box_lower", vec_to_json(spec.box_lower)},
                {"box_upper", vec_to_json(spec.box_upper)},
                {"num_starts", spec.num_starts},
                {"seed", spec.seed}};
}

}  // namespace

Problem ExperimentConfig::make_problem() const {
    if (benchmark) return moapg::make_problem(*benchmark);
    return *inline_problem;
}

void ExperimentConfig::resolve(double L) {
    if (s0_explicit) return;
    if (solver.alpha > 3.0)
        solver.s0 = 0.9 * (solver.alpha - 3.0) / ((solver.alpha - 2.0) * L);
    else
        solver.s0 = 0.9 / L;
    s0_explicit = true;
}

json ExperimentConfig::echo() const {
    json j;
    if (benchmark)
        j["problem"] = json{{"benchmark", benchmark_to_json(*benchmark)}};
    else
        j["problem"] = json{{"inline", inline_problem_json}};
    j["solver"] = json{{"alpha", solver.alpha},
                       {"s0", solver.s0},
                       {"epsilon", solver.epsilon},
                       {"max_iters", solver.max_iters},
                       {"stop_rule", to_string(solver.stop_rule)}};
    j["method"] = to_string(method);
    {
        json methods = json::array();
        for (Method m : compare_methods) methods.push_back(to_string(m));
        j["compare_methods"] = methods;
    }
    if (x0) j["x0"] = vec_to_json(*x0);
    j["outputs"] = outputs.string();
    j["emit_svg"] = emit_svg;
    j["compare_threshold"] = compare_threshold;
    j["deflate_R"] = deflate_R;
    j["reference_starts"] = reference_starts;
    return j;
}

ExperimentConfig parse_experiment_config(const json& j) {
    ExperimentConfig config;
    const auto& prob = j.at("problem");
    if (prob.contains("benchmark") == prob.contains("inline"))
        throw std::invalid_argument("config needs exactly one of problem.benchmark / problem.inline");
    if (prob.contains("benchmark")) {
        config.benchmark = benchmark_from_json(prob["benchmark"]);
    } else {
        config.inline_problem_json = prob["inline"];
        config.inline_problem = problem_from_json(prob["inline"]);
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        config.solver.alpha = s.value("alpha", config.solver.alpha);
        if (s.contains("s0")) {
            config.solver.s0 = s["s0"].get<double>();
            config.s0_explicit = true;
        }
        config.solver.epsilon = s.value("epsilon", config.solver.epsilon);
        config.solver.max_iters = s.value("max_iters", config.solver.max_iters);
        if (s.contains("stop_rule")) {
            std::string rule = s["stop_rule"].get<std::string>();
            if (rule == "step-norm") config.solver.stop_rule = StopRule::StepNorm;
            else if (rule == "subproblem-residual")
                config.solver.stop_rule = StopRule::SubproblemResidual;
            else throw std::invalid_argument("unknown stop_rule: " + rule);
        }
    }
    auto method_from_string = [](const std::string& m) {
        if (m == "accelerated") return Method::Accelerated;
        if (m == "pg") return Method::Pg;
        if (m == "fista") return Method::Fista;
        throw std::invalid_argument("unknown method: " + m);
    };
    if (j.contains("method")) config.method = method_from_string(j["method"]);
    if (j.contains("compare_methods")) {
        config.compare_methods.clear();
        for (const auto& m : j["compare_methods"])
            config.compare_methods.push_back(method_from_string(m));
        if (config.compare_methods.empty())
            throw std::invalid_argument("compare_methods must not be empty");
    }
    if (j.contains("x0")) config.x0 = vec_from_json(j["x0"]);
    config.outputs = j.value("outputs", std::string("."));
    config.emit_svg = j.value("emit_svg", false);
    config.compare_threshold = j.value("compare_threshold", 1e-6);
    config.deflate_R = j.value("deflate_R", 1.0);
    config.reference_starts = j.value("reference_starts", 200);
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path.string());
    json j = json::parse(in);
    return parse_experiment_config(j);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace_csv(std::ostream& os, const RunTrace& trace, int m) {
    os << "k,s_k,gamma_k";
    for (int i = 1; i <= m; ++i) os << ",F_" << i;
    os << ",step_norm,merit\n";
    for (const auto& rec : trace.records) {
        os << rec.k << ',' << format_double(rec.s) << ',' << format_double(rec.gamma);
        for (int i = 0; i < m; ++i) os << ',' << format_double(rec.F[i]);
        os << ',' << format_double(rec.step_norm) << ',';
        if (rec.merit) os << format_double(*rec.merit);
        os << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace, int m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_trace_csv(out, trace, m);
}

json summary_json(const ExperimentConfig& config, const RunTrace& trace) {
    json j;
    j["config"] = config.echo();
    j["stopping_reason"] = to_string(trace.stopping_reason);
    j["iterations"] = trace.iterations();
    j["final_point"] = vec_to_json(trace.final_point());
    j["final_F"] = vec_to_json(trace.records.back().F);
    return j;
}

void write_front_csv(std::ostream& os, const FrontResult& front, int n, int m,
                     bool nondominated_only) {
    for (int i = 1; i <= n; ++i) os << "x_" << i << ',';
    for (int i = 1; i <= m; ++i) os << "F_" << i << ',';
    os << "iterations\n";
    for (size_t r = 0; r < front.solutions.size(); ++r) {
        if (nondominated_only && !front.nondominated_mask[r]) continue;
        const auto& e = front.solutions[r];
        for (int i = 0; i < n; ++i) os << format_double(e.x_final[i]) << ',';
        for (int i = 0; i < m; ++i) os << format_double(e.F_final[i]) << ',';
        os << e.iterations << '\n';
    }
}

void write_front_svg(std::ostream& os, const FrontResult& front) {
    double lo0 = 0, hi0 = 1, lo1 = 0, hi1 = 1;
    bool first = true;
    for (size_t r = 0; r < front.solutions.size(); ++r) {
        if (!front.nondominated_mask[r]) continue;
        const Vec& F = front.solutions[r].F_final;
        if (first) {
            lo0 = hi0 = F[0];
            lo1 = hi1 = F[1];
            first = false;
        }
        lo0 = std::min(lo0, F[0]); hi0 = std::max(hi0, F[0]);
        lo1 = std::min(lo1, F[1]); hi1 = std::max(hi1, F[1]);
    }
    if (hi0 - lo0 < 1e-12) hi0 = lo0 + 1;
    if (hi1 - lo1 < 1e-12) hi1 = lo1 + 1;
    const double W = 640, H = 480, pad = 40;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
       << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
       << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\""
       << H - pad << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
       << "\" stroke=\"black\"/>\n";
    for (size_t r = 0; r < front.solutions.size(); ++r) {
        if (!front.nondominated_mask[r]) continue;
        const Vec& F = front.solutions[r].F_final;
        double px = pad + (F[0] - lo0) / (hi0 - lo0) * (W - 2 * pad);
        double py = H - pad - (F[1] - lo1) / (hi1 - lo1) * (H - 2 * pad);
        os << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"2\" fill=\"#1f77b4\"/>\n";
    }
    os << "</svg>\n";
}

void write_rate_csv(std::ostream& os, const RateCertificate& cert) {
    os << "k,u0_lower,bound\n";
    for (const auto& row : cert.series)
        os << row.k << ',' << format_double(row.u0_lower) << ',' << format_double(row.bound)
           << '\n';
}

json certificate_json(const RateCertificate& cert) {
    double a = cert.alpha;
    return json{{"R_hat", cert.R_hat},
                {"L", cert.L},
                {"alpha", a},
                {"violations", cert.violations},
                {"logged_k", cert.series.size()},
                {"constant_proof_form", cert.L * cert.R_hat},
                {"constant_statement_form", cert.L * (a - 1.0) * (a - 1.0) * cert.R_hat / 2.0}};
}

void write_reference_front_csv(std::ostream& os, const ReferenceFront& ref) {
    if (ref.size() == 0) throw std::invalid_argument("empty reference front");
    const int n = static_cast<int>(ref.points[0].size());
    const int m = static_cast<int>(ref.values[0].size());
    for (int i = 1; i <= n; ++i) os << "x_" << i << ',';
    for (int i = 1; i <= m; ++i) os << "F_" << i << (i < m ? "," : "\n");
    for (size_t r = 0; r < ref.size(); ++r) {
        for (int i = 0; i < n; ++i) os << format_double(ref.points[r][i]) << ',';
        for (int i = 0; i < m; ++i)
            os << format_double(ref.values[r][i]) << (i + 1 < m ? "," : "\n");
    }
}

json reference_front_sidecar(const ReferenceFront& ref) {
    return json{{"provenance", ref.provenance}, {"points", ref.size()}};
}

ReferenceFront read_reference_front_csv(std::istream& is, const std::string& provenance) {
    ReferenceFront ref;
    ref.provenance = provenance;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty reference front file");
    int n = 0, m = 0;
    {
        std::stringstream header(line);
        std::string col;
        while (std::getline(header, col, ',')) {
            if (col.rfind("x_", 0) == 0) ++n;
            else if (col.rfind("F_", 0) == 0) ++m;
        }
    }
    if (n == 0 || m == 0) throw std::runtime_error("malformed reference front header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        Vec x(n), F(m);
        for (int i = 0; i < n; ++i) {
            std::getline(row, cell, ',');
            x[i] = std::stod(cell);
        }
        for (int i = 0; i < m; ++i) {
            std::getline(row, cell, ',');
            F[i] = std::stod(cell);
        }
        ref.points.push_back(std::move(x));
        ref.values.push_back(std::move(F));
    }
    return ref;
}

}  // namespace moapg
