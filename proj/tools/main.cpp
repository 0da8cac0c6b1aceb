// Command-line harness: benchmark the preconditioner method matrix, train a
// factor, solve a single system, or run the incomplete factorization alone.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nichol/bench.hpp"
#include "nichol/errors.hpp"
#include "nichol/ichol.hpp"
#include "nichol/kernels.hpp"
#include "nichol/matrix_market.hpp"
#include "nichol/neural.hpp"
#include "nichol/ordering.hpp"

namespace {

using namespace nichol;

NamedMatrix load_matrix(const std::string& arg) {
    if (arg.rfind("laplacian:", 0) == 0) {
        std::string dims = arg.substr(10);
        index_t sides[3] = {0, 0, 1};
        int count = 0;
        size_t pos = 0;
        while (pos < dims.size() && count < 3) {
            size_t next = dims.find('x', pos);
            if (next == std::string::npos) next = dims.size();
            try {
                sides[count++] = std::stoll(dims.substr(pos, next - pos));
            } catch (const std::exception&) {
                throw ConfigError("bad laplacian spec '" + arg + "' (use laplacian:WxH[xD])");
            }
            pos = next + 1;
        }
        if (count < 2) throw ConfigError("bad laplacian spec '" + arg + "' (use laplacian:WxH[xD])");
        return {arg, generate_laplacian(sides[0], sides[1], sides[2])};
    }
    std::filesystem::path path(arg);
    return {path.stem().string(), read_matrix_market_file(path)};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    out << header << "\n";
    for (size_t i = 0; i < values.size(); ++i) out << i << "," << fmt(values[i]) << "\n";
}

int run_bench(const std::vector<std::string>& matrix_args, std::vector<std::string> method_names,
              std::vector<double> tols, const std::string& ordering_arg, double shift,
              const TrainConfig& train_cfg, index_t max_iters, bool sequential_timing,
              const std::string& out_path) {
    (void)sequential_timing;  // cells already execute one at a time

    std::vector<NamedMatrix> matrices;
    for (const auto& arg : matrix_args) matrices.push_back(load_matrix(arg));

    if (method_names.empty())
        method_names = {"cg", "pcg", "scg", "shcg", "nn", "nnn"};
    if (tols.empty()) tols = {1e-5, 1e-7};
    std::vector<OrderingChoice> orderings;
    if (ordering_arg == "both")
        orderings = {OrderingChoice::natural, OrderingChoice::rcm};
    else
        orderings = {ordering_from_name(ordering_arg)};

    std::vector<MethodSpec> specs;
    for (OrderingChoice ord : orderings) {
        for (const std::string& name : method_names) {
            for (double tol : tols) {
                MethodSpec spec;
                spec.method = method_from_name(name);
                spec.tol = tol;
                spec.ordering = ord;
                spec.shift = shift;
                spec.train = train_cfg;
                specs.push_back(spec);
            }
        }
    }

    SolveConfig cfg;
    cfg.max_iters = max_iters;
    SuiteResult result = run_suite(matrices, specs, cfg);
    emit_report(result.rows, out_path);

    std::printf("%zu rows written to %s\n", result.rows.size(), out_path.c_str());
    std::printf("%-6s %-10s %-8s %12s %10s %12s\n", "method", "tol", "ordering", "avg_iters",
                "converged", "unconverged");
    for (const MethodAverage& avg : result.averages) {
        std::printf("%-6s %-10g %-8s %12s %10lld %12lld\n", method_name(avg.method).c_str(),
                    avg.tol, ordering_name(avg.ordering).c_str(),
                    avg.converged_count > 0 ? fmt(avg.avg_iterations).substr(0, 10).c_str() : "-",
                    static_cast<long long>(avg.converged_count),
                    static_cast<long long>(avg.unconverged_count));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse preconditioner benchmark: trained incomplete-Cholesky factors "
                 "against classical ichol(0) variants inside PCG"};
    app.require_subcommand(1);

    // shared training knobs
    TrainConfig train_cfg;
    double alpha = 0.0;
    index_t samples = 0, epochs = 1;
    std::uint64_t seed = 0;

    auto add_train_flags = [&](CLI::App* cmd) {
        cmd->add_option("--samples", samples, "training sample count (default ceil(sqrt(N)))");
        cmd->add_option("--epochs", epochs, "passes over the sample set")->check(CLI::PositiveNumber);
        cmd->add_option("--alpha", alpha, "learning rate (default by normalization rule)");
        cmd->add_option("--seed", seed, "sample generator seed");
    };

    // bench
    auto* bench = app.add_subcommand("bench", "run the method matrix over a set of matrices");
    std::vector<std::string> matrix_args;
    std::string methods_arg;
    std::vector<double> tols;
    std::string ordering_arg = "natural";
    double shift = 0.2;
    index_t max_iters = 10000;
    bool sequential_timing = false;
    std::string out_path = "report.csv";
    bench->add_option("--matrix", matrix_args, "matrix file or laplacian:WxH[xD]")
        ->required()
        ->take_all();
    bench->add_option("--methods", methods_arg, "comma list of cg,pcg,scg,shcg,nn,nnn");
    bench->add_option("--tol", tols, "relative tolerance (repeatable; default 1e-5 and 1e-7)");
    bench->add_option("--ordering", ordering_arg, "natural, rcm, or both")
        ->check(CLI::IsMember({"natural", "rcm", "both"}));
    bench->add_option("--shift", shift, "diagonal shift for shcg (default 0.2)");
    bench->add_option("--max-iters", max_iters, "iteration cap (default 10000)");
    bench->add_flag("--sequential-timing", sequential_timing,
                    "keep timed cells off shared cores (runs are sequential)");
    bench->add_option("--out", out_path, "report CSV path");
    add_train_flags(bench);

    // train
    auto* train_cmd = app.add_subcommand("train", "train a factor and emit it with its loss trace");
    std::string train_matrix;
    bool normalize = false;
    std::string optimizer_arg = "adagrad";
    std::string out_factor = "factor.mtx";
    std::string out_loss = "loss.csv";
    train_cmd->add_option("--matrix", train_matrix, "matrix file or laplacian:WxH[xD]")->required();
    train_cmd->add_flag("--normalize", normalize, "normalize sample vectors to unit 2-norm");
    train_cmd->add_option("--optimizer", optimizer_arg, "adagrad or sgd")
        ->check(CLI::IsMember({"adagrad", "sgd"}));
    train_cmd->add_option("--out-factor", out_factor, "trained factor (Matrix Market)");
    train_cmd->add_option("--out-loss", out_loss, "loss history CSV");
    add_train_flags(train_cmd);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one system and print the report");
    std::string solve_matrix;
    std::string solve_method = "pcg";
    double solve_tol = 1e-5;
    std::string solve_ordering = "natural";
    std::string history_path;
    solve_cmd->add_option("--matrix", solve_matrix, "matrix file or laplacian:WxH[xD]")->required();
    solve_cmd->add_option("--method", solve_method, "cg,pcg,scg,shcg,nn,nnn");
    solve_cmd->add_option("--tol", solve_tol, "relative tolerance");
    solve_cmd->add_option("--ordering", solve_ordering, "natural or rcm")
        ->check(CLI::IsMember({"natural", "rcm"}));
    solve_cmd->add_option("--shift", shift, "diagonal shift for shcg");
    solve_cmd->add_option("--max-iters", max_iters, "iteration cap");
    solve_cmd->add_option("--history", history_path, "residual history CSV");
    add_train_flags(solve_cmd);

    // ichol
    auto* ichol_cmd = app.add_subcommand("ichol", "factor a matrix, or report the breakdown");
    std::string ichol_matrix;
    std::string ichol_out = "ichol.mtx";
    ichol_cmd->add_option("--matrix", ichol_matrix, "matrix file or laplacian:WxH[xD]")->required();
    ichol_cmd->add_option("--out", ichol_out, "factor output (Matrix Market)");

    CLI11_PARSE(app, argc, argv);

    try {
        train_cfg.sample_count = samples;
        train_cfg.epochs = epochs;
        train_cfg.seed = seed;
        if (alpha > 0.0) train_cfg.alpha = alpha;

        if (*bench) {
            std::vector<std::string> method_names;
            std::string cur;
            for (char c : methods_arg) {
                if (c == ',') {
                    if (!cur.empty()) method_names.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            if (!cur.empty()) method_names.push_back(cur);
            return run_bench(matrix_args, method_names, tols, ordering_arg, shift, train_cfg,
                             max_iters, sequential_timing, out_path);
        }

        if (*train_cmd) {
            NamedMatrix m = load_matrix(train_matrix);
            train_cfg.normalize_samples = normalize;
            train_cfg.optimizer = optimizer_arg == "sgd" ? Optimizer::sgd : Optimizer::adagrad;
            TrainState state = train(m.matrix, train_cfg);
            write_matrix_market_file(state.factor, out_factor);
            write_csv(out_loss, "iteration,loss", state.loss_history);
            std::printf("trained %s: n=%lld, %zu steps, loss %s -> %s\n", m.name.c_str(),
                        static_cast<long long>(m.matrix.n), state.loss_history.size(),
                        fmt(state.loss_history.front()).c_str(),
                        fmt(state.loss_history.back()).c_str());
            std::printf("factor written to %s, loss history to %s\n", out_factor.c_str(),
                        out_loss.c_str());
            return 0;
        }

        if (*solve_cmd) {
            NamedMatrix m = load_matrix(solve_matrix);
            MethodSpec spec;
            spec.method = method_from_name(solve_method);
            spec.tol = solve_tol;
            spec.ordering = ordering_from_name(solve_ordering);
            spec.shift = shift;
            spec.train = train_cfg;

            const CsrMatrix* system = &m.matrix;
            CsrMatrix reordered;
            if (spec.ordering == OrderingChoice::rcm) {
                reordered = symmetric_permute(m.matrix, rcm_order(m.matrix));
                system = &reordered;
            }
            MethodSetup setup = build_method_setup(*system, spec);
            if (setup.outcome == SetupOutcome::factor_breakdown) {
                std::printf("setup: factor_breakdown at row %lld (pivot %s); iterations %lld\n",
                            static_cast<long long>(*setup.breakdown_row),
                            fmt(*setup.breakdown_pivot).c_str(),
                            static_cast<long long>(kBreakdownIterations));
                return 0;
            }
            SolveConfig cfg;
            cfg.tol = solve_tol;
            cfg.max_iters = max_iters;
            cfg.record_history = !history_path.empty();
            std::vector<double> b = make_rhs(*system);
            auto [x, report] = cg_solve(*system, b, setup.precond, cfg);
            const char* reason = "";
            switch (report.breakdown) {
                case BreakdownReason::indefinite_curvature: reason = " (indefinite curvature)"; break;
                case BreakdownReason::stagnation: reason = " (stagnation)"; break;
                case BreakdownReason::singular_preconditioner: reason = " (singular preconditioner)"; break;
                case BreakdownReason::none: break;
            }
            std::printf("%s %s: iterations %lld, converged %s, relres %s%s\n", m.name.c_str(),
                        solve_method.c_str(), static_cast<long long>(report.iterations),
                        report.converged ? "true" : "false", fmt(report.final_relres).c_str(),
                        reason);
            if (!history_path.empty())
                write_csv(history_path, "iteration,relres", report.residual_history);
            return 0;
        }

        if (*ichol_cmd) {
            NamedMatrix m = load_matrix(ichol_matrix);
            try {
                LowerFactor l = ichol0(m.matrix);
                write_matrix_market_file(l, ichol_out);
                std::printf("factored %s: n=%lld, factor nnz=%lld, written to %s\n",
                            m.name.c_str(), static_cast<long long>(l.n()),
                            static_cast<long long>(l.nnz()), ichol_out.c_str());
            } catch (const BreakdownError& e) {
                std::printf("breakdown at row %lld, pivot %s (iterations sentinel %lld)\n",
                            static_cast<long long>(e.row()), fmt(e.pivot()).c_str(),
                            static_cast<long long>(kBreakdownIterations));
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
