#include "nichol/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "nichol/errors.hpp"
#include "nichol/kernels.hpp"
#include "nichol/ordering.hpp"

namespace nichol {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Monotonic wall clock; floored at one tick so recorded phases are > 0.
template <typename F>
double time_call(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(t1 - t0).count();
    return s > 0.0 ? s : 1e-9;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::cg: return "cg";
        case Method::pcg: return "pcg";
        case Method::scg: return "scg";
        case Method::shcg: return "shcg";
        case Method::nn: return "nn";
        case Method::nnn: return "nnn";
    }
    return "?";
}

Method method_from_name(const std::string& s) {
    if (s == "cg") return Method::cg;
    if (s == "pcg") return Method::pcg;
    if (s == "scg") return Method::scg;
    if (s == "shcg") return Method::shcg;
    if (s == "nn") return Method::nn;
    if (s == "nnn") return Method::nnn;
    throw ConfigError("unknown method '" + s + "'");
}

std::string ordering_name(OrderingChoice o) {
    return o == OrderingChoice::natural ? "natural" : "rcm";
}

OrderingChoice ordering_from_name(const std::string& s) {
    if (s == "natural") return OrderingChoice::natural;
    if (s == "rcm") return OrderingChoice::rcm;
    throw ConfigError("unknown ordering '" + s + "'");
}

std::string setup_name(SetupOutcome s) {
    switch (s) {
        case SetupOutcome::ok: return "ok";
        case SetupOutcome::factor_breakdown: return "factor_breakdown";
        case SetupOutcome::not_applicable: return "not_applicable";
    }
    return "?";
}

double nfacts(double time_train_s, double time_ichol_s) {
    if (!(time_ichol_s > 0.0)) throw ConfigError("nfacts: nonpositive factorization time");
    return time_train_s / time_ichol_s;
}

MethodSetup build_method_setup(const CsrMatrix& a, const MethodSpec& spec) {
    MethodSetup s;
    if (spec.method == Method::cg) {
        s.outcome = SetupOutcome::not_applicable;
        return s;
    }

    if (spec.method == Method::nn || spec.method == Method::nnn) {
        TrainConfig cfg = spec.train;
        cfg.normalize_samples = (spec.method == Method::nnn);
        TrainState state;
        const double t_train = time_call([&] { state = train(a, cfg); });
        const double t_ichol = time_call([&] {
            try {
                ichol0(a);
            } catch (const BreakdownError&) {
                // a failed factorization still costs its time-to-failure
            }
        });
        s.cost = CostReport{t_train, t_ichol, nfacts(t_train, t_ichol)};
        s.factor = state.factor;
        s.precond = Preconditioner::llt(std::move(state.factor));
        s.outcome = SetupOutcome::ok;
        return s;
    }

    // pcg/scg/shcg: prepare and factor, capturing numerical setup failures.
    try {
        std::optional<ScalingInfo> scaling;
        if (spec.method == Method::pcg) {
            s.factored = a;
        } else {
            auto [scaled, d] = jacobi_scale(a);
            scaling = std::move(d);
            s.factored = (spec.method == Method::shcg) ? diagonal_shift(scaled, spec.shift)
                                                       : std::move(scaled);
        }
        LowerFactor l = ichol0(*s.factored);
        s.factor = l;
        s.precond = scaling ? Preconditioner::scaled_llt(std::move(l), std::move(*scaling))
                            : Preconditioner::llt(std::move(l));
        s.outcome = SetupOutcome::ok;
    } catch (const BreakdownError& e) {
        s.outcome = SetupOutcome::factor_breakdown;
        s.breakdown_row = e.row();
        s.breakdown_pivot = e.pivot();
    } catch (const NotPositiveDiagonalError& e) {
        s.outcome = SetupOutcome::factor_breakdown;
        s.breakdown_row = e.row();
        s.breakdown_pivot = e.value();
    }
    return s;
}

BenchRow run_method(const NamedMatrix& m, const MethodSpec& spec, const SolveConfig& cfg) {
    BenchRow row;
    row.matrix = m.name;
    row.n = m.matrix.n;
    row.nnz = m.matrix.nnz();
    row.sdd = check_sdd(m.matrix);
    row.method = spec.method;
    row.tol = spec.tol;
    row.ordering = spec.ordering;

    const CsrMatrix* system = &m.matrix;
    CsrMatrix reordered;
    if (spec.ordering == OrderingChoice::rcm) {
        reordered = symmetric_permute(m.matrix, rcm_order(m.matrix));
        system = &reordered;
    }

    MethodSetup setup = build_method_setup(*system, spec);
    row.setup = setup.outcome;
    row.cost = setup.cost;
    if (setup.outcome == SetupOutcome::factor_breakdown) {
        row.iterations = kBreakdownIterations;
        row.converged = false;
        return row;
    }

    const std::vector<double> b = make_rhs(*system);
    SolveConfig solve_cfg = cfg;
    solve_cfg.tol = spec.tol;
    auto [x, report] = cg_solve(*system, b, setup.precond, solve_cfg);
    row.iterations = report.iterations;
    row.converged = report.converged;
    return row;
}

SuiteResult run_suite(const std::vector<NamedMatrix>& matrices,
                      const std::vector<MethodSpec>& specs, const SolveConfig& cfg) {
    if (matrices.empty()) throw ConfigError("run_suite: no matrices");
    if (specs.empty()) throw ConfigError("run_suite: no method specs");

    SuiteResult result;
    result.rows.reserve(matrices.size() * specs.size());
    for (const NamedMatrix& m : matrices)
        for (const MethodSpec& spec : specs) result.rows.push_back(run_method(m, spec, cfg));

    std::sort(result.rows.begin(), result.rows.end(), [](const BenchRow& l, const BenchRow& r) {
        return std::tuple(l.matrix, static_cast<int>(l.method), l.tol,
                          static_cast<int>(l.ordering)) <
               std::tuple(r.matrix, static_cast<int>(r.method), r.tol,
                          static_cast<int>(r.ordering));
    });

    std::map<std::tuple<int, double, int>, MethodAverage> groups;
    for (const BenchRow& row : result.rows) {
        auto key = std::tuple(static_cast<int>(row.method), row.tol,
                              static_cast<int>(row.ordering));
        auto& avg = groups[key];
        avg.method = row.method;
        avg.tol = row.tol;
        avg.ordering = row.ordering;
        if (row.converged) {
            ++avg.converged_count;
            avg.avg_iterations += static_cast<double>(row.iterations);
        } else {
            ++avg.unconverged_count;
        }
    }
    for (auto& [key, avg] : groups) {
        if (avg.converged_count > 0)
            avg.avg_iterations /= static_cast<double>(avg.converged_count);
        result.averages.push_back(avg);
    }
    return result;
}

namespace {

constexpr const char* kReportHeader =
    "matrix,n,nnz,sdd,method,tol,ordering,iterations,converged,setup,nfacts,"
    "time_train_s,time_ichol_s";

}  // namespace

void emit_report(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) throw ConfigError("emit_report: no rows");
    std::vector<BenchRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const BenchRow& l, const BenchRow& r) {
        return std::tuple(l.matrix, static_cast<int>(l.method), l.tol,
                          static_cast<int>(l.ordering)) <
               std::tuple(r.matrix, static_cast<int>(r.method), r.tol,
                          static_cast<int>(r.ordering));
    });
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open report file: " + path.string());
    out << kReportHeader << "\n";
    for (const BenchRow& r : sorted) {
        out << r.matrix << "," << r.n << "," << r.nnz << "," << (r.sdd ? "true" : "false")
            << "," << method_name(r.method) << "," << fmt_double(r.tol) << ","
            << ordering_name(r.ordering) << "," << r.iterations << ","
            << (r.converged ? "true" : "false") << "," << setup_name(r.setup) << ",";
        if (r.cost) {
            out << fmt_double(r.cost->nfacts) << "," << fmt_double(r.cost->time_train_s) << ","
                << fmt_double(r.cost->time_ichol_s);
        } else {
            out << ",,";
        }
        out << "\n";
    }
}

std::vector<BenchRow> parse_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open report file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty report");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kReportHeader) throw ParseError(1, "unexpected report header");

    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        fields.push_back(cur);
        return fields;
    };
    auto parse_bool = [](const std::string& s, long lineno) {
        if (s == "true") return true;
        if (s == "false") return false;
        throw ParseError(lineno, "expected true/false, got '" + s + "'");
    };

    std::vector<BenchRow> rows;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line);
        if (f.size() != 13) throw ParseError(lineno, "expected 13 fields");
        BenchRow r;
        try {
            r.matrix = f[0];
            r.n = std::stoll(f[1]);
            r.nnz = std::stoll(f[2]);
            r.sdd = parse_bool(f[3], lineno);
            r.method = method_from_name(f[4]);
            r.tol = std::stod(f[5]);
            r.ordering = ordering_from_name(f[6]);
            r.iterations = std::stoll(f[7]);
            r.converged = parse_bool(f[8], lineno);
            if (f[9] == "ok")
                r.setup = SetupOutcome::ok;
            else if (f[9] == "factor_breakdown")
                r.setup = SetupOutcome::factor_breakdown;
            else if (f[9] == "not_applicable")
                r.setup = SetupOutcome::not_applicable;
            else
                throw ConfigError("unknown setup outcome '" + f[9] + "'");
            if (!f[10].empty())
                r.cost = CostReport{std::stod(f[11]), std::stod(f[12]), std::stod(f[10])};
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

CsrMatrix generate_laplacian(index_t nx, index_t ny, index_t nz) {
    if (nx < 2 || ny < 2 || nz < 1)
        throw ConfigError("generate_laplacian: grid sides must be >= 2");
    const bool three_d = nz > 1;
    const double diag = three_d ? 6.0 : 4.0;
    const index_t n = nx * ny * nz;

    CsrMatrix a;
    a.n = n;
    a.symmetric = true;
    a.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    auto idx = [&](index_t i, index_t j, index_t k) { return (k * ny + j) * nx + i; };

    for (index_t k = 0; k < nz; ++k) {
        for (index_t j = 0; j < ny; ++j) {
            for (index_t i = 0; i < nx; ++i) {
                // neighbors appended in increasing column order
                if (three_d && k > 0) {
                    a.col_idx.push_back(idx(i, j, k - 1));
                    a.values.push_back(-1.0);
                }
                if (j > 0) {
                    a.col_idx.push_back(idx(i, j - 1, k));
                    a.values.push_back(-1.0);
                }
                if (i > 0) {
                    a.col_idx.push_back(idx(i - 1, j, k));
                    a.values.push_back(-1.0);
                }
                a.col_idx.push_back(idx(i, j, k));
                a.values.push_back(diag);
                if (i + 1 < nx) {
                    a.col_idx.push_back(idx(i + 1, j, k));
                    a.values.push_back(-1.0);
                }
                if (j + 1 < ny) {
                    a.col_idx.push_back(idx(i, j + 1, k));
                    a.values.push_back(-1.0);
                }
                if (three_d && k + 1 < nz) {
                    a.col_idx.push_back(idx(i, j, k + 1));
                    a.values.push_back(-1.0);
                }
                a.row_ptr[static_cast<size_t>(idx(i, j, k)) + 1] =
                    static_cast<index_t>(a.col_idx.size());
            }
        }
    }
    return a;
}

}  // namespace nichol
