#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nichol/csr.hpp"
#include "nichol/ichol.hpp"
#include "nichol/neural.hpp"
#include "nichol/pcg.hpp"

namespace nichol {

/// The benchmarked method matrix: plain CG, PCG with ichol0, the scaled and
/// scaled+shifted variants, and the two trained-factor methods (nn trains on
/// raw samples, nnn on normalized ones).
enum class Method { cg, pcg, scg, shcg, nn, nnn };

enum class OrderingChoice { natural, rcm };

std::string method_name(Method m);
Method method_from_name(const std::string& s);
std::string ordering_name(OrderingChoice o);
OrderingChoice ordering_from_name(const std::string& s);

struct MethodSpec {
    Method method = Method::cg;
    double tol = 1e-5;
    OrderingChoice ordering = OrderingChoice::natural;
    double shift = 0.2;       // shcg only
    TrainConfig train;        // nn/nnn only; normalize_samples is forced per method
};

enum class SetupOutcome { ok, factor_breakdown, not_applicable };

std::string setup_name(SetupOutcome s);

/// Training cost as a multiple of one incomplete factorization.
struct CostReport {
    double time_train_s = 0.0;
    double time_ichol_s = 0.0;
    double nfacts = 0.0;
};

/// time_train / time_ichol. Throws ConfigError on a nonpositive denominator.
double nfacts(double time_train_s, double time_ichol_s);

/// Sentinel iteration count recorded when the factorization breaks down.
inline constexpr index_t kBreakdownIterations = -100;

struct BenchRow {
    std::string matrix;
    index_t n = 0;
    index_t nnz = 0;
    bool sdd = false;
    Method method = Method::cg;
    double tol = 1e-5;
    OrderingChoice ordering = OrderingChoice::natural;
    index_t iterations = 0;  // kBreakdownIterations when setup broke down
    bool converged = false;
    SetupOutcome setup = SetupOutcome::not_applicable;
    std::optional<CostReport> cost;
};

struct NamedMatrix {
    std::string name;
    CsrMatrix matrix;
};

/// Everything run_method builds before solving; exposed so tests can inspect
/// the matrix that was actually handed to the factorization.
struct MethodSetup {
    Preconditioner precond;
    SetupOutcome outcome = SetupOutcome::not_applicable;
    std::optional<CsrMatrix> factored;   // matrix given to ichol0 (pcg/scg/shcg)
    std::optional<LowerFactor> factor;
    std::optional<index_t> breakdown_row;
    std::optional<double> breakdown_pivot;
    std::optional<CostReport> cost;      // nn/nnn only
};

/// Builds the per-method pipeline on an already-ordered matrix:
///   cg: none; pcg: ichol0(A); scg: scale then ichol0; shcg: scale, shift,
///   ichol0, preconditioner applied for the unshifted scaled system;
///   nn/nnn: train and use L L^T of the result.
/// ichol0 breakdown is captured as an outcome, never an escaping exception.
MethodSetup build_method_setup(const CsrMatrix& a, const MethodSpec& spec);

/// Runs one (matrix, method) cell: RCM ordering (if requested) is applied
/// before everything with the right-hand side permuted consistently, then
/// setup, then PCG with b = A * ones.
BenchRow run_method(const NamedMatrix& m, const MethodSpec& spec, const SolveConfig& cfg);

/// Per-(method, tol, ordering) average iterations over converged rows.
struct MethodAverage {
    Method method = Method::cg;
    double tol = 1e-5;
    OrderingChoice ordering = OrderingChoice::natural;
    index_t converged_count = 0;
    index_t unconverged_count = 0;
    double avg_iterations = 0.0;  // meaningful only when converged_count > 0
};

struct SuiteResult {
    std::vector<BenchRow> rows;
    std::vector<MethodAverage> averages;
};

/// Cross product of matrices and specs. Per-row failures are recorded, never
/// abort the suite. Rows come back sorted by (matrix, method, tol).
SuiteResult run_suite(const std::vector<NamedMatrix>& matrices,
                      const std::vector<MethodSpec>& specs, const SolveConfig& cfg);

/// CSV with header
///   matrix,n,nnz,sdd,method,tol,ordering,iterations,converged,setup,nfacts,time_train_s,time_ichol_s
/// one row per BenchRow, floats printed round-trip exact.
void emit_report(const std::vector<BenchRow>& rows, const std::filesystem::path& path);

/// Parses a CSV produced by emit_report. Lossless round trip.
std::vector<BenchRow> parse_report(const std::filesystem::path& path);

/// 5-point (2D, diagonal 4) or 7-point (3D, diagonal 6) Dirichlet Laplacian;
/// off-diagonals -1. Grid sides must be >= 2 (pass nz = 1 for 2D).
CsrMatrix generate_laplacian(index_t nx, index_t ny, index_t nz = 1);

}  // namespace nichol
