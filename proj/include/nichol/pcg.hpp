#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nichol/csr.hpp"
#include "nichol/lower_factor.hpp"

namespace nichol {

struct SolveConfig {
    double tol = 1e-5;
    index_t max_iters = 10000;
    bool record_history = false;
};

enum class BreakdownReason { none, indefinite_curvature, stagnation, singular_preconditioner };

struct SolveReport {
    index_t iterations = 0;
    bool converged = false;
    double final_relres = 0.0;
    std::vector<double> residual_history;  // relres per iteration, starting at iteration 0
    BreakdownReason breakdown = BreakdownReason::none;
};

/// M = I, M = L L^T applied via two triangular solves, or
/// M = D^{1/2} L L^T D^{1/2} for factors built from a Jacobi-scaled matrix.
struct Preconditioner {
    enum class Kind { none, llt, scaled_llt };

    Kind kind = Kind::none;
    LowerFactor factor;
    ScalingInfo scaling;

    static Preconditioner identity() { return {}; }
    static Preconditioner llt(LowerFactor l);
    static Preconditioner scaled_llt(LowerFactor l, ScalingInfo d);
};

/// z = M^{-1} r. Throws SingularFactorError on a zero factor diagonal.
std::vector<double> apply_preconditioner(const Preconditioner& m, std::span<const double> r);

/// Preconditioned conjugate gradient with x0 = 0. Convergence test is
/// ||r_k||_2 / ||b||_2 <= tol after each update; the reported final_relres is
/// recomputed from scratch as ||b - A x||_2 / ||b||_2. Indefinite curvature,
/// stagnation, and a singular preconditioner are report outcomes, not
/// exceptions.
std::pair<std::vector<double>, SolveReport> cg_solve(const CsrMatrix& a,
                                                     std::span<const double> b,
                                                     const Preconditioner& m,
                                                     const SolveConfig& cfg);

/// b = A * ones(n), so the exact solution is the ones vector.
std::vector<double> make_rhs(const CsrMatrix& a);

}  // namespace nichol
