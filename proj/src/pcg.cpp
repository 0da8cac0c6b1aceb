#include "nichol/pcg.hpp"

#include <cmath>

#include "nichol/errors.hpp"
#include "nichol/kernels.hpp"

namespace nichol {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double true_relres(const CsrMatrix& a, std::span<const double> x, std::span<const double> b,
                   double norm_b) {
    std::vector<double> r = spmv(a, x);
    for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return norm2(r) / norm_b;
}

}  // namespace

Preconditioner Preconditioner::llt(LowerFactor l) {
    Preconditioner p;
    p.kind = Kind::llt;
    p.factor = std::move(l);
    return p;
}

Preconditioner Preconditioner::scaled_llt(LowerFactor l, ScalingInfo d) {
    Preconditioner p;
    p.kind = Kind::scaled_llt;
    p.factor = std::move(l);
    p.scaling = std::move(d);
    return p;
}

std::vector<double> apply_preconditioner(const Preconditioner& m, std::span<const double> r) {
    switch (m.kind) {
        case Preconditioner::Kind::none:
            return std::vector<double>(r.begin(), r.end());
        case Preconditioner::Kind::llt:
            return upper_solve_transposed(m.factor, lower_solve(m.factor, r));
        case Preconditioner::Kind::scaled_llt: {
            std::vector<double> t(r.begin(), r.end());
            for (size_t i = 0; i < t.size(); ++i) t[i] *= m.scaling.d_inv_sqrt[i];
            t = upper_solve_transposed(m.factor, lower_solve(m.factor, t));
            for (size_t i = 0; i < t.size(); ++i) t[i] *= m.scaling.d_inv_sqrt[i];
            return t;
        }
    }
    return {};
}

std::pair<std::vector<double>, SolveReport> cg_solve(const CsrMatrix& a,
                                                     std::span<const double> b,
                                                     const Preconditioner& m,
                                                     const SolveConfig& cfg) {
    if (static_cast<index_t>(b.size()) != a.n)
        throw DimensionError("cg_solve: right-hand side length does not match matrix");
    if (!(cfg.tol > 0.0)) throw ConfigError("cg_solve: tol must be > 0");
    if (cfg.max_iters < 1) throw ConfigError("cg_solve: max_iters must be >= 1");

    const size_t n = b.size();
    SolveReport report;
    std::vector<double> x(n, 0.0);

    const double norm_b = norm2(b);
    if (norm_b == 0.0) {
        report.converged = true;
        return {std::move(x), std::move(report)};
    }
    if (cfg.record_history) report.residual_history.push_back(1.0);

    auto fail = [&](BreakdownReason why) {
        report.breakdown = why;
        report.converged = false;
        report.final_relres = true_relres(a, x, b, norm_b);
        return std::pair{x, report};
    };

    std::vector<double> r(b.begin(), b.end());
    std::vector<double> z;
    try {
        z = apply_preconditioner(m, r);
    } catch (const SingularFactorError&) {
        return fail(BreakdownReason::singular_preconditioner);
    }
    std::vector<double> p = z;
    double rz = dot(r, z);

    while (report.iterations < cfg.max_iters) {
        const std::vector<double> ap = spmv(a, p);
        const double pap = dot(p, ap);
        if (!std::isfinite(pap)) return fail(BreakdownReason::stagnation);
        if (pap <= 0.0) return fail(BreakdownReason::indefinite_curvature);
        const double alpha = rz / pap;
        if (!std::isfinite(alpha)) return fail(BreakdownReason::stagnation);

        for (size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        ++report.iterations;

        const double relres = norm2(r) / norm_b;
        if (cfg.record_history) report.residual_history.push_back(relres);
        if (!std::isfinite(relres)) return fail(BreakdownReason::stagnation);

        if (relres <= cfg.tol) {
            // Confirm against the residual recomputed from scratch; resync and
            // keep going if the recurrence drifted across the tolerance.
            std::vector<double> rt = spmv(a, x);
            for (size_t i = 0; i < n; ++i) rt[i] = b[i] - rt[i];
            const double true_rel = norm2(rt) / norm_b;
            if (true_rel <= cfg.tol) {
                report.converged = true;
                report.final_relres = true_rel;
                return {std::move(x), std::move(report)};
            }
            r = std::move(rt);
        }

        try {
            z = apply_preconditioner(m, r);
        } catch (const SingularFactorError&) {
            return fail(BreakdownReason::singular_preconditioner);
        }
        const double rz_next = dot(r, z);
        if (!std::isfinite(rz_next)) return fail(BreakdownReason::stagnation);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    report.converged = false;
    report.final_relres = true_relres(a, x, b, norm_b);
    return {std::move(x), std::move(report)};
}

std::vector<double> make_rhs(const CsrMatrix& a) {
    std::vector<double> ones(static_cast<size_t>(a.n), 1.0);
    return spmv(a, ones);
}

}  // namespace nichol
