#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "nichol/bench.hpp"
#include "nichol/dense.hpp"
#include "nichol/errors.hpp"
#include "nichol/ichol.hpp"
#include "nichol/kernels.hpp"
#include "nichol/pcg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace nichol;
using testutil::from_dense;

namespace {

double recomputed_relres(const CsrMatrix& a, const std::vector<double>& x,
                         const std::vector<double>& b) {
    std::vector<double> r = spmv(a, x);
    double rr = 0.0, bb = 0.0;
    for (size_t i = 0; i < r.size(); ++i) {
        const double d = b[i] - r[i];
        rr += d * d;
        bb += b[i] * b[i];
    }
    return std::sqrt(rr) / std::sqrt(bb);
}

}  // namespace

TEST_CASE("apply_preconditioner") {
    SUBCASE("identity kind returns r unchanged") {
        std::vector<double> r{1.0, -2.0, 3.0};
        CHECK(apply_preconditioner(Preconditioner::identity(), r) == r);
    }
    SUBCASE("dense Cholesky factor inverts the matrix") {
        CsrMatrix a = oracle::random_symmetric_csr(10, 3, 23);
        LowerFactor l = factor_from_dense_lower(chol_dense(to_dense(a)));
        std::vector<double> r = oracle::random_vector(10, 24);
        std::vector<double> z = apply_preconditioner(Preconditioner::llt(l), r);
        std::vector<double> expect = oracle::dense_solve(a, r);
        for (size_t i = 0; i < z.size(); ++i)
            CHECK(z[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    }
    SUBCASE("scaled variant with unit scaling equals the plain one") {
        CsrMatrix a = oracle::random_symmetric_csr(8, 2, 29);
        LowerFactor l = ichol0(a);
        ScalingInfo unit;
        unit.d_inv_sqrt.assign(8, 1.0);
        std::vector<double> r = oracle::random_vector(8, 30);
        CHECK(apply_preconditioner(Preconditioner::llt(l), r) ==
              apply_preconditioner(Preconditioner::scaled_llt(l, unit), r));
    }
    SUBCASE("zero factor diagonal throws") {
        LowerFactor l = ichol0(from_dense({{4, 2}, {2, 3}}));
        l.values[l.diag_pos(1)] = 0.0;
        CHECK_THROWS_AS(apply_preconditioner(Preconditioner::llt(l), std::vector<double>{1.0, 1.0}),
                        SingularFactorError);
    }
}

TEST_CASE("cg_solve") {
    SolveConfig cfg;

    SUBCASE("identity matrix converges in one step") {
        CsrMatrix eye = from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        std::vector<double> b{1.0, 2.0, 3.0};
        auto [x, rep] = cg_solve(eye, b, Preconditioner::identity(), cfg);
        CHECK(rep.iterations == 1);
        CHECK(rep.converged);
        CHECK(rep.final_relres <= 1e-15);
        for (size_t i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(b[i]));
    }
    SUBCASE("two distinct eigenvalues: at most two steps") {
        CsrMatrix a = from_dense({{1, 0}, {0, 2}});
        auto [x, rep] = cg_solve(a, std::vector<double>{1.0, 1.0}, Preconditioner::identity(), cfg);
        CHECK(rep.converged);
        CHECK(rep.iterations <= 2);
    }
    SUBCASE("k distinct eigenvalues terminate within k iterations") {
        for (int k = 1; k <= 5; ++k) {
            CsrMatrix a;
            a.n = 2 * k;
            a.row_ptr.push_back(0);
            for (int i = 0; i < 2 * k; ++i) {
                a.col_idx.push_back(i);
                a.values.push_back(1.0 + static_cast<double>(i % k));  // k distinct values
                a.row_ptr.push_back(i + 1);
            }
            SolveConfig tight;
            tight.tol = 1e-10;
            std::vector<double> b = oracle::random_vector(2 * k, 40 + static_cast<unsigned>(k));
            auto [x, rep] = cg_solve(a, b, Preconditioner::identity(), tight);
            CHECK(rep.converged);
            CHECK(rep.iterations <= k);
        }
    }
    SUBCASE("exact preconditioner: at most two iterations at tol 1e-12") {
        CsrMatrix a = oracle::random_symmetric_csr(50, 3, 55);
        LowerFactor l = factor_from_dense_lower(chol_dense(to_dense(a)));
        SolveConfig tight;
        tight.tol = 1e-12;
        auto [x, rep] = cg_solve(a, make_rhs(a), Preconditioner::llt(l), tight);
        CHECK(rep.converged);
        CHECK(rep.iterations <= 2);
    }
    SUBCASE("reported relres equals the recomputed one") {
        CsrMatrix a = generate_laplacian(9, 9);
        std::vector<double> b = make_rhs(a);
        auto [x, rep] = cg_solve(a, b, Preconditioner::llt(ichol0(a)), cfg);
        CHECK(rep.converged);
        CHECK(std::abs(rep.final_relres - recomputed_relres(a, x, b)) < 1e-12);
    }
    SUBCASE("iteration cap reached: not converged, relres recomputed") {
        CsrMatrix a = generate_laplacian(16, 16);
        SolveConfig capped;
        capped.tol = 1e-12;
        capped.max_iters = 3;
        auto [x, rep] = cg_solve(a, make_rhs(a), Preconditioner::identity(), capped);
        CHECK_FALSE(rep.converged);
        CHECK(rep.iterations == 3);
        CHECK(rep.final_relres == doctest::Approx(recomputed_relres(a, x, make_rhs(a))));
    }
    SUBCASE("zero right-hand side is exact at zero iterations") {
        CsrMatrix a = generate_laplacian(3, 3);
        auto [x, rep] = cg_solve(a, std::vector<double>(9, 0.0), Preconditioner::identity(), cfg);
        CHECK(rep.converged);
        CHECK(rep.iterations == 0);
        for (double xi : x) CHECK(xi == 0.0);
    }
    SUBCASE("indefinite matrix reports indefinite curvature") {
        CsrMatrix a = from_dense({{1, 0}, {0, -1}});
        auto [x, rep] = cg_solve(a, std::vector<double>{0.0, 1.0}, Preconditioner::identity(), cfg);
        CHECK_FALSE(rep.converged);
        CHECK(rep.breakdown == BreakdownReason::indefinite_curvature);
    }
    SUBCASE("non-finite matrix entries surface as stagnation") {
        CsrMatrix a = from_dense({{1, 0}, {0, 1}});
        a.values[1] = std::numeric_limits<double>::quiet_NaN();
        auto [x, rep] = cg_solve(a, std::vector<double>{1.0, 1.0}, Preconditioner::identity(), cfg);
        CHECK_FALSE(rep.converged);
        CHECK(rep.breakdown == BreakdownReason::stagnation);
    }
    SUBCASE("singular preconditioner is a report outcome, not an exception") {
        CsrMatrix a = from_dense({{4, 2}, {2, 3}});
        LowerFactor l = ichol0(a);
        l.values[l.diag_pos(0)] = 0.0;
        auto [x, rep] = cg_solve(a, make_rhs(a), Preconditioner::llt(l), cfg);
        CHECK_FALSE(rep.converged);
        CHECK(rep.breakdown == BreakdownReason::singular_preconditioner);
    }
    SUBCASE("residual history starts at one and tracks every update") {
        CsrMatrix a = generate_laplacian(6, 6);
        SolveConfig hist;
        hist.record_history = true;
        auto [x, rep] = cg_solve(a, make_rhs(a), Preconditioner::identity(), hist);
        REQUIRE(rep.converged);
        CHECK(rep.residual_history.size() == static_cast<size_t>(rep.iterations) + 1);
        CHECK(rep.residual_history.front() == 1.0);
        CHECK(rep.residual_history.back() <= hist.tol);
    }
}

TEST_CASE("make_rhs") {
    SUBCASE("identity gives ones") {
        CsrMatrix eye = from_dense({{1, 0}, {0, 1}});
        CHECK(make_rhs(eye) == std::vector<double>{1.0, 1.0});
    }
    SUBCASE("forced 2x2") {
        CHECK(make_rhs(from_dense({{2, 1}, {1, 2}})) == std::vector<double>{3.0, 3.0});
    }
    SUBCASE("solving recovers the ones vector") {
        for (std::uint64_t seed : {70u, 71u, 72u}) {
            CsrMatrix a = oracle::random_symmetric_csr(10, 3, seed);
            std::vector<double> b = make_rhs(a);
            // dense oracle agrees that the solution is ones
            std::vector<double> xd = oracle::dense_solve(a, b);
            for (double xi : xd) CHECK(xi == doctest::Approx(1.0).epsilon(1e-8));

            SolveConfig tight;
            tight.tol = 1e-10;
            auto [x, rep] = cg_solve(a, b, Preconditioner::llt(ichol0(a)), tight);
            REQUIRE(rep.converged);
            for (double xi : x) CHECK(std::abs(xi - 1.0) <= 1e-6);
        }
    }
}

TEST_CASE("unit-diagonal systems: scaled and plain pipelines agree") {
    // with a unit diagonal, jacobi scaling is the identity, so the scg
    // pipeline must report the same iteration count as the pcg pipeline
    CsrMatrix base = oracle::random_symmetric_csr(30, 3, 81);
    auto [a, ignore] = jacobi_scale(base);  // unit-diagonal SPD input

    SolveConfig cfg;
    std::vector<double> b = make_rhs(a);

    auto [x1, plain] = cg_solve(a, b, Preconditioner::llt(ichol0(a)), cfg);

    auto [scaled, d] = jacobi_scale(a);
    auto [x2, viascale] = cg_solve(a, b, Preconditioner::scaled_llt(ichol0(scaled), d), cfg);

    CHECK(plain.converged);
    CHECK(viascale.converged);
    CHECK(plain.iterations == viascale.iterations);
}
