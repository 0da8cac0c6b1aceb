#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nichol/dense.hpp"
#include "nichol/errors.hpp"
#include "nichol/ichol.hpp"
#include "nichol/kernels.hpp"
#include "nichol/lower_factor.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace nichol;
using testutil::from_dense;

TEST_CASE("ichol0 equals exact Cholesky when nothing is dropped") {
    SUBCASE("2x2") {
        LowerFactor l = ichol0(from_dense({{4, 2}, {2, 3}}));
        CHECK(l.values[0] == 2.0);
        CHECK(l.values[1] == 1.0);
        CHECK(l.values[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        // L L^T reproduces A exactly at n=2
        DenseMatrix ld = to_dense(csr_from_factor(l));
        DenseMatrix a = to_dense(from_dense({{4, 2}, {2, 3}}));
        for (index_t i = 0; i < 2; ++i)
            for (index_t j = 0; j < 2; ++j) {
                double llt = ld.at(i, 0) * ld.at(j, 0) + ld.at(i, 1) * ld.at(j, 1);
                CHECK(llt == doctest::Approx(a.at(i, j)).epsilon(1e-15));
            }
    }
    SUBCASE("diagonal matrix") {
        LowerFactor l = ichol0(from_dense({{4, 0, 0}, {0, 9, 0}, {0, 0, 0.25}}));
        CHECK(l.values == std::vector<double>{2.0, 3.0, 0.5});
    }
    SUBCASE("tridiagonal n=10 matches the dense factor entrywise") {
        CsrMatrix a = testutil::tridiagonal_spd(10);
        LowerFactor l = ichol0(a);
        DenseMatrix ld = chol_dense(to_dense(a));
        for (index_t i = 0; i < 10; ++i)
            for (index_t k = l.pattern.row_ptr[i]; k < l.pattern.row_ptr[i + 1]; ++k) {
                index_t j = l.pattern.col_idx[static_cast<size_t>(k)];
                CHECK(l.values[static_cast<size_t>(k)] ==
                      doctest::Approx(ld.at(i, j)).epsilon(1e-13));
            }
    }
}

TEST_CASE("ichol0 breakdown on the Kershaw matrix") {
    CsrMatrix a = testutil::kershaw_matrix();

    // the matrix itself is SPD: dense Cholesky succeeds
    CHECK_NOTHROW(chol_dense(to_dense(a)));

    // the dropped-fill recurrence, replayed densely, pins down where the
    // incomplete factorization must fail
    oracle::Ic0Replay replay = oracle::ic0_dense_replay(to_dense(a), extract_lower_pattern(a));
    REQUIRE(replay.broke);
    CHECK(replay.row == 3);
    CHECK(replay.pivot == doctest::Approx(-5.0).epsilon(1e-12));

    try {
        ichol0(a);
        FAIL("expected breakdown");
    } catch (const BreakdownError& e) {
        CHECK(e.row() == replay.row);
        CHECK(e.pivot() == doctest::Approx(replay.pivot).epsilon(1e-12));
    }
}

TEST_CASE("ichol0 breaks down exactly when the dense replay does") {
    // Sweep dominance from comfortable to broken; outcomes must agree with the
    // oracle at every point, including the failing row.
    for (double dominance : {1.5, 1.05, 0.8, 0.5, 0.2, 0.05}) {
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            CsrMatrix a = oracle::random_symmetric_csr(25, 4, seed, dominance);
            oracle::Ic0Replay replay =
                oracle::ic0_dense_replay(to_dense(a), extract_lower_pattern(a));
            if (replay.broke) {
                try {
                    ichol0(a);
                    FAIL("expected breakdown for dominance ", dominance, " seed ", seed);
                } catch (const BreakdownError& e) {
                    CHECK(e.row() == replay.row);
                    CHECK(e.pivot() == doctest::Approx(replay.pivot).epsilon(1e-10));
                }
            } else {
                LowerFactor l = ichol0(a);
                // factor agrees with the replayed recurrence everywhere
                for (index_t i = 0; i < a.n; ++i)
                    for (index_t k = l.pattern.row_ptr[i]; k < l.pattern.row_ptr[i + 1]; ++k) {
                        index_t j = l.pattern.col_idx[static_cast<size_t>(k)];
                        CHECK(l.values[static_cast<size_t>(k)] ==
                              doctest::Approx(replay.factor.at(i, j)).epsilon(1e-10));
                    }
            }
        }
    }
}

TEST_CASE("ichol0 diagonal is strictly positive on success") {
    CsrMatrix a = oracle::random_symmetric_csr(40, 3, 77);
    LowerFactor l = ichol0(a);
    for (index_t i = 0; i < a.n; ++i) CHECK(l.diag(i) > 0.0);
}

TEST_CASE("ichol0 under the identity permutation is unchanged") {
    CsrMatrix a = oracle::random_symmetric_csr(15, 2, 5);
    LowerFactor l1 = ichol0(a);
    LowerFactor l2 = ichol0(symmetric_permute(a, Permutation::identity(15)));
    CHECK(l1.pattern == l2.pattern);
    CHECK(l1.values == l2.values);
}

TEST_CASE("chol_dense") {
    SUBCASE("identity") {
        DenseMatrix eye(3);
        for (index_t i = 0; i < 3; ++i) eye.at(i, i) = 1.0;
        DenseMatrix l = chol_dense(eye);
        for (index_t i = 0; i < 3; ++i)
            for (index_t j = 0; j < 3; ++j) CHECK(l.at(i, j) == (i == j ? 1.0 : 0.0));
    }
    SUBCASE("2x2") {
        DenseMatrix l = chol_dense(to_dense(from_dense({{4, 2}, {2, 3}})));
        CHECK(l.at(0, 0) == 2.0);
        CHECK(l.at(1, 0) == 1.0);
        CHECK(l.at(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("non-SPD input throws") {
        CHECK_THROWS_AS(chol_dense(to_dense(from_dense({{1, 2}, {2, 1}}))), NotSpdError);
    }
}

TEST_CASE("no-fill structures: ichol0 equals the dense factor") {
    // exact Cholesky of a tridiagonal matrix has no fill, so the incomplete
    // factor must coincide with the dense one
    for (index_t n : {3, 17, 64}) {
        CsrMatrix a = testutil::tridiagonal_spd(n, 3.0, -1.2);
        LowerFactor l = ichol0(a);
        DenseMatrix ld = chol_dense(to_dense(a));
        for (index_t i = 0; i < n; ++i)
            for (index_t k = l.pattern.row_ptr[i]; k < l.pattern.row_ptr[i + 1]; ++k) {
                index_t j = l.pattern.col_idx[static_cast<size_t>(k)];
                CHECK(l.values[static_cast<size_t>(k)] ==
                      doctest::Approx(ld.at(i, j)).epsilon(1e-12));
            }
    }
}
