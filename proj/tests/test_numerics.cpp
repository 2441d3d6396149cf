#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "colliq/numerics.hpp"
#include "support.hpp"

using namespace colliq;
using testsupport::naive_matmul;

namespace {

CMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = rng.complex_gaussian();
        }
    }
    return m;
}

} // namespace

TEST_CASE("matmul identity and involution") {
    const CMatrix m = random_matrix(2, 2, 7);
    CHECK(CMatrix::identity(2) * m == m);
    const CMatrix swap(2, 2, {0.0, 1.0, 1.0, 0.0});
    CHECK(swap * swap == CMatrix::identity(2));
}

TEST_CASE("matmul agrees with the triple-loop oracle") {
    const CMatrix a = random_matrix(3, 3, 11);
    const CMatrix b = random_matrix(3, 3, 12);
    CHECK(max_abs_diff(a * b, naive_matmul(a, b)) <= 1e-14);
}

TEST_CASE("matmul rejects mismatched inner dimensions") {
    CHECK_THROWS_AS(random_matrix(2, 3, 1) * random_matrix(2, 3, 2), DimensionError);
}

TEST_CASE("adjoint basics") {
    const CMatrix imag(1, 1, {Complex{0.0, 1.0}});
    CHECK(adjoint(imag)(0, 0) == Complex{0.0, -1.0});

    const CMatrix sym(2, 2, {1.0, 2.0, 2.0, 3.0});
    CHECK(adjoint(sym) == sym);

    const CMatrix m = random_matrix(4, 2, 17);
    const CMatrix ma = adjoint(m);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(ma(j, i) == std::conj(m(i, j))); // index-swap oracle
        }
    }
    CHECK(adjoint(ma) == m);
}

TEST_CASE("adjoint reverses products") {
    const CMatrix a = random_matrix(3, 4, 5);
    const CMatrix b = random_matrix(4, 2, 6);
    CHECK(max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)) <= 1e-14);
}

TEST_CASE("solve trivial cases") {
    const CMatrix m = random_matrix(3, 2, 21);
    CHECK(max_abs_diff(solve(CMatrix::identity(3), m), m) <= 1e-15);
    const CMatrix half = solve(2.0 * CMatrix::identity(2), CMatrix::identity(2));
    CHECK(max_abs_diff(half, 0.5 * CMatrix::identity(2)) <= 1e-15);
}

TEST_CASE("solve residual on random well-conditioned systems") {
    // Unitary plus a multiple of the identity stays far from singular.
    const CMatrix a = haar_unitary(6, 33) + 2.0 * CMatrix::identity(6);
    const CMatrix b = random_matrix(6, 3, 34);
    const CMatrix x = solve(a, b);
    CHECK(frobenius_norm(a * x - b) <= 1e-10 * (1.0 + frobenius_norm(b)));
}

TEST_CASE("solve recovers a known solution") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const std::size_t n = 2 + seed * 2; // up to 16
        const CMatrix a = haar_unitary(n, 100 + seed) + 1.5 * CMatrix::identity(n);
        const CMatrix x_true = random_matrix(n, 2, 200 + seed);
        const CMatrix x = solve(a, a * x_true);
        CHECK(max_abs_diff(x, x_true) <= 1e-9 * (1.0 + max_abs(x_true)));
    }
}

TEST_CASE("solve reports singularity with a condition estimate") {
    const CMatrix singular(2, 2, {1.0, 2.0, 2.0, 4.0});
    CHECK_THROWS_AS(solve(singular, CMatrix::identity(2)), SingularMatrixError);
    try {
        solve(CMatrix(3, 3), CMatrix::identity(3));
        FAIL("zero matrix must be singular");
    } catch (const SingularMatrixError& e) {
        CHECK(e.condition_estimate > 1e12);
    }
}

TEST_CASE("frobenius norm values") {
    CHECK(frobenius_norm(CMatrix(3, 3)) == 0.0);
    CHECK(frobenius_norm(CMatrix::identity(4)) == doctest::Approx(2.0).epsilon(1e-15));
    const CMatrix row(1, 2, {3.0, Complex{0.0, 4.0}});
    CHECK(frobenius_norm(row) == doctest::Approx(5.0).epsilon(1e-15)); // sqrt(9 + 16)
}

TEST_CASE("haar unitary is deterministic and unitary") {
    CHECK(haar_unitary(5, 77) == haar_unitary(5, 77));
    const CMatrix u1 = haar_unitary(1, 3);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) <= 1e-14);
    for (std::size_t dim = 1; dim <= 16; ++dim) {
        const CMatrix u = haar_unitary(dim, 40 + dim);
        CHECK(frobenius_norm(adjoint(u) * u - CMatrix::identity(dim)) <= 1e-12);
    }
    const CMatrix u8 = haar_unitary(8, 9);
    for (std::size_t j = 0; j < 8; ++j) {
        const double col = frobenius_norm(submatrix(u8, 0, 8, j, j + 1));
        CHECK(std::abs(col - 1.0) <= 1e-12);
    }
}

TEST_CASE("product associativity on random instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 2 + (seed % 15); // up to 16
        const CMatrix a = random_matrix(n, n, 300 + seed);
        const CMatrix b = random_matrix(n, n, 400 + seed);
        const CMatrix c = random_matrix(n, n, 500 + seed);
        const double scale = frobenius_norm(a) * frobenius_norm(b) * frobenius_norm(c);
        CHECK(frobenius_norm((a * b) * c - a * (b * c)) <= 1e-12 * scale);
    }
}

TEST_CASE("zero-sized matrices behave as empty operators") {
    const CMatrix row(1, 0);
    const CMatrix col(0, 1);
    const CMatrix product = row * col;
    CHECK(product.rows() == 1);
    CHECK(product.cols() == 1);
    CHECK(product(0, 0) == Complex{0.0});
    CHECK(frobenius_norm(CMatrix(0, 0)) == 0.0);
}

TEST_CASE("real_gram unwraps and guards") {
    const CMatrix col = random_matrix(4, 1, 8);
    const double gram = real_gram(adjoint(col) * col);
    CHECK(gram == doctest::Approx(frobenius_norm(col) * frobenius_norm(col)).epsilon(1e-12));
    CHECK_THROWS_AS(real_gram(CMatrix(1, 1, {Complex{1.0, 0.5}})), ArgumentError);
    CHECK_THROWS_AS(real_gram(CMatrix(2, 2)), DimensionError);
}
