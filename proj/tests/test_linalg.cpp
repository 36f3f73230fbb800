#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thresec/linalg.hpp"
#include "thresec/opcount.hpp"

using namespace thresec;

namespace {

Matrix f2_kernel(const FieldPtr& f) {
    return Matrix::from_rows(f, {{1, 0}, {1, 1}});
}

Matrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c,
                     std::mt19937_64& rng) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() % f->order());
    return m;
}

}  // namespace

TEST_CASE("matmul identities") {
    auto f = Field::prime(5);
    std::mt19937_64 rng(1);
    Matrix a = random_matrix(f, 4, 6, rng);
    CHECK(a * Matrix::identity(f, 6) == a);
    Matrix zero(f, 3, 4);
    CHECK(zero * random_matrix(f, 4, 5, rng) == Matrix(f, 3, 5));
}

TEST_CASE("F2 kernel squared over GF(2) is the identity") {
    auto f = Field::prime(2);
    Matrix k = f2_kernel(f);
    CHECK(k * k == Matrix::identity(f, 2));
}

TEST_CASE("rank basics") {
    auto f2 = Field::prime(2);
    CHECK(rank(Matrix::identity(f2, 4)) == 4);
    Matrix z(f2, 3, 3);
    CHECK(rank(z) == 0);
    // two identical rows
    Matrix d = Matrix::from_rows(f2, {{1, 0, 1}, {1, 0, 1}});
    CHECK(rank(d) == 1);
}

TEST_CASE("rank(A) == rank(A^T) on random matrices") {
    std::mt19937_64 rng(7);
    for (auto f : {Field::prime(2), Field::prime(5), Field::binary(3)}) {
        for (int t = 0; t < 20; ++t) {
            std::size_t r = 1 + rng() % 32, c = 1 + rng() % 32;
            Matrix a = random_matrix(f, r, c, rng);
            CHECK(rank(a) == rank(a.transpose()));
        }
    }
}

TEST_CASE("solve_row: identity and round trip through F2^k2") {
    auto f = Field::prime(2);
    Vec b(f, {1, 0, 1, 1});
    CHECK(solve_row(Matrix::identity(f, 4), b) == b);

    Matrix k2 = kron_power(f2_kernel(f), 2);
    Vec x(f, {1, 1, 0, 1});
    Vec enc = x * k2;
    CHECK(solve_row(k2, enc) == x);
}

TEST_CASE("solve_row on random full-rank 6x6 over GF(5), verified by re-multiplication") {
    auto f = Field::prime(5);
    std::mt19937_64 rng(13);
    int solved = 0;
    while (solved < 10) {
        Matrix a = random_matrix(f, 6, 6, rng);
        if (rank(a) < 6) continue;
        Vec b(f, 6);
        for (auto& s : b.v) s = rng() % 5;
        Vec x = solve_row(a, b);
        CHECK(x * a == b);
        ++solved;
    }
}

TEST_CASE("solve_row error cases") {
    auto f = Field::prime(2);
    // Inconsistent: rows of A span only (1,1,0)-multiples.
    Matrix a = Matrix::from_rows(f, {{1, 1, 0}});
    CHECK_THROWS_AS(solve_row(a, Vec(f, {1, 0, 0})), InconsistentSystemError);
    // Underdetermined: 2 unknowns, rank 1, consistent rhs.
    Matrix u = Matrix::from_rows(f, {{1, 1}, {1, 1}});
    CHECK_THROWS_AS(solve_row(u, Vec(f, {1, 1})), UnderdeterminedError);
    CHECK_THROWS_AS(solve_row(u, Vec(f, {1, 0})), InconsistentSystemError);
}

TEST_CASE("kron_power structure") {
    auto f = Field::prime(2);
    Matrix k = f2_kernel(f);
    CHECK(kron_power(k, 1) == k);
    CHECK(kron_power(k, 0) == Matrix::identity(f, 1));

    Matrix k2 = kron_power(k, 2);
    std::vector<int> weights;
    for (std::size_t i = 0; i < 4; ++i) {
        int w = 0;
        for (std::size_t j = 0; j < 4; ++j) w += k2.get(i, j);
        weights.push_back(w);
    }
    CHECK(weights == std::vector<int>{1, 2, 2, 4});

    Matrix k3 = kron_power(k, 3);
    for (std::size_t j = 0; j < 8; ++j) CHECK(k3.get(7, j) == 1);  // last row all ones
    // lower-triangular with unit diagonal
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(k3.get(i, i) == 1);
        for (std::size_t j = i + 1; j < 8; ++j) CHECK(k3.get(i, j) == 0);
    }
}

TEST_CASE("vandermonde_inverse m=1 is [[1]]") {
    auto f = Field::prime(5);
    Matrix inv = vandermonde_inverse(f, {3});
    CHECK(inv.rows() == 1);
    CHECK(inv.get(0, 0) == 1);
}

namespace {

Matrix vandermonde(const FieldPtr& f, const std::vector<std::uint16_t>& pts) {
    Matrix v(f, pts.size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            v.set(i, j, f->pow(pts[j], i));
    return v;
}

}  // namespace

TEST_CASE("vandermonde_inverse: V^-1 * V == I on GF(5)") {
    auto f = Field::prime(5);
    std::vector<std::uint16_t> pts = {1, 2, 4};
    Matrix v = vandermonde(f, pts);
    CHECK(vandermonde_inverse(f, pts) * v == Matrix::identity(f, 3));
}

TEST_CASE("vandermonde_inverse agrees with Gaussian inverse entrywise") {
    // GF(8), consecutive alpha powers (the spec's RS evaluation points).
    auto f8 = Field::binary(3);
    std::vector<std::uint16_t> pts;
    for (int i = 0; i < 5; ++i)
        pts.push_back(static_cast<std::uint16_t>(f8->alpha_pow(i)));
    CHECK(vandermonde_inverse(f8, pts) == inverse_gauss(vandermonde(f8, pts)));

    // All m <= min(q-1, 12) over q in {5, 8, 17}.
    for (auto f : {Field::prime(5), Field::binary(3), Field::prime(17)}) {
        std::size_t maxm = std::min<std::size_t>(f->order() - 1, 12);
        for (std::size_t m = 1; m <= maxm; ++m) {
            std::vector<std::uint16_t> p;
            for (std::size_t i = 0; i < m; ++i)
                p.push_back(static_cast<std::uint16_t>(f->alpha_pow(i)));
            CHECK(vandermonde_inverse(f, p) == inverse_gauss(vandermonde(f, p)));
        }
    }
}

TEST_CASE("vandermonde_inverse rejects repeated points") {
    auto f = Field::prime(5);
    CHECK_THROWS_AS(vandermonde_inverse(f, {1, 2, 1}), SingularMatrixError);
}

TEST_CASE("vandermonde_inverse op count grows quadratically") {
    auto f = Field::binary(8);
    auto count_for = [&](std::size_t m) {
        std::vector<std::uint16_t> pts;
        for (std::size_t i = 0; i < m; ++i)
            pts.push_back(static_cast<std::uint16_t>(f->alpha_pow(i)));
        opcount::reset();
        vandermonde_inverse(f, pts);
        return opcount::total();
    };
    for (std::size_t m : {8u, 16u, 32u, 64u}) {
        double ratio = double(count_for(2 * m)) / double(count_for(m));
        CHECK(ratio <= 4.5);
    }
}

TEST_CASE("dimension and field mismatches are rejected") {
    auto f5 = Field::prime(5);
    auto f7 = Field::prime(7);
    Matrix a(f5, 2, 3), b(f5, 4, 2), c(f7, 3, 2);
    CHECK_THROWS_AS(a * b, DimensionError);
    CHECK_THROWS_AS(a * c, FieldMismatchError);
    CHECK_THROWS_AS(Vec(f5, 4) * a, DimensionError);
}
