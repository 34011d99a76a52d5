#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "syzygy/matrix.hpp"
#include "testutil.hpp"

using namespace artin;

namespace {

Matrix make(std::initializer_list<std::initializer_list<int>> rows, std::uint32_t p) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    Matrix m(r, c, p);
    std::size_t i = 0;
    for (auto& row : rows) {
        std::size_t j = 0;
        for (int v : row) m(i, j++) = mod_reduce(v, p);
        ++i;
    }
    return m;
}

} // namespace

TEST_CASE("row reduction on the stated examples", "[linalg]") {
    auto id = Matrix::identity(2, 5);
    auto r = row_reduce(id);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.rref == id);

    auto zero = Matrix(3, 4, 5);
    auto rz = row_reduce(zero);
    CHECK(rz.rank == 0);
    CHECK(rz.pivots.empty());

    // second row is twice the first mod 5
    auto dep = make({{1, 2}, {2, 4}}, 5);
    auto rd = row_reduce(dep);
    CHECK(rd.rank == 1);
    CHECK(rd.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel bases", "[linalg]") {
    CHECK(Matrix::identity(3, 5).kernel_basis().cols() == 0);
    CHECK(Matrix(4, 4, 3).kernel_basis() == Matrix::identity(4, 3));

    auto m = make({{1, 2}}, 5);
    Matrix k = m.kernel_basis();
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == 3); // (-2, 1) = (3, 1) mod 5
    CHECK(k(1, 0) == 1);
    CHECK((m * k).is_zero());
}

TEST_CASE("solve", "[linalg]") {
    Vec b{2, 3, 1};
    auto sol = Matrix::identity(3, 5).solve(b);
    REQUIRE(sol);
    CHECK(*sol == b);

    CHECK_FALSE(Matrix(2, 2, 5).solve(Vec{1, 0}).has_value());

    auto two = make({{2}}, 5);
    auto s = two.solve(Vec{1});
    REQUIRE(s);
    CHECK(*s == Vec{3}); // 2 * 3 = 6 = 1 mod 5
}

TEST_CASE("invertibility", "[linalg]") {
    CHECK(Matrix::identity(4, 3).is_invertible());
    CHECK_FALSE(Matrix(2, 2, 3).is_invertible());
    CHECK_FALSE(make({{1, 2}, {2, 4}}, 5).is_invertible());
    CHECK_THROWS_AS(Matrix(2, 3, 5).is_invertible(), dimension_mismatch);
}

TEST_CASE("modulus mismatch is rejected", "[linalg]") {
    CHECK_THROWS_AS(Matrix(2, 2, 3) * Matrix(2, 2, 5), modulus_mismatch);
    CHECK_THROWS_AS(Matrix(2, 2, 3) + Matrix(2, 2, 5), modulus_mismatch);
}

TEST_CASE("randomized elimination properties", "[linalg]") {
    std::mt19937_64 rng(20240811);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t rows = rng() % 7, cols = rng() % 7;
            Matrix m = testutil::random_matrix(rows, cols, p, rng);

            auto r = row_reduce(m);
            Matrix k = m.kernel_basis();
            CHECK(r.rank + k.cols() == cols);
            if (rows && cols) CHECK((m * k).is_zero());
            // idempotence of reduction
            CHECK(row_reduce(r.rref).rref == r.rref);
            // rank agrees with the independently written elimination
            CHECK(r.rank == oracle::rank_of(testutil::to_oracle(m), p));

            // a consistent system is solved exactly
            Matrix x0 = testutil::random_matrix(cols, 1, p, rng);
            Vec b = m.mul_vec(x0.column(0));
            auto sol = m.solve(b);
            REQUIRE(sol);
            CHECK(m.mul_vec(*sol) == b);
        }
        // inverses
        for (int trial = 0; trial < 10; ++trial) {
            Matrix u = testutil::random_invertible(4, p, rng);
            CHECK((u * u.inverse()).is_identity());
        }
    }
}
