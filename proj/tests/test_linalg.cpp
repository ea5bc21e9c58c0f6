#include <catch2/catch_amalgamated.hpp>

#include <hsjet/linalg.hpp>

using namespace hsjet;

TEST_CASE("kernel bases") {
    auto Q = field_Q();
    SECTION("1x2 row") {
        Matrix m(Q, 1, 2);
        m.at(0, 0) = Scalar::of_int(Q, 2);
        m.at(0, 1) = Scalar::of_int(Q, -3);
        auto k = kernel_basis(m);
        REQUIRE(k.size() == 1);
        // echelon-normalized spanning vector of 2u = 3v
        Scalar ratio = k[0][0] / k[0][1];
        CHECK(ratio == Scalar::of_rat(Q, Rat(3, 2)));
    }
    SECTION("identity has trivial kernel") {
        CHECK(kernel_basis(Matrix::identity(Q, 2)).empty());
    }
    SECTION("zero 1x3 has full kernel") {
        Matrix m(Q, 1, 3);
        CHECK(kernel_basis(m).size() == 3);
    }
}

TEST_CASE("rref determinism and rank") {
    auto Q = field_Q();
    Matrix m(Q, 3, 3);
    long vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = Scalar::of_int(Q, vals[i][j]);
    CHECK(rank(m) == 2);
    Matrix a = row_space_basis(m), b = row_space_basis(m);
    CHECK(a == b);
    // every kernel vector is annihilated
    for (auto& v : kernel_basis(m)) {
        auto r = m.apply(v);
        for (auto& x : r) CHECK(x.is_zero());
    }
}

TEST_CASE("solve and inverse") {
    auto F7 = field_Fp(7);
    Matrix A(F7, 2, 2);
    A.at(0, 0) = Scalar::of_int(F7, 2);
    A.at(0, 1) = Scalar::of_int(F7, 3);
    A.at(1, 0) = Scalar::of_int(F7, 1);
    A.at(1, 1) = Scalar::of_int(F7, 4); // det = 5, invertible mod 7
    std::vector<Scalar> b = {Scalar::of_int(F7, 1), Scalar::of_int(F7, 0)};
    auto x = solve(A, b);
    REQUIRE(x.has_value());
    auto Ax = A.apply(*x);
    CHECK(Ax[0] == b[0]);
    CHECK(Ax[1] == b[1]);
    Matrix Ainv = inverse(A);
    CHECK(A * Ainv == Matrix::identity(F7, 2));

    Matrix sing(F7, 2, 2);
    sing.at(0, 0) = Scalar::of_int(F7, 1);
    sing.at(1, 0) = Scalar::of_int(F7, 1);
    std::vector<Scalar> bad = {Scalar::of_int(F7, 1), Scalar::of_int(F7, 2)};
    CHECK_FALSE(solve(sing, bad).has_value());
}

TEST_CASE("kron is outer-major") {
    auto Q = field_Q();
    Matrix a(Q, 1, 2), b = Matrix::identity(Q, 2);
    a.at(0, 0) = Scalar::of_int(Q, 1);
    a.at(0, 1) = Scalar::of_int(Q, 2);
    Matrix k = Matrix::kron(a, b);
    REQUIRE(k.rows == 2);
    REQUIRE(k.cols == 4);
    CHECK(k.at(0, 0) == Scalar::of_int(Q, 1));
    CHECK(k.at(0, 2) == Scalar::of_int(Q, 2));
    CHECK(k.at(1, 1) == Scalar::of_int(Q, 1));
    CHECK(k.at(1, 3) == Scalar::of_int(Q, 2));
}

TEST_CASE("row space comparisons") {
    auto Q = field_Q();
    Matrix A(Q, 1, 3), B(Q, 2, 3);
    A.at(0, 0) = Scalar::of_int(Q, 1);
    A.at(0, 1) = Scalar::of_int(Q, 1);
    B.at(0, 0) = Scalar::of_int(Q, 1);
    B.at(1, 1) = Scalar::of_int(Q, 1);
    CHECK(row_space_leq(A, B));
    CHECK_FALSE(row_space_leq(B, A));
    CHECK_FALSE(row_space_equal(A, B));
    CHECK(row_space_contains(B, A.row(0)));
}
