#include <catch2/catch_amalgamated.hpp>

#include <hsjet/hssystem.hpp>

using namespace hsjet;

TEST_CASE("built-in systems pass iterativity") {
    CHECK(check_iterativity(builtin_system(SystemKind::trivial, 1, 3)).ok);
    CHECK(check_iterativity(builtin_system(SystemKind::hsd, 1, 4)).ok);
    CHECK(check_iterativity(builtin_system(SystemKind::hsd, 2, 3)).ok);
    CHECK(check_iterativity(builtin_system(SystemKind::end_chain, 1, 3)).ok);
    CHECK(check_iterativity(builtin_system(SystemKind::end_aut, 2, 2)).ok);
    CHECK(check_iterativity(builtin_system(SystemKind::diffdiff, 1, 3)).ok);
    CHECK(check_iterativity(builtin_system(SystemKind::higherd, 1, 3)).ok);
}

TEST_CASE("iterativity check is thread-invariant") {
    HSSystem sys = builtin_system(SystemKind::hsd, 2, 3);
    CHECK(check_iterativity(sys, 1).ok == check_iterativity(sys, 4).ok);
    sys.delta[{1, 1}].at(3, 2) = Scalar::of_int(sys.dom, 1); // corrupt
    CheckResult a = check_iterativity(sys, 1);
    CheckResult b = check_iterativity(sys, 4);
    REQUIRE_FALSE(a.ok);
    CHECK(a.witness == b.witness);
}

TEST_CASE("HSD(1) levels and iteration matrix") {
    HSSystem sys = builtin_system(SystemKind::hsd, 1, 2);
    CHECK(sys.rank(0) == 1);
    CHECK(sys.rank(1) == 2);
    CHECK(sys.rank(2) == 3);
    // Delta_{(1,1)}: 1 -> 1, eta -> zeta + eps, eta^2 -> 2 zeta eps
    const Matrix& d = sys.delta_at(1, 1);
    REQUIRE(d.rows == 4);
    REQUIRE(d.cols == 3);
    auto Q = sys.dom;
    CHECK(d.at(0, 0) == Scalar::one_of(Q));
    CHECK(d.at(1, 1) == Scalar::one_of(Q)); // inner zeta slot
    CHECK(d.at(2, 1) == Scalar::one_of(Q)); // outer eps slot
    CHECK(d.at(3, 2) == Scalar::of_int(Q, 2));
    CHECK(d.at(3, 1).is_zero());
}

TEST_CASE("corrupted iteration map produces a witness at (1,1)") {
    HSSystem sys = builtin_system(SystemKind::hsd, 1, 2);
    sys.delta[{1, 1}].at(3, 2) = Scalar::one_of(sys.dom); // eta^2 -> zeta*eps
    CheckResult r = check_iterativity(sys);
    REQUIRE_FALSE(r.ok);
    CHECK(r.witness.find("(1,1)") != std::string::npos);
}

TEST_CASE("trivial system is all identities") {
    HSSystem sys = builtin_system(SystemKind::trivial, 1, 3);
    for (int n = 0; n <= 3; ++n) CHECK(sys.rank(n) == 1);
    CHECK(sys.pi_at(3, 1) == Matrix::identity(sys.dom, 1));
    CHECK(sys.delta_at(1, 2) == Matrix::identity(sys.dom, 1));
}

TEST_CASE("HigherD(1) beta-basis structure constants") {
    HSSystem sys = builtin_system(SystemKind::higherd, 1, 2);
    REQUIRE(sys.rank(2) == 3);
    CHECK(sys.D[2].basis == std::vector<std::string>{"1", "b[1]", "b[2]"});
    // eps^2 = c*eps + eps(eps - c):   b1 * b1 = c b1 + b2
    auto entries = sys.D[2].entries(1, 1);
    REQUIRE(entries.size() == 2);
    Scalar c = Scalar::generator(sys.dom, 0);
    CHECK(entries[0].first == 1);
    CHECK(entries[0].second == c);
    CHECK(entries[1].first == 2);
    CHECK(entries[1].second == Scalar::one_of(sys.dom));
    // in D_1 the same product truncates to c*b1
    auto e1 = sys.D[1].entries(1, 1);
    REQUIRE(e1.size() == 1);
    CHECK(e1[0].second == c);
}

TEST_CASE("P polynomials") {
    CHECK(p_polynomial(0).str() == "1");
    CHECK(p_polynomial(2).str() == "X^2 - X*W");
    CHECK(p_polynomial(3).str() == "X^3 - 3*X^2*W + 2*X*W^2");
    CHECK(check_p_identities(3).ok);
}

TEST_CASE("beta basis change matrices") {
    HSSystem sys = builtin_system(SystemKind::higherd, 1, 2);
    Matrix B = beta_basis_change(sys, 2, BetaDirection::beta_to_monomial);
    auto Q = sys.dom;
    Scalar c = Scalar::generator(Q, 0);
    // column of b2 = eps^2 - c*eps has monomial coordinates (0, -c, 1)
    CHECK(B.at(0, 2).is_zero());
    CHECK(B.at(1, 2) == -c);
    CHECK(B.at(2, 2) == Scalar::one_of(Q));
    // b0 = 1 always
    CHECK(B.at(0, 0) == Scalar::one_of(Q));
    Matrix C = beta_basis_change(sys, 2, BetaDirection::monomial_to_beta);
    CHECK(B * C == Matrix::identity(Q, 3));
}

TEST_CASE("beta structure constants reproduce the product expansion") {
    HSSystem sys = builtin_system(SystemKind::higherd, 1, 4);
    auto Q = sys.dom;
    Scalar c = Scalar::generator(Q, 0);
    // b_n * b_m = sum_i i! C(n,i) C(m,i) c^i b_{n+m-i}
    for (unsigned n = 0; n <= 2; ++n)
        for (unsigned m = 0; m <= 2; ++m) {
            auto cell = sys.D[4].entries(n, m);
            std::map<size_t, Scalar> got(cell.begin(), cell.end());
            for (unsigned i = 0; i <= std::min(n, m); ++i) {
                Int k = factorial_int(i) * binomial_int(n, i) * binomial_int(m, i);
                Scalar expect = Scalar::of_int(Q, k) * c.pow(i);
                CHECK(got.at(n + m - i) == expect);
            }
        }
}

TEST_CASE("specialization reduces matrix entries mod p") {
    HSSystem sys = builtin_system(SystemKind::hsd, 1, 2);
    auto F2 = field_Fp(2);
    HSSystem s2 = specialize_system(sys, F2);
    // the 2*zeta*eps entry of Delta_{(1,1)} vanishes in characteristic 2
    CHECK(s2.delta_at(1, 1).at(3, 2).is_zero());
    auto F5 = field_Fp(5);
    HSSystem s5 = specialize_system(sys, F5);
    CHECK(s5.delta_at(1, 1).at(3, 2) == Scalar::of_int(F5, 2));
}

TEST_CASE("system dump is stable") {
    HSSystem sys = builtin_system(SystemKind::hsd, 1, 2);
    std::string d1 = dump_system(sys), d2 = dump_system(sys);
    CHECK(d1 == d2);
    CHECK(d1.find("hssystem HSD(1) cap 2") == 0);
}
