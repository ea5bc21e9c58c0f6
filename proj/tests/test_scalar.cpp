#include <catch2/catch_amalgamated.hpp>

#include <hsjet/scalar.hpp>

using namespace hsjet;

namespace {

// deterministic small LCG for sampled axiom checks
struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() { return s = s * 6364136223846793005ull + 1442695040888963407ull; }
    long small(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

Scalar rand_scalar(Lcg& g, const FieldPtr& K) {
    if (K->prime_field()) return Scalar::of_int(K, g.small(-20, 20));
    Scalar t = Scalar::generator(K, 0);
    Scalar v = Scalar::of_int(K, g.small(-5, 5));
    for (int i = 0; i < 2; ++i) v = v * t + Scalar::of_int(K, g.small(-5, 5));
    Scalar d = t + Scalar::of_int(K, g.small(1, 4));
    return v / d;
}

} // namespace

TEST_CASE("rational scalar canonical arithmetic") {
    auto Q = field_Q();
    Scalar a = Scalar::of_rat(Q, Rat(2, 4));
    Scalar b = Scalar::of_rat(Q, Rat(1, 3));
    CHECK((a + b).str() == "5/6");
    CHECK((a * b).str() == "1/6");
    CHECK((a - a).is_zero());
    CHECK(a.inv().str() == "2");
}

TEST_CASE("prime field arithmetic") {
    auto F5 = field_Fp(5);
    Scalar a = Scalar::of_int(F5, 7); // = 2
    CHECK(a.str() == "2");
    CHECK((a + a + a).str() == "1");
    CHECK((a.inv() * a).is_one());
    CHECK(Scalar::of_int(F5, 5).is_zero());
    CHECK_THROWS_AS(Scalar::of_rat(F5, Rat(1, 5)), hs_error);
}

TEST_CASE("fraction field canonical form") {
    auto K = field_fraction(0, {"t"});
    Scalar t = Scalar::generator(K, 0);
    Scalar x = (t * t - Scalar::one_of(K)) / (t - Scalar::one_of(K));
    CHECK(x.str() == "t + 1"); // gcd-reduced
    Scalar y = Scalar::one_of(K) / (t * Scalar::of_int(K, 2));
    // denominator is monic after canonicalization
    CHECK(y.str() == "(1/2)/t");
    CHECK((y * t * Scalar::of_int(K, 2)).is_one());
}

TEST_CASE("field axioms hold on random samples") {
    std::vector<FieldPtr> fields = {field_Q(), field_Fp(7), field_fraction(0, {"t"}),
                                    field_fraction(5, {"t"})};
    Lcg g(42);
    for (auto& K : fields) {
        for (int i = 0; i < 25; ++i) {
            Scalar a = rand_scalar(g, K), b = rand_scalar(g, K), c = rand_scalar(g, K);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).is_zero());
            if (!a.is_zero()) CHECK((a * a.inv()).is_one());
        }
    }
}

TEST_CASE("characteristic mixing is rejected") {
    auto Q = field_Q();
    auto F5 = field_Fp(5);
    CHECK_THROWS_AS(Scalar::one_of(Q) + Scalar::one_of(F5), hs_error);
}

TEST_CASE("specialization into a target field") {
    auto Qc = field_fraction(0, {"c"});
    auto F5t = field_fraction(5, {"t"});
    Scalar c = Scalar::generator(Qc, 0);
    Scalar s = c * c + Scalar::of_int(Qc, 7);
    Scalar t = Scalar::generator(F5t, 0);
    Scalar img = specialize_scalar(s, F5t, {t + Scalar::one_of(F5t)});
    // (t+1)^2 + 7 = t^2 + 2t + 8 = t^2 + 2t + 3 mod 5
    Scalar expect = t * t + Scalar::of_int(F5t, 2) * t + Scalar::of_int(F5t, 3);
    CHECK(img == expect);
}
