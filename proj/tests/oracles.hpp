#pragma once

// Test-only independent oracles; kept free of the implementation paths they check.

#include <vector>

#include <hsjet/groebner.hpp>
#include <hsjet/linalg.hpp>

namespace hsjet::testing {

inline void enumerate_monos_rec(size_t nvars, unsigned budget, size_t pos, Exps& cur,
                                std::vector<Exps>& out) {
    if (pos == nvars) {
        out.push_back(cur);
        return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
        cur[pos] = e;
        enumerate_monos_rec(nvars, budget - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

inline std::vector<Exps> enumerate_monos(size_t nvars, unsigned maxdeg) {
    std::vector<Exps> out;
    Exps cur(nvars, 0);
    enumerate_monos_rec(nvars, maxdeg, 0, cur, out);
    return out;
}

/// Brute-force ideal membership by linear algebra over monomials: decides
/// whether f = sum q_i g_i with deg q_i <= cofactor_deg.
inline bool brute_member(const Poly& f, const std::vector<Poly>& gens, unsigned cofactor_deg) {
    size_t n = f.nvars();
    const FieldPtr field = f.zero_coeff().domain();
    unsigned maxg = 0;
    for (auto& g : gens) maxg = std::max(maxg, g.total_degree());
    unsigned row_deg = std::max(f.total_degree(), cofactor_deg + maxg);
    std::vector<Exps> rows = enumerate_monos(n, row_deg);
    std::vector<Exps> cof = enumerate_monos(n, cofactor_deg);
    auto row_index = [&](const Exps& e) {
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i] == e) return i;
        throw hs_error("row index");
    };
    size_t cols = gens.size() * cof.size();
    Matrix A(field, rows.size(), cols);
    size_t c = 0;
    for (auto& g : gens)
        for (auto& m : cof) {
            for (auto& t : g.terms()) A.at(row_index(mono_mul(t.first, m)), c) = t.second;
            ++c;
        }
    std::vector<Scalar> b(rows.size(), Scalar::zero(field));
    for (auto& t : f.terms()) b[row_index(t.first)] = t.second;
    return solve(A, b).has_value();
}

// deterministic LCG shared by the randomized module tests
struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() { return s = s * 6364136223846793005ull + 1442695040888963407ull; }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

inline Poly random_poly(Lcg& g, const Ring& R, unsigned maxdeg, int nterms) {
    Poly p = R.zero();
    for (int t = 0; t < nterms; ++t) {
        Poly m = R.constant(g.range(-4, 4));
        unsigned budget = maxdeg;
        for (size_t v = 0; v < R.nvars(); ++v) {
            unsigned e = static_cast<unsigned>(g.range(0, budget));
            budget -= e;
            if (e) m = m * R.var(v, e);
        }
        p = p + m;
    }
    return p;
}

} // namespace hsjet::testing
