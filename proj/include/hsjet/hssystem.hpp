#pragma once

#include <functional>
#include <future>
#include <map>
#include <string>
#include <vector>

#include <hsjet/ffalg.hpp>

namespace hsjet {

enum class SystemKind { trivial, hsd, end_chain, end_aut, diffdiff, higherd };

inline std::string system_kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::trivial: return "Trivial";
        case SystemKind::hsd: return "HSD";
        case SystemKind::end_chain: return "End";
        case SystemKind::end_aut: return "EndAut";
        case SystemKind::diffdiff: return "DiffDiff";
        case SystemKind::higherd: return "HigherD";
    }
    return "?";
}

/// A level-capped generalised Hasse-Schmidt system: finite free algebra
/// schemes D_0..D_cap with projections pi_{m,n} and iteration maps
/// Delta_{(m,n)} for m+n <= cap, all in the unit-first basis coordinates.
struct HSSystem {
    SystemKind kind = SystemKind::trivial;
    unsigned e = 1;
    int cap = 4;
    FieldPtr dom; // fraction field of the base ring A
    std::vector<FFScheme> D;
    std::map<std::pair<int, int>, Matrix> pi;    // m >= n
    std::map<std::pair<int, int>, Matrix> delta; // m + n <= cap
    std::vector<Matrix> nat_to_basis;            // per level (identity when trivial)
    std::vector<Matrix> basis_to_nat;

    size_t rank(int n) const { return D.at(n).rank; }
    const Matrix& pi_at(int m, int n) const { return pi.at({m, n}); }
    const Matrix& delta_at(int m, int n) const { return delta.at({m, n}); }

    std::string name() const {
        std::string s = system_kind_name(kind);
        if (kind == SystemKind::hsd || kind == SystemKind::end_aut ||
            kind == SystemKind::higherd)
            s += "(" + std::to_string(e) + ")";
        return s;
    }
};

// ---------------------------------------------------------------------------
// Index enumerations (deterministic; D_n's index list is a prefix of D_m's
// for every built-in except the HigherD box order, which is subset-stable).

/// Multi-indices |alpha| <= n, ascending degree, descending lex inside a degree.
inline std::vector<Exps> hsd_indices(unsigned e, int n) {
    return graded_degree_monomials(e, static_cast<unsigned>(n));
}

/// Signed multi-indices with max |alpha_i| <= n, sorted by shell then lex.
inline std::vector<std::vector<int>> aut_indices(unsigned e, int n) {
    std::vector<std::vector<int>> all;
    std::vector<int> cur(e, 0);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == e) {
            all.push_back(cur);
            return;
        }
        for (int v = -n; v <= n; ++v) {
            cur[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    auto shell = [](const std::vector<int>& a) {
        int s = 0;
        for (int x : a) s = std::max(s, x < 0 ? -x : x);
        return s;
    };
    std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
        int sa = shell(a), sb = shell(b);
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return all;
}

/// Factor/degree pairs (i,j) with i+j <= n, graded by i+j then by factor.
inline std::vector<std::pair<int, int>> dd_indices(int n) {
    std::vector<std::pair<int, int>> all;
    for (int s = 0; s <= n; ++s)
        for (int i = 0; i <= s; ++i) all.push_back({i, s - i});
    return all;
}

// ---------------------------------------------------------------------------
// P-polynomials of the higher D-ring appendix.

/// P_m(X, W) = prod_{i=0}^{m-1} (X - i W), with P_0 = 1, in Q[X, W].
inline Poly p_polynomial(unsigned m) {
    Ring R = make_ring(field_Q(), {"X", "W"});
    Poly r = R.one();
    for (unsigned i = 0; i < m; ++i) r = r * (R.var(0) - R.constant(static_cast<long>(i)) * R.var(1));
    return r;
}

/// Verifies the addition and multiplication expansions of P_m for all indices
/// up to l_max, as exact identities in Q[X, Y, W].
inline CheckResult check_p_identities(unsigned l_max) {
    Ring R = make_ring(field_Q(), {"X", "Y", "W"});
    auto Q = R.field;
    Poly X = R.var(0), Y = R.var(1), W = R.var(2);
    auto P = [&](unsigned m, const Poly& arg) {
        Poly r = R.one();
        for (unsigned i = 0; i < m; ++i) r = r * (arg - R.constant(static_cast<long>(i)) * W);
        return r;
    };
    for (unsigned l = 0; l <= l_max; ++l) {
        Poly lhs = P(l, X + Y);
        Poly rhs = R.zero();
        for (unsigned m = 0; m <= l; ++m)
            rhs = rhs + P(m, X) * P(l - m, Y) * Scalar::of_int(Q, binomial_int(l, m));
        if (lhs != rhs)
            return CheckResult::fail("sum expansion fails at l=" + std::to_string(l));
    }
    for (unsigned n = 0; n <= l_max; ++n)
        for (unsigned m = 0; m <= l_max; ++m) {
            Poly lhs = P(n, X) * P(m, X);
            Poly rhs = R.zero();
            for (unsigned i = 0; i <= n; ++i) {
                Int c = factorial_int(i) * binomial_int(n, i) * binomial_int(m, i);
                rhs = rhs + P(m + n - i, X) * W.pow(i) * Scalar::of_int(Q, c);
            }
            if (lhs != rhs)
                return CheckResult::fail("product expansion fails at (n,m)=(" +
                                         std::to_string(n) + "," + std::to_string(m) + ")");
        }
    return CheckResult::pass();
}

// ---------------------------------------------------------------------------
// Built-in constructors.

namespace detail {

using SparseVec = std::vector<std::pair<size_t, Scalar>>;
using NatRule = std::function<SparseVec(size_t, size_t)>;

/// Build a scheme from a natural-coordinates product rule plus a basis change
/// (columns of B are the chosen basis written in natural coordinates).
inline FFScheme scheme_from_natural(const FieldPtr& dom, size_t rank, const NatRule& rule,
                                    const Matrix& B, const Matrix& C,
                                    std::vector<std::string> labels, KernelKind kind,
                                    std::string metadata) {
    FFScheme S;
    S.dom = dom;
    S.rank = rank;
    S.table.assign(rank * rank, {});
    S.basis = std::move(labels);
    S.kind = kind;
    S.metadata = std::move(metadata);
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = i; j < rank; ++j) {
            // natural product of basis columns i and j
            std::vector<Scalar> prod(rank, Scalar::zero(dom));
            for (size_t a = 0; a < rank; ++a) {
                if (B.at(a, i).is_zero()) continue;
                for (size_t b = 0; b < rank; ++b) {
                    if (B.at(b, j).is_zero()) continue;
                    Scalar f = B.at(a, i) * B.at(b, j);
                    for (auto& [k, c] : rule(a, b)) prod[k] = prod[k] + f * c;
                }
            }
            std::vector<Scalar> coords = C.apply(prod);
            for (size_t k = 0; k < rank; ++k)
                if (!coords[k].is_zero()) S.table[i * rank + j].push_back({k, coords[k]});
            if (j != i) S.table[j * rank + i] = S.table[i * rank + j];
        }
    return S;
}

/// Unit-first basis change for a natural-coordinates algebra whose unit has
/// natural coordinate vector `unit`: basis = {unit, e_1, .., e_{rank-1}}.
inline Matrix unit_first_B(const FieldPtr& dom, const std::vector<Scalar>& unit) {
    size_t rank = unit.size();
    Matrix B(dom, rank, rank);
    for (size_t i = 0; i < rank; ++i) B.at(i, 0) = unit[i];
    for (size_t j = 1; j < rank; ++j) B.at(j, j) = Scalar::one_of(dom);
    return B;
}

} // namespace detail

inline HSSystem builtin_system(SystemKind kind, unsigned e, int cap) {
    if (cap < 1) throw hs_error("level cap must be at least 1");
    if (e < 1) throw hs_error("operator count must be positive");
    HSSystem sys;
    sys.kind = kind;
    sys.e = e;
    sys.cap = cap;

    auto ident_conv = [&](size_t rank) {
        sys.nat_to_basis.push_back(Matrix::identity(sys.dom, rank));
        sys.basis_to_nat.push_back(Matrix::identity(sys.dom, rank));
    };

    switch (kind) {
        case SystemKind::trivial: {
            sys.dom = field_Q();
            for (int n = 0; n <= cap; ++n) {
                sys.D.push_back(scheme_from_structure_constants(
                    sys.dom, 1, {Scalar::one_of(sys.dom)}, {"1"}, "trivial"));
                sys.D.back().kind = KernelKind::nilpotent;
                ident_conv(1);
            }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; n <= m; ++n) sys.pi[{m, n}] = Matrix::identity(sys.dom, 1);
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; m + n <= cap; ++n)
                    sys.delta[{m, n}] = Matrix::identity(sys.dom, 1);
            break;
        }

        case SystemKind::hsd: {
            sys.dom = field_Q();
            const FieldPtr& Q = sys.dom;
            std::vector<std::vector<Exps>> idx;
            std::vector<std::map<Exps, size_t>> pos;
            for (int n = 0; n <= cap; ++n) {
                idx.push_back(hsd_indices(e, n));
                std::map<Exps, size_t> p;
                for (size_t i = 0; i < idx[n].size(); ++i) p[idx[n][i]] = i;
                pos.push_back(std::move(p));
            }
            std::vector<std::string> base_names;
            for (unsigned i = 1; i <= e; ++i)
                base_names.push_back(e == 1 ? "eta" : "eta" + std::to_string(i));
            Ring R = make_ring(Q, base_names);
            for (int n = 0; n <= cap; ++n) {
                size_t rank = idx[n].size();
                FFScheme S;
                S.dom = Q;
                S.rank = rank;
                S.table.assign(rank * rank, {});
                S.kind = KernelKind::nilpotent;
                S.metadata = "HSD level " + std::to_string(n);
                for (auto& a : idx[n])
                    S.basis.push_back(mono_degree(a) == 0 ? "1" : R.one().mono_str(a));
                for (size_t i = 0; i < rank; ++i)
                    for (size_t j = 0; j < rank; ++j) {
                        Exps s = mono_mul(idx[n][i], idx[n][j]);
                        if (mono_degree(s) <= static_cast<unsigned>(n))
                            S.table[i * rank + j].push_back({pos[n].at(s), Scalar::one_of(Q)});
                    }
                sys.D.push_back(std::move(S));
                ident_conv(rank);
            }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; n <= m; ++n) {
                    Matrix P(Q, idx[n].size(), idx[m].size());
                    for (size_t r = 0; r < idx[n].size(); ++r)
                        P.at(r, pos[m].at(idx[n][r])) = Scalar::one_of(Q);
                    sys.pi[{m, n}] = std::move(P);
                }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; m + n <= cap; ++n) {
                    size_t ln = idx[n].size();
                    Matrix Dl(Q, idx[m].size() * ln, idx[m + n].size());
                    for (size_t col = 0; col < idx[m + n].size(); ++col) {
                        const Exps& alpha = idx[m + n][col];
                        // eta^alpha -> prod (zeta_i + eps_i)^{alpha_i}
                        std::vector<Exps> betas;
                        Exps cur(e, 0);
                        std::function<void(size_t)> rec = [&](size_t p) {
                            if (p == e) {
                                betas.push_back(cur);
                                return;
                            }
                            for (unsigned b = 0; b <= alpha[p]; ++b) {
                                cur[p] = b;
                                rec(p + 1);
                            }
                        };
                        rec(0);
                        for (auto& beta : betas) {
                            Exps gamma = mono_div(alpha, beta);
                            if (mono_degree(beta) > static_cast<unsigned>(n)) continue;
                            if (mono_degree(gamma) > static_cast<unsigned>(m)) continue;
                            Int coef(1);
                            for (unsigned i = 0; i < e; ++i)
                                coef *= binomial_int(alpha[i], beta[i]);
                            size_t row = pos[m].at(gamma) * ln + pos[n].at(beta);
                            Dl.at(row, col) = Scalar::of_int(Q, coef);
                        }
                    }
                    sys.delta[{m, n}] = std::move(Dl);
                }
            break;
        }

        case SystemKind::end_chain: {
            sys.dom = field_Q();
            const FieldPtr& Q = sys.dom;
            for (int n = 0; n <= cap; ++n) {
                size_t rank = static_cast<size_t>(n) + 1;
                detail::NatRule rule = [rank, &Q](size_t i, size_t j) -> detail::SparseVec {
                    if (i == j) return {{i, Scalar::one_of(Q)}};
                    return {};
                };
                std::vector<Scalar> unit(rank, Scalar::one_of(Q));
                Matrix B = detail::unit_first_B(Q, unit);
                Matrix C = inverse(B);
                std::vector<std::string> labels = {"1"};
                for (size_t i = 1; i < rank; ++i) labels.push_back("s" + std::to_string(i));
                sys.D.push_back(detail::scheme_from_natural(
                    Q, rank, rule, B, C, std::move(labels), KernelKind::split,
                    "End chain level " + std::to_string(n)));
                sys.nat_to_basis.push_back(C);
                sys.basis_to_nat.push_back(B);
            }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; n <= m; ++n) {
                    Matrix P(Q, static_cast<size_t>(n) + 1, static_cast<size_t>(m) + 1);
                    for (int r = 0; r <= n; ++r) P.at(r, r) = Scalar::one_of(Q);
                    sys.pi[{m, n}] = sys.nat_to_basis[n] * (P * sys.basis_to_nat[m]);
                }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; m + n <= cap; ++n) {
                    size_t lm = static_cast<size_t>(m) + 1, ln = static_cast<size_t>(n) + 1;
                    Matrix Dl(Q, lm * ln, lm + ln - 1);
                    for (size_t g = 0; g < lm; ++g)
                        for (size_t b = 0; b < ln; ++b)
                            Dl.at(g * ln + b, g + b) = Scalar::one_of(Q);
                    sys.delta[{m, n}] =
                        Matrix::kron(sys.nat_to_basis[m], sys.nat_to_basis[n]) *
                        (Dl * sys.basis_to_nat[m + n]);
                }
            break;
        }

        case SystemKind::end_aut: {
            sys.dom = field_Q();
            const FieldPtr& Q = sys.dom;
            std::vector<std::vector<std::vector<int>>> idx;
            std::vector<std::map<std::vector<int>, size_t>> pos;
            for (int n = 0; n <= cap; ++n) {
                idx.push_back(aut_indices(e, n));
                std::map<std::vector<int>, size_t> p;
                for (size_t i = 0; i < idx[n].size(); ++i) p[idx[n][i]] = i;
                pos.push_back(std::move(p));
            }
            for (int n = 0; n <= cap; ++n) {
                size_t rank = idx[n].size();
                detail::NatRule rule = [rank, &Q](size_t i, size_t j) -> detail::SparseVec {
                    if (i == j) return {{i, Scalar::one_of(Q)}};
                    return {};
                };
                std::vector<Scalar> unit(rank, Scalar::one_of(Q));
                Matrix B = detail::unit_first_B(Q, unit);
                Matrix C = inverse(B);
                std::vector<std::string> labels;
                for (auto& a : idx[n]) {
                    std::string l = "s(";
                    for (size_t i = 0; i < a.size(); ++i)
                        l += (i ? "," : "") + std::to_string(a[i]);
                    labels.push_back(l + ")");
                }
                labels[0] = "1";
                sys.D.push_back(detail::scheme_from_natural(
                    Q, rank, rule, B, C, std::move(labels), KernelKind::split,
                    "End aut level " + std::to_string(n)));
                sys.nat_to_basis.push_back(C);
                sys.basis_to_nat.push_back(B);
            }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; n <= m; ++n) {
                    Matrix P(Q, idx[n].size(), idx[m].size());
                    for (size_t r = 0; r < idx[n].size(); ++r)
                        P.at(r, pos[m].at(idx[n][r])) = Scalar::one_of(Q);
                    sys.pi[{m, n}] = sys.nat_to_basis[n] * (P * sys.basis_to_nat[m]);
                }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; m + n <= cap; ++n) {
                    size_t lm = idx[m].size(), ln = idx[n].size();
                    Matrix Dl(Q, lm * ln, idx[m + n].size());
                    for (size_t g = 0; g < lm; ++g)
                        for (size_t b = 0; b < ln; ++b) {
                            std::vector<int> s(e);
                            for (unsigned i = 0; i < e; ++i)
                                s[i] = idx[m][g][i] + idx[n][b][i];
                            Dl.at(g * ln + b, pos[m + n].at(s)) = Scalar::one_of(Q);
                        }
                    sys.delta[{m, n}] =
                        Matrix::kron(sys.nat_to_basis[m], sys.nat_to_basis[n]) *
                        (Dl * sys.basis_to_nat[m + n]);
                }
            break;
        }

        case SystemKind::diffdiff: {
            sys.dom = field_Q();
            const FieldPtr& Q = sys.dom;
            std::vector<std::vector<std::pair<int, int>>> idx;
            std::vector<std::map<std::pair<int, int>, size_t>> pos;
            for (int n = 0; n <= cap; ++n) {
                idx.push_back(dd_indices(n));
                std::map<std::pair<int, int>, size_t> p;
                for (size_t i = 0; i < idx[n].size(); ++i) p[idx[n][i]] = i;
                pos.push_back(std::move(p));
            }
            for (int n = 0; n <= cap; ++n) {
                size_t rank = idx[n].size();
                auto& I = idx[n];
                auto& P = pos[n];
                detail::NatRule rule = [&I, &P, n, &Q](size_t a, size_t b) -> detail::SparseVec {
                    auto [i, j] = I[a];
                    auto [i2, j2] = I[b];
                    if (i != i2) return {};
                    if (i + j + j2 > n) return {}; // eta-degree cap in factor i
                    return {{P.at({i, j + j2}), Scalar::one_of(Q)}};
                };
                std::vector<Scalar> unit(rank, Scalar::zero(Q));
                for (size_t a = 0; a < rank; ++a)
                    if (I[a].second == 0) unit[a] = Scalar::one_of(Q);
                Matrix B = detail::unit_first_B(Q, unit);
                Matrix C = inverse(B);
                std::vector<std::string> labels = {"1"};
                for (size_t a = 1; a < rank; ++a)
                    labels.push_back("f" + std::to_string(I[a].first) + "h" +
                                     std::to_string(I[a].second));
                sys.D.push_back(detail::scheme_from_natural(
                    Q, rank, rule, B, C, std::move(labels), KernelKind::mixed,
                    "DiffDiff level " + std::to_string(n)));
                sys.nat_to_basis.push_back(C);
                sys.basis_to_nat.push_back(B);
            }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; n <= m; ++n) {
                    Matrix P(Q, idx[n].size(), idx[m].size());
                    for (size_t r = 0; r < idx[n].size(); ++r)
                        P.at(r, pos[m].at(idx[n][r])) = Scalar::one_of(Q);
                    sys.pi[{m, n}] = sys.nat_to_basis[n] * (P * sys.basis_to_nat[m]);
                }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; m + n <= cap; ++n) {
                    size_t lm = idx[m].size(), ln = idx[n].size();
                    Matrix Dl(Q, lm * ln, idx[m + n].size());
                    for (size_t g = 0; g < lm; ++g)
                        for (size_t b = 0; b < ln; ++b) {
                            auto [a1, b1] = idx[m][g];  // outer factor/degree
                            auto [a2, b2] = idx[n][b];  // inner factor/degree
                            Dl.at(g * ln + b, pos[m + n].at({a1 + a2, b1 + b2})) =
                                Scalar::of_int(Q, binomial_int(b1 + b2, b1));
                        }
                    sys.delta[{m, n}] =
                        Matrix::kron(sys.nat_to_basis[m], sys.nat_to_basis[n]) *
                        (Dl * sys.basis_to_nat[m + n]);
                }
            break;
        }

        case SystemKind::higherd: {
            std::vector<std::string> cs;
            for (unsigned i = 1; i <= e; ++i)
                cs.push_back(e == 1 ? "c" : "c" + std::to_string(i));
            sys.dom = field_fraction(0, cs);
            const FieldPtr& Q = sys.dom;
            std::vector<std::vector<Exps>> idx;
            std::vector<std::map<Exps, size_t>> pos;
            for (int n = 0; n <= cap; ++n) {
                idx.push_back(graded_box_monomials(
                    std::vector<unsigned>(e, static_cast<unsigned>(n) + 1)));
                std::map<Exps, size_t> p;
                for (size_t i = 0; i < idx[n].size(); ++i) p[idx[n][i]] = i;
                pos.push_back(std::move(p));
            }
            // one-variable product rule P_a P_b = sum_s s! C(a,s) C(b,s) c^s P_{a+b-s}
            auto uni_product = [&](unsigned a, unsigned b, unsigned i) {
                std::vector<std::pair<unsigned, Scalar>> out;
                for (unsigned s = 0; s <= std::min(a, b); ++s) {
                    Int c = factorial_int(s) * binomial_int(a, s) * binomial_int(b, s);
                    Scalar v = Scalar::of_int(Q, c) * Scalar::generator(Q, i).pow(s);
                    out.push_back({a + b - s, v});
                }
                return out;
            };
            for (int n = 0; n <= cap; ++n) {
                size_t rank = idx[n].size();
                FFScheme S;
                S.dom = Q;
                S.rank = rank;
                S.table.assign(rank * rank, {});
                S.kind = KernelKind::nilpotent;
                S.metadata = "HigherD level " + std::to_string(n) + " (beta basis)";
                for (auto& J : idx[n]) {
                    std::string l = "b[";
                    for (size_t i = 0; i < J.size(); ++i)
                        l += (i ? "," : "") + std::to_string(J[i]);
                    S.basis.push_back(mono_degree(J) == 0 ? "1" : l + "]");
                }
                for (size_t a = 0; a < rank; ++a)
                    for (size_t b = a; b < rank; ++b) {
                        // tensor the per-variable expansions
                        std::map<Exps, Scalar> acc;
                        acc[Exps(e, 0)] = Scalar::one_of(Q);
                        for (unsigned i = 0; i < e; ++i) {
                            std::map<Exps, Scalar> next;
                            for (auto& [J, v] : acc)
                                for (auto& [d, w] : uni_product(idx[n][a][i], idx[n][b][i], i)) {
                                    Exps J2 = J;
                                    J2[i] = d;
                                    auto it = next.find(J2);
                                    Scalar nv = v * w;
                                    if (it == next.end())
                                        next[J2] = nv;
                                    else
                                        it->second = it->second + nv;
                                }
                            acc = std::move(next);
                        }
                        auto& cell = S.table[a * rank + b];
                        for (auto& [J, v] : acc) {
                            bool in_range = true;
                            for (unsigned i = 0; i < e; ++i)
                                if (J[i] > static_cast<unsigned>(n)) in_range = false;
                            if (in_range && !v.is_zero()) cell.push_back({pos[n].at(J), v});
                        }
                        std::sort(cell.begin(), cell.end(),
                                  [](auto& x, auto& y) { return x.first < y.first; });
                        if (b != a) S.table[b * rank + a] = cell;
                    }
                sys.D.push_back(std::move(S));
                ident_conv(rank);
            }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; n <= m; ++n) {
                    Matrix P(Q, idx[n].size(), idx[m].size());
                    for (size_t r = 0; r < idx[n].size(); ++r)
                        P.at(r, pos[m].at(idx[n][r])) = Scalar::one_of(Q);
                    sys.pi[{m, n}] = std::move(P);
                }
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; m + n <= cap; ++n) {
                    size_t lm = idx[m].size(), ln = idx[n].size();
                    Matrix Dl(Q, lm * ln, idx[m + n].size());
                    for (size_t col = 0; col < idx[m + n].size(); ++col) {
                        const Exps& K = idx[m + n][col];
                        std::vector<Exps> as;
                        Exps cur(e, 0);
                        std::function<void(size_t)> rec = [&](size_t p) {
                            if (p == e) {
                                as.push_back(cur);
                                return;
                            }
                            for (unsigned v = 0; v <= K[p]; ++v) {
                                cur[p] = v;
                                rec(p + 1);
                            }
                        };
                        rec(0);
                        for (auto& a : as) {
                            Exps b = mono_div(K, a);
                            bool ok = true;
                            for (unsigned i = 0; i < e; ++i)
                                if (a[i] > static_cast<unsigned>(m) ||
                                    b[i] > static_cast<unsigned>(n))
                                    ok = false;
                            if (!ok) continue;
                            Int coef(1);
                            for (unsigned i = 0; i < e; ++i) coef *= binomial_int(K[i], a[i]);
                            Dl.at(pos[m].at(a) * ln + pos[n].at(b), col) =
                                Scalar::of_int(Q, coef);
                        }
                    }
                    sys.delta[{m, n}] = std::move(Dl);
                }
            break;
        }
    }
    return sys;
}

// ---------------------------------------------------------------------------
// Iterativity verification.

/// Exact verification of the Hasse-Schmidt system axioms within the cap:
/// pi identities and surjective-morphism checks, Delta closed-embedding
/// morphism checks, pi-compatibility, associativity, unit laws, and the
/// derived pi/Delta exchange square.  Diagrams are partitioned over
/// `threads`; the reported witness is the first failing diagram.
inline CheckResult check_iterativity(const HSSystem& sys, unsigned threads = 1) {
    std::vector<std::function<CheckResult()>> checks;
    const int cap = sys.cap;

    checks.push_back([&]() {
        if (sys.rank(0) != 1) return CheckResult::fail("D_0 must have rank 1");
        return CheckResult::pass();
    });
    for (int n = 0; n <= cap; ++n)
        checks.push_back([&, n]() {
            if (sys.pi_at(n, n) != Matrix::identity(sys.dom, sys.rank(n)))
                return CheckResult::fail("pi_{n,n} != id at n=" + std::to_string(n));
            return CheckResult::pass();
        });
    for (int l = 0; l <= cap; ++l)
        for (int m = 0; m <= l; ++m)
            for (int n = 0; n <= m; ++n)
                checks.push_back([&, l, m, n]() {
                    if (sys.pi_at(m, n) * sys.pi_at(l, m) != sys.pi_at(l, n))
                        return CheckResult::fail("pi transitivity fails at (" +
                                                 std::to_string(l) + "," + std::to_string(m) +
                                                 "," + std::to_string(n) + ")");
                    return CheckResult::pass();
                });
    for (int m = 0; m <= cap; ++m)
        for (int n = 0; n < m; ++n)
            checks.push_back([&, m, n]() {
                auto rep = morphism_check(sys.D[m], sys.D[n], sys.pi_at(m, n));
                if (!rep.multiplicative.ok)
                    return CheckResult::fail("pi_{" + std::to_string(m) + "," +
                                             std::to_string(n) + "}: " +
                                             rep.multiplicative.witness);
                if (!rep.surjective)
                    return CheckResult::fail("pi_{" + std::to_string(m) + "," +
                                             std::to_string(n) + "} is not surjective");
                return CheckResult::pass();
            });
    for (int m = 0; m <= cap; ++m)
        for (int n = 0; m + n <= cap; ++n) {
            if (m == 0 || n == 0) {
                checks.push_back([&, m, n]() {
                    if (sys.delta_at(m, n) != Matrix::identity(sys.dom, sys.rank(m + n)))
                        return CheckResult::fail("Delta_{(" + std::to_string(m) + "," +
                                                 std::to_string(n) + ")} != id");
                    return CheckResult::pass();
                });
                continue;
            }
            checks.push_back([&, m, n]() {
                FFScheme composed = compose_schemes(sys.D[m], sys.D[n]);
                auto rep = morphism_check(sys.D[m + n], composed, sys.delta_at(m, n));
                if (!rep.multiplicative.ok)
                    return CheckResult::fail("Delta_{(" + std::to_string(m) + "," +
                                             std::to_string(n) + ")}: " +
                                             rep.multiplicative.witness);
                if (!rep.closed_embedding)
                    return CheckResult::fail("Delta_{(" + std::to_string(m) + "," +
                                             std::to_string(n) + ")} is not a closed embedding");
                return CheckResult::pass();
            });
        }
    // (a) compatibility with pi
    for (int m = 0; m <= cap; ++m)
        for (int n = 0; m + n <= cap; ++n)
            for (int m2 = 0; m2 <= m; ++m2)
                for (int n2 = 0; n2 <= n; ++n2)
                    checks.push_back([&, m, n, m2, n2]() {
                        Matrix lhs = Matrix::kron(sys.pi_at(m, m2), sys.pi_at(n, n2)) *
                                     sys.delta_at(m, n);
                        Matrix rhs = sys.delta_at(m2, n2) * sys.pi_at(m + n, m2 + n2);
                        if (lhs != rhs)
                            return CheckResult::fail(
                                "pi-compatibility square fails at (m,n)=(" + std::to_string(m) +
                                "," + std::to_string(n) + ") -> (" + std::to_string(m2) + "," +
                                std::to_string(n2) + ")");
                        return CheckResult::pass();
                    });
    // (b) associativity
    for (int l = 0; l <= cap; ++l)
        for (int m = 0; l + m <= cap; ++m)
            for (int n = 0; l + m + n <= cap; ++n)
                checks.push_back([&, l, m, n]() {
                    Matrix lhs = Matrix::kron(Matrix::identity(sys.dom, sys.rank(l)),
                                              sys.delta_at(m, n)) *
                                 sys.delta_at(l, m + n);
                    Matrix rhs = Matrix::kron(sys.delta_at(l, m),
                                              Matrix::identity(sys.dom, sys.rank(n))) *
                                 sys.delta_at(l + m, n);
                    if (lhs != rhs)
                        return CheckResult::fail("associativity fails at (l,m,n)=(" +
                                                 std::to_string(l) + "," + std::to_string(m) +
                                                 "," + std::to_string(n) + ")");
                    return CheckResult::pass();
                });
    // derived exchange square
    for (int m = 0; m <= cap; ++m)
        for (int n = 0; m + n + 1 <= cap; ++n)
            checks.push_back([&, m, n]() {
                Matrix lhs = Matrix::kron(Matrix::identity(sys.dom, sys.rank(m)),
                                          sys.pi_at(n + 1, n)) *
                             sys.delta_at(m, n + 1);
                Matrix rhs = Matrix::kron(sys.pi_at(m + 1, m),
                                          Matrix::identity(sys.dom, sys.rank(n))) *
                             sys.delta_at(m + 1, n);
                if (lhs != rhs)
                    return CheckResult::fail("pi/Delta exchange square fails at (m,n)=(" +
                                             std::to_string(m) + "," + std::to_string(n) + ")");
                return CheckResult::pass();
            });

    if (threads <= 1) {
        for (auto& c : checks) {
            CheckResult r = c();
            if (!r.ok) return r;
        }
        return CheckResult::pass();
    }
    // parallel: partition by index, report the smallest failing index
    std::vector<std::future<std::pair<size_t, CheckResult>>> futs;
    size_t nt = std::min<size_t>(threads, checks.size());
    for (size_t t = 0; t < nt; ++t)
        futs.push_back(std::async(std::launch::async, [&, t]() {
            for (size_t i = t; i < checks.size(); i += nt) {
                CheckResult r = checks[i]();
                if (!r.ok) return std::make_pair(i, r);
            }
            return std::make_pair(checks.size(), CheckResult::pass());
        }));
    size_t best = checks.size();
    CheckResult verdict = CheckResult::pass();
    for (auto& f : futs) {
        auto [i, r] = f.get();
        if (!r.ok && i < best) {
            best = i;
            verdict = r;
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Beta basis change for HigherD systems.

enum class BetaDirection { beta_to_monomial, monomial_to_beta };

/// Change of basis at level `n` between the monomial basis eps^J and the beta
/// basis prod P_{J_i}(eps_i, c_i); both bases use the same graded box order.
inline Matrix beta_basis_change(const HSSystem& sys, int n, BetaDirection dir) {
    if (sys.kind != SystemKind::higherd) throw hs_error("beta basis requires a HigherD system");
    const FieldPtr& Q = sys.dom;
    std::vector<Exps> idx = graded_box_monomials(
        std::vector<unsigned>(sys.e, static_cast<unsigned>(n) + 1));
    std::map<Exps, size_t> pos;
    for (size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
    // per-variable expansion of P_d(eps_i, c_i) into monomials of eps_i
    Ring R = make_ring(field_Q(), {"X", "W"});
    Matrix B(Q, idx.size(), idx.size());
    for (size_t col = 0; col < idx.size(); ++col) {
        std::map<Exps, Scalar> acc;
        acc[Exps(sys.e, 0)] = Scalar::one_of(Q);
        for (unsigned i = 0; i < sys.e; ++i) {
            Poly p = p_polynomial(idx[col][i]); // in Q[X,W]
            std::map<Exps, Scalar> next;
            for (auto& [J, v] : acc)
                for (auto& t : p.terms()) {
                    Exps J2 = J;
                    J2[i] = t.first[0];
                    Scalar w = Scalar::of_rat(Q, t.second.rat()) *
                               Scalar::generator(Q, i).pow(t.first[1]);
                    auto it = next.find(J2);
                    Scalar nv = v * w;
                    if (it == next.end())
                        next[J2] = nv;
                    else
                        it->second = it->second + nv;
                }
            acc = std::move(next);
        }
        for (auto& [J, v] : acc)
            if (!v.is_zero()) B.at(pos.at(J), col) = v;
    }
    return dir == BetaDirection::beta_to_monomial ? B : inverse(B);
}

// ---------------------------------------------------------------------------
// Specialization into a concrete field.

inline Matrix specialize_matrix(const Matrix& m, const FieldPtr& K,
                                const std::vector<Scalar>& gen_values) {
    Matrix r(K, m.rows, m.cols);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j)
            r.at(i, j) = specialize_scalar(m.at(i, j), K, gen_values);
    return r;
}

/// Specialize every scheme and matrix into the field K, mapping the base-ring
/// generators (HigherD's c_i) to the given values.
inline HSSystem specialize_system(const HSSystem& sys, const FieldPtr& K,
                                  const std::vector<Scalar>& gen_values = {}) {
    HSSystem out = sys;
    out.dom = K;
    out.D.clear();
    for (auto& d : sys.D) out.D.push_back(specialize_scheme(d, K, gen_values));
    for (auto& [k, m] : sys.pi) out.pi[k] = specialize_matrix(m, K, gen_values);
    for (auto& [k, m] : sys.delta) out.delta[k] = specialize_matrix(m, K, gen_values);
    out.nat_to_basis.clear();
    out.basis_to_nat.clear();
    for (auto& m : sys.nat_to_basis) out.nat_to_basis.push_back(specialize_matrix(m, K, gen_values));
    for (auto& m : sys.basis_to_nat) out.basis_to_nat.push_back(specialize_matrix(m, K, gen_values));
    return out;
}

// ---------------------------------------------------------------------------
// Text serialization (ranks, tables, matrices) for golden tests and
// user-supplied systems.

inline std::string dump_matrix(const Matrix& m) {
    std::string out = std::to_string(m.rows) + " " + std::to_string(m.cols) + "\n";
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j) {
            if (j) out += " ";
            out += m.at(i, j).str();
        }
        out += "\n";
    }
    return out;
}

inline std::string dump_system(const HSSystem& sys) {
    std::string out = "hssystem " + sys.name() + " cap " + std::to_string(sys.cap) + " dom " +
                      sys.dom->name() + "\n";
    for (int n = 0; n <= sys.cap; ++n) {
        out += "level " + std::to_string(n) + " ";
        out += dump_scheme(sys.D[n]);
    }
    for (auto& [k, m] : sys.pi) {
        out += "pi " + std::to_string(k.first) + " " + std::to_string(k.second) + "\n";
        out += dump_matrix(m);
    }
    for (auto& [k, m] : sys.delta) {
        out += "delta " + std::to_string(k.first) + " " + std::to_string(k.second) + "\n";
        out += dump_matrix(m);
    }
    return out;
}

} // namespace hsjet
