#pragma once

#include <map>
#include <string>
#include <vector>

#include <hsjet/check.hpp>
#include <hsjet/groebner.hpp>
#include <hsjet/linalg.hpp>

namespace hsjet {

/// Shape of the kernel of the augmentation D -> S, used to route inversion
/// error messages.  `nilpotent` covers truncated quotients, `split` product
/// rings, `mixed` products of local rings.
enum class KernelKind { unknown, nilpotent, split, mixed };

/// A finite free S-algebra scheme with basis: a rank-l free algebra over the
/// base ring presented by structure constants.  Basis element 0 is the unit.
struct FFScheme {
    FieldPtr dom;
    size_t rank = 1;
    // sparse structure constants: entry (i*rank+j) lists (k, a_{i,j,k})
    std::vector<std::vector<std::pair<size_t, Scalar>>> table;
    std::vector<std::string> basis; // labels; basis[0] = "1"
    std::string metadata;
    KernelKind kind = KernelKind::unknown;

    const std::vector<std::pair<size_t, Scalar>>& entries(size_t i, size_t j) const {
        return table[i * rank + j];
    }

    std::vector<Scalar> basis_product(size_t i, size_t j) const {
        std::vector<Scalar> r(rank, Scalar::zero(dom));
        for (auto& [k, c] : entries(i, j)) r[k] = c;
        return r;
    }

    std::vector<Scalar> one() const {
        std::vector<Scalar> r(rank, Scalar::zero(dom));
        r[0] = Scalar::one_of(dom);
        return r;
    }

    std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
        std::vector<Scalar> r(rank, Scalar::zero(dom));
        for (size_t i = 0; i < rank; ++i) {
            if (x[i].is_zero()) continue;
            for (size_t j = 0; j < rank; ++j) {
                if (y[j].is_zero()) continue;
                Scalar p = x[i] * y[j];
                for (auto& [k, c] : entries(i, j)) r[k] = r[k] + p * c;
            }
        }
        return r;
    }

    /// Matrix of multiplication by x.
    Matrix mul_matrix(const std::vector<Scalar>& x) const {
        Matrix m(dom, rank, rank);
        for (size_t i = 0; i < rank; ++i) {
            if (x[i].is_zero()) continue;
            for (size_t j = 0; j < rank; ++j)
                for (auto& [k, c] : entries(i, j)) m.at(k, j) = m.at(k, j) + x[i] * c;
        }
        return m;
    }
};

/// Multiplication of coefficient vectors with entries in any commutative ring
/// T admitting T*T and T*Scalar (e.g. polynomials during prolongation).
template <class T>
std::vector<T> ff_mul(const FFScheme& D, const std::vector<T>& x, const std::vector<T>& y,
                      const T& zero) {
    std::vector<T> r(D.rank, zero);
    for (size_t i = 0; i < D.rank; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < D.rank; ++j) {
            if (y[j].is_zero()) continue;
            T p = x[i] * y[j];
            for (auto& [k, c] : D.entries(i, j)) r[k] = r[k] + p * c;
        }
    }
    return r;
}

template <class T>
std::vector<T> ff_pow(const FFScheme& D, std::vector<T> x, unsigned n, const T& zero,
                      const T& one) {
    std::vector<T> r(D.rank, zero);
    r[0] = one;
    while (n) {
        if (n & 1u) r = ff_mul(D, r, x, zero);
        n >>= 1u;
        if (n) x = ff_mul(D, x, x, zero);
    }
    return r;
}

/// Verify commutativity, associativity and unitality on all basis triples.
inline CheckResult validate_scheme(const FFScheme& D) {
    if (D.rank == 0) return CheckResult::fail("rank must be positive");
    for (size_t j = 0; j < D.rank; ++j) {
        std::vector<Scalar> u = D.basis_product(0, j);
        for (size_t k = 0; k < D.rank; ++k)
            if (u[k] != (k == j ? Scalar::one_of(D.dom) : Scalar::zero(D.dom)))
                return CheckResult::fail("unit axiom fails at triple (0," + std::to_string(j) +
                                         ",.)");
    }
    for (size_t i = 0; i < D.rank; ++i)
        for (size_t j = i; j < D.rank; ++j)
            if (D.basis_product(i, j) != D.basis_product(j, i))
                return CheckResult::fail("commutativity fails at pair (" + std::to_string(i) +
                                         "," + std::to_string(j) + ")");
    for (size_t i = 0; i < D.rank; ++i)
        for (size_t j = 0; j < D.rank; ++j) {
            std::vector<Scalar> ij = D.basis_product(i, j);
            for (size_t k = 0; k < D.rank; ++k) {
                std::vector<Scalar> jk = D.basis_product(j, k);
                std::vector<Scalar> lhs(D.rank, Scalar::zero(D.dom));
                for (size_t t = 0; t < D.rank; ++t) {
                    if (ij[t].is_zero()) continue;
                    for (auto& [s, c] : D.entries(t, k)) lhs[s] = lhs[s] + ij[t] * c;
                }
                std::vector<Scalar> rhs(D.rank, Scalar::zero(D.dom));
                for (size_t t = 0; t < D.rank; ++t) {
                    if (jk[t].is_zero()) continue;
                    for (auto& [s, c] : D.entries(i, t)) rhs[s] = rhs[s] + jk[t] * c;
                }
                if (lhs != rhs)
                    return CheckResult::fail("associativity fails at triple (" +
                                             std::to_string(i) + "," + std::to_string(j) + "," +
                                             std::to_string(k) + ")");
            }
        }
    return CheckResult::pass();
}

inline FFScheme scheme_from_structure_constants(const FieldPtr& dom, size_t rank,
                                                const std::vector<Scalar>& dense_table,
                                                std::vector<std::string> basis = {},
                                                std::string metadata = "") {
    if (dense_table.size() != rank * rank * rank)
        throw hs_error("structure constant table must have shape rank^3");
    FFScheme D;
    D.dom = dom;
    D.rank = rank;
    D.table.assign(rank * rank, {});
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j)
            for (size_t k = 0; k < rank; ++k) {
                const Scalar& c = dense_table[(i * rank + j) * rank + k];
                if (!c.is_zero()) D.table[i * rank + j].push_back({k, c});
            }
    if (basis.empty()) {
        basis.push_back("1");
        for (size_t i = 1; i < rank; ++i) basis.push_back("e" + std::to_string(i));
    }
    D.basis = std::move(basis);
    D.metadata = std::move(metadata);
    CheckResult ok = validate_scheme(D);
    if (!ok) throw hs_error("invalid structure constants: " + ok.witness);
    return D;
}

// ---------------------------------------------------------------------------
// Truncated polynomial quotients R[x_1..x_e]/(r_1(x_1),..,r_e(x_e)) with
// monic univariate relations; free with the box monomial basis.

/// Basis enumeration shared by the quotient constructions: ascending total
/// degree, ties by descending lexicographic exponent vector.
inline std::vector<Exps> graded_box_monomials(const std::vector<unsigned>& caps) {
    std::vector<Exps> all;
    Exps cur(caps.size(), 0);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == caps.size()) {
            all.push_back(cur);
            return;
        }
        for (unsigned e = 0; e < caps[pos]; ++e) {
            cur[pos] = e;
            rec(pos + 1);
        }
        cur[pos] = 0;
    };
    rec(0);
    std::sort(all.begin(), all.end(), [](const Exps& a, const Exps& b) {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        return a > b; // descending lex within a degree
    });
    return all;
}

/// Quotient by a total-degree power ideal: basis are all monomials of degree <= n.
inline std::vector<Exps> graded_degree_monomials(size_t nvars, unsigned maxdeg) {
    std::vector<Exps> all;
    Exps cur(nvars, 0);
    std::function<void(size_t, unsigned)> rec = [&](size_t pos, unsigned budget) {
        if (pos == nvars) {
            all.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= budget; ++e) {
            cur[pos] = e;
            rec(pos + 1, budget - e);
        }
        cur[pos] = 0;
    };
    rec(0, maxdeg);
    std::sort(all.begin(), all.end(), [](const Exps& a, const Exps& b) {
        unsigned da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        return a > b;
    });
    return all;
}

/// Structure constants for R[x..]/(relations), relations monic and univariate
/// (relation i in variable i).  Basis is the graded box monomial basis.
inline FFScheme truncated_quotient_scheme(const FieldPtr& dom,
                                          const std::vector<std::string>& var_names,
                                          const std::vector<Poly>& relations,
                                          std::string metadata = "") {
    size_t e = var_names.size();
    if (relations.size() != e) throw hs_error("one monic relation per variable required");
    Ring R = make_ring(dom, var_names);
    std::vector<Poly> rels;
    std::vector<unsigned> caps(e);
    for (size_t i = 0; i < e; ++i) {
        Poly r = relations[i];
        if (r.nvars() != e) throw hs_error("relations must live in the quotient ring");
        for (size_t j = 0; j < e; ++j)
            if (j != i && r.degree_in(j) > 0)
                throw hs_error("relation " + std::to_string(i) + " must be univariate");
        unsigned d = r.degree_in(i);
        Exps lead(e, 0);
        lead[i] = d;
        if (d == 0 || !(r.coeff(lead).is_one()))
            throw hs_error("relation " + std::to_string(i) + " is not monic");
        caps[i] = d;
        rels.push_back(r.with_order(R.ord));
    }
    std::vector<Exps> monos = graded_box_monomials(caps);
    std::map<Exps, size_t> index;
    for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

    FFScheme D;
    D.dom = dom;
    D.rank = monos.size();
    D.table.assign(D.rank * D.rank, {});
    D.kind = KernelKind::nilpotent;
    D.metadata = std::move(metadata);
    for (auto& m : monos) {
        Poly lbl = R.one();
        D.basis.push_back(m == Exps(e, 0) ? "1" : lbl.mono_str(m));
    }
    // pairwise-coprime monic leading terms: the relations are a Groebner basis
    for (size_t i = 0; i < D.rank; ++i)
        for (size_t j = i; j < D.rank; ++j) {
            Poly prod = R.zero();
            Poly m = R.one();
            std::vector<typename Poly::Term> ts{{mono_mul(monos[i], monos[j]),
                                                 Scalar::one_of(dom)}};
            prod.set_terms_sorted(std::move(ts));
            Poly red = normal_form(prod, rels);
            for (auto& t : red.terms()) {
                auto it = index.find(t.first);
                if (it == index.end()) throw hs_error("reduction left a non-basis monomial");
                D.table[i * D.rank + j].push_back({it->second, t.second});
            }
            std::sort(D.table[i * D.rank + j].begin(), D.table[i * D.rank + j].end(),
                      [](auto& a, auto& b) { return a.first < b.first; });
            if (j != i) D.table[j * D.rank + i] = D.table[i * D.rank + j];
        }
    return D;
}

/// Tensor product scheme D_outer (x) D_inner with outer-major pair basis.
inline FFScheme compose_schemes(const FFScheme& A, const FFScheme& B) {
    if (!same_field(A.dom, B.dom)) throw hs_error("base-ring mismatch in composition");
    FFScheme D;
    D.dom = A.dom;
    D.rank = A.rank * B.rank;
    D.table.assign(D.rank * D.rank, {});
    D.kind = A.kind == B.kind ? A.kind : KernelKind::mixed;
    D.metadata = "compose";
    for (size_t i = 0; i < A.rank; ++i)
        for (size_t j = 0; j < B.rank; ++j) {
            if (i == 0 && j == 0)
                D.basis.push_back("1");
            else if (i == 0)
                D.basis.push_back(B.basis[j]);
            else if (j == 0)
                D.basis.push_back(A.basis[i]);
            else
                D.basis.push_back(A.basis[i] + "*" + B.basis[j]);
        }
    for (size_t i = 0; i < A.rank; ++i)
        for (size_t i2 = 0; i2 < A.rank; ++i2)
            for (size_t j = 0; j < B.rank; ++j)
                for (size_t j2 = 0; j2 < B.rank; ++j2) {
                    auto& out = D.table[(i * B.rank + j) * D.rank + (i2 * B.rank + j2)];
                    for (auto& [k, c] : A.entries(i, i2))
                        for (auto& [l, d] : B.entries(j, j2))
                            out.push_back({k * B.rank + l, c * d});
                    std::sort(out.begin(), out.end(),
                              [](auto& a, auto& b) { return a.first < b.first; });
                }
    return D;
}

// ---------------------------------------------------------------------------
// Morphisms.

struct FFMorphism {
    const FFScheme* src = nullptr;
    const FFScheme* tgt = nullptr;
    Matrix m; // tgt.rank x src.rank, over the common base
};

struct MorphismReport {
    CheckResult multiplicative;
    bool surjective = false;      // full row rank over the fraction field
    bool closed_embedding = false; // full column rank
};

inline MorphismReport morphism_check(const FFScheme& src, const FFScheme& tgt,
                                     const Matrix& m) {
    MorphismReport rep;
    if (m.rows != tgt.rank || m.cols != src.rank) {
        rep.multiplicative = CheckResult::fail("matrix shape mismatch");
        return rep;
    }
    // unit preservation
    for (size_t k = 0; k < tgt.rank; ++k) {
        Scalar expect = k == 0 ? Scalar::one_of(tgt.dom) : Scalar::zero(tgt.dom);
        if (m.at(k, 0) != expect) {
            rep.multiplicative = CheckResult::fail("unit not preserved");
            return rep;
        }
    }
    // sparse columns
    std::vector<std::vector<std::pair<size_t, Scalar>>> col(src.rank);
    for (size_t j = 0; j < src.rank; ++j)
        for (size_t i = 0; i < tgt.rank; ++i)
            if (!m.at(i, j).is_zero()) col[j].push_back({i, m.at(i, j)});
    for (size_t i = 0; i < src.rank && rep.multiplicative.ok; ++i)
        for (size_t j = i; j < src.rank; ++j) {
            // image of b_i * b_j
            std::vector<Scalar> lhs(tgt.rank, Scalar::zero(tgt.dom));
            for (auto& [k, c] : src.entries(i, j))
                for (auto& [r, v] : col[k]) lhs[r] = lhs[r] + c * v;
            // product of images
            std::vector<Scalar> rhs(tgt.rank, Scalar::zero(tgt.dom));
            for (auto& [r1, v1] : col[i])
                for (auto& [r2, v2] : col[j]) {
                    Scalar p = v1 * v2;
                    for (auto& [k, c] : tgt.entries(r1, r2)) rhs[k] = rhs[k] + p * c;
                }
            if (lhs != rhs) {
                rep.multiplicative = CheckResult::fail(
                    "multiplicativity fails at basis pair (" + src.basis[i] + "," +
                    src.basis[j] + ")");
                break;
            }
        }
    if (!rep.multiplicative.ok) return rep;
    size_t r = rank(m);
    rep.surjective = r == tgt.rank;
    rep.closed_embedding = r == src.rank;
    return rep;
}

/// Inverse of an element, solving x*y = 1 exactly; the multiply-back identity
/// is asserted.  Reports zero augmentation separately for local schemes.
inline std::vector<Scalar> invert_element(const FFScheme& D, const std::vector<Scalar>& x) {
    if (x.size() != D.rank) throw hs_error("element length mismatch");
    if (D.kind == KernelKind::nilpotent && x[0].is_zero())
        throw hs_error("zero augmentation: element is not invertible");
    auto y = solve(D.mul_matrix(x), D.one());
    if (!y)
        throw hs_error(D.kind == KernelKind::split
                           ? "element has a zero component and is not invertible"
                           : "element is not invertible");
    if (D.mul(x, *y) != D.one()) throw hs_error("inversion verification failed");
    return *y;
}

/// Map a characteristic-zero scheme into the field K (structure constants
/// through specialize_scalar).
inline FFScheme specialize_scheme(const FFScheme& D, const FieldPtr& K,
                                  const std::vector<Scalar>& gen_values) {
    FFScheme S = D;
    S.dom = K;
    for (auto& cell : S.table) {
        std::vector<std::pair<size_t, Scalar>> out;
        for (auto& [k, c] : cell) {
            Scalar v = specialize_scalar(c, K, gen_values);
            if (!v.is_zero()) out.push_back({k, std::move(v)});
        }
        cell = std::move(out);
    }
    return S;
}

/// Text dump of the structure constants, one line per nonzero product pair.
inline std::string dump_scheme(const FFScheme& D) {
    std::string out = "rank " + std::to_string(D.rank) + "\n";
    for (size_t i = 0; i < D.rank; ++i)
        for (size_t j = 0; j < D.rank; ++j) {
            if (D.entries(i, j).empty()) continue;
            out += std::to_string(i) + "*" + std::to_string(j) + " =";
            for (auto& [k, c] : D.entries(i, j))
                out += " " + c.str() + "@" + std::to_string(k);
            out += "\n";
        }
    return out;
}

} // namespace hsjet
