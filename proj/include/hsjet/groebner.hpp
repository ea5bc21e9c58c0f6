#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include <hsjet/scalar.hpp>

namespace hsjet {

struct GroebnerBasis {
    MonomialOrder ord;
    std::vector<Poly> polys; // reduced, auto-reduced, monic, ascending leading terms
};

/// Full normal form: every term of the remainder is reducible by no basis element.
inline Poly normal_form(const Poly& p, const std::vector<Poly>& basis) {
    Poly r(p.vars(), p.order(), p.zero_coeff());
    Poly w = p;
    while (!w.is_zero()) {
        bool reduced = false;
        for (auto& g : basis) {
            if (g.is_zero()) continue;
            if (mono_divides(g.lead_exps(), w.lead_exps())) {
                Exps e = mono_div(w.lead_exps(), g.lead_exps());
                Scalar c = w.lead_coeff() / g.lead_coeff();
                w = w - g.term_mul(e, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            Poly lt(p.vars(), p.order(), p.zero_coeff());
            lt.set_terms_sorted({{w.lead_exps(), w.lead_coeff()}});
            r = r + lt;
            w = w - lt;
        }
    }
    return r;
}

/// Buchberger with the sugar selection strategy and both classic criteria.
inline std::vector<Poly> buchberger(std::vector<Poly> gens, MonomialOrder ord) {
    std::vector<Poly> G;
    for (auto& g : gens)
        if (!g.is_zero()) G.push_back(poly_monic(g.with_order(ord)));
    if (G.empty()) return G;

    std::vector<unsigned> sugar;
    for (auto& g : G) sugar.push_back(g.total_degree());

    struct Pair {
        size_t i, j;
        Exps lcm;
        unsigned sugar;
    };
    auto pair_less = [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = cmp_mono(a.lcm, b.lcm, ord);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> queue;
    std::set<std::pair<size_t, size_t>> done;
    auto push_pairs = [&](size_t k) {
        for (size_t i = 0; i < k; ++i) {
            Exps l = mono_lcm(G[i].lead_exps(), G[k].lead_exps());
            unsigned s = std::max(sugar[i] + mono_degree(l) - G[i].total_degree(),
                                  sugar[k] + mono_degree(l) - G[k].total_degree());
            queue.push_back({i, k, std::move(l), s});
        }
    };
    for (size_t k = 1; k < G.size(); ++k) push_pairs(k);

    while (!queue.empty()) {
        auto it = std::min_element(queue.begin(), queue.end(), pair_less);
        Pair pr = *it;
        queue.erase(it);
        done.insert({pr.i, pr.j});
        // product criterion
        if (mono_coprime(G[pr.i].lead_exps(), G[pr.j].lead_exps())) continue;
        // chain criterion
        bool skip = false;
        for (size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(G[k].lead_exps(), pr.lcm)) continue;
            auto key = [&](size_t a, size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (done.count(key(pr.i, k)) && done.count(key(pr.j, k))) skip = true;
        }
        if (skip) continue;

        const Poly &f = G[pr.i], &g = G[pr.j];
        Exps ef = mono_div(pr.lcm, f.lead_exps());
        Exps eg = mono_div(pr.lcm, g.lead_exps());
        Poly s = f.term_mul(ef, g.lead_coeff()) - g.term_mul(eg, f.lead_coeff());
        Poly h = normal_form(s, G);
        if (h.is_zero()) continue;
        G.push_back(poly_monic(h));
        sugar.push_back(std::max(sugar[pr.i] + mono_degree(ef), sugar[pr.j] + mono_degree(eg)));
        push_pairs(G.size() - 1);
    }

    // inter-reduce to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < G.size(); ++i) {
            std::vector<Poly> rest;
            for (size_t j = 0; j < G.size(); ++j)
                if (j != i) rest.push_back(G[j]);
            Poly h = normal_form(G[i], rest);
            if (h.is_zero()) {
                G.erase(G.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
            h = poly_monic(h);
            if (h != G[i]) {
                G[i] = h;
                changed = true;
            }
        }
    }
    std::sort(G.begin(), G.end(), [&](const Poly& a, const Poly& b) {
        return cmp_mono(a.lead_exps(), b.lead_exps(), ord) < 0;
    });
    return G;
}

class Ideal {
public:
    Ideal() = default;
    Ideal(Ring ring, std::vector<Poly> gens) : ring_(std::move(ring)) {
        for (auto& g : gens)
            if (!g.is_zero()) gens_.push_back(std::move(g));
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Poly>& gens() const { return gens_; }

    bool has_basis() const { return gb_ != nullptr; }
    const GroebnerBasis& basis() const {
        if (!gb_) throw hs_error("ideal has no cached Groebner basis");
        return *gb_;
    }

    Ideal with_basis(std::optional<MonomialOrder> ord = std::nullopt) const {
        MonomialOrder o = ord.value_or(ring_.ord);
        if (gb_ && gb_->ord == o) return *this;
        Ideal r = *this;
        auto gb = std::make_shared<GroebnerBasis>();
        gb->ord = o;
        std::vector<Poly> gs;
        for (auto& g : gens_) gs.push_back(g.with_order(o));
        gb->polys = buchberger(std::move(gs), o);
        r.gb_ = std::move(gb);
        return r;
    }

private:
    Ring ring_;
    std::vector<Poly> gens_;
    std::shared_ptr<const GroebnerBasis> gb_;
};

inline Ideal groebner_basis(const Ideal& I, std::optional<MonomialOrder> ord = std::nullopt) {
    return I.with_basis(ord);
}

inline Poly normal_form(const Poly& p, const Ideal& I) {
    const auto& gb = I.basis();
    return normal_form(p.with_order(gb.ord), gb.polys).with_order(p.order());
}

inline bool ideal_contains(const Ideal& I, const Poly& p) {
    if (p.is_zero()) return true;
    if (!I.has_basis()) return ideal_contains(I.with_basis(), p);
    return normal_form(p, I).is_zero();
}

/// Generator-membership containment A <= B.
inline bool ideal_leq(const Ideal& A, const Ideal& B) {
    Ideal Bb = B.has_basis() ? B : B.with_basis();
    for (auto& g : A.gens())
        if (!ideal_contains(Bb, g)) return false;
    return true;
}

inline bool ideal_equal(const Ideal& A, const Ideal& B) { return ideal_leq(A, B) && ideal_leq(B, A); }

inline bool is_unit_ideal(const Ideal& I) {
    Ideal J = I.has_basis() ? I : I.with_basis();
    return !J.basis().polys.empty() && J.basis().polys.front().is_constant();
}

/// Elimination ideal: drop the listed variables, via a lex basis with the
/// dropped variables in front.  The result lives in the ring of kept variables.
inline Ideal eliminate(const Ideal& I, const std::vector<size_t>& drop_vars) {
    const Ring& R = I.ring();
    std::vector<bool> dropped(R.nvars(), false);
    for (size_t v : drop_vars) dropped.at(v) = true;
    std::vector<size_t> order; // dropped first, then kept in declaration order
    std::vector<std::string> kept_names;
    for (size_t i = 0; i < R.nvars(); ++i)
        if (dropped[i]) order.push_back(i);
    for (size_t i = 0; i < R.nvars(); ++i)
        if (!dropped[i]) {
            order.push_back(i);
            kept_names.push_back((*R.vars)[i]);
        }
    std::vector<size_t> pos(R.nvars());
    std::vector<std::string> perm_names(R.nvars());
    for (size_t k = 0; k < order.size(); ++k) {
        pos[order[k]] = k;
        perm_names[k] = (*R.vars)[order[k]];
    }
    Ring P = make_ring(R.field, perm_names, MonomialOrder::lex);
    std::vector<Poly> gens;
    for (auto& g : I.gens()) gens.push_back(g.embed(P.vars, pos, MonomialOrder::lex));
    std::vector<Poly> gb = buchberger(std::move(gens), MonomialOrder::lex);

    Ring K = make_ring(R.field, kept_names, R.ord);
    size_t nd = drop_vars.size();
    std::vector<size_t> keepmap(R.nvars() - nd);
    for (size_t k = nd; k < R.nvars(); ++k) keepmap[k - nd] = k;
    std::vector<Poly> out;
    for (auto& g : gb) {
        bool pure = true;
        for (size_t k = 0; k < nd && pure; ++k)
            if (g.degree_in(k) > 0) pure = false;
        if (!pure) continue;
        // re-read over the kept variables only
        Poly h = K.zero();
        std::vector<typename Poly::Term> ts;
        for (auto& t : g.terms()) {
            Exps e(keepmap.size());
            for (size_t k = 0; k < keepmap.size(); ++k) e[k] = t.first[keepmap[k]];
            ts.push_back({std::move(e), t.second});
        }
        std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
            return cmp_mono(a.first, b.first, K.ord) > 0;
        });
        h.set_terms_sorted(std::move(ts));
        out.push_back(std::move(h));
    }
    return Ideal(K, std::move(out));
}

/// Exact radical membership via the Rabinowitsch trick.
inline bool radical_member(const Poly& p, const Ideal& I) {
    if (p.is_zero()) return true;
    const Ring& R = I.ring();
    std::vector<std::string> names = *R.vars;
    std::string w = "_w";
    while (R.var_index(w)) w += "_";
    names.push_back(w);
    Ring E = make_ring(R.field, names, MonomialOrder::grevlex);
    std::vector<size_t> idmap(R.nvars());
    for (size_t i = 0; i < R.nvars(); ++i) idmap[i] = i;
    std::vector<Poly> gens;
    for (auto& g : I.gens()) gens.push_back(g.embed(E.vars, idmap, E.ord));
    Poly pe = p.embed(E.vars, idmap, E.ord);
    gens.push_back(E.one() - E.var(R.nvars()) * pe);
    Ideal J(E, std::move(gens));
    return is_unit_ideal(J);
}

/// Krull dimension from the leading-term ideal of a grevlex basis;
/// -1 for the unit ideal.
inline int ideal_dimension(const Ideal& I) {
    Ideal J = (I.has_basis() && I.basis().ord == I.ring().ord) ? I : I.with_basis(I.ring().ord);
    if (is_unit_ideal(J)) return -1;
    size_t n = I.ring().nvars();
    std::vector<Exps> leads;
    for (auto& g : J.basis().polys) leads.push_back(g.lead_exps());
    // largest subset S of variables such that no leading monomial lives in S
    int best = 0;
    std::vector<size_t> vars_in;
    std::function<void(size_t, std::vector<bool>&)> rec = [&](size_t v, std::vector<bool>& in) {
        int count = 0;
        for (size_t i = 0; i < n; ++i) count += in[i];
        int possible = count + static_cast<int>(n - v);
        if (possible <= best) return;
        if (v == n) {
            best = std::max(best, count);
            return;
        }
        in[v] = true;
        bool ok = true;
        for (auto& e : leads) {
            bool supported = mono_degree(e) > 0;
            for (size_t i = 0; i < n && supported; ++i)
                if (e[i] > 0 && !in[i]) supported = false;
            if (supported) {
                ok = false;
                break;
            }
        }
        if (ok) rec(v + 1, in);
        in[v] = false;
        rec(v + 1, in);
    };
    std::vector<bool> in(n, false);
    rec(0, in);
    return best;
}

} // namespace hsjet
