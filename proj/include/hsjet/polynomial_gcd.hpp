#pragma once

#include <hsjet/polynomial.hpp>

namespace hsjet {

/// Exact single-divisor division; returns false when b does not divide a.
template <class C>
bool poly_try_divide(const Polynomial<C>& a, const Polynomial<C>& b, Polynomial<C>& q) {
    if (b.is_zero()) throw hs_error("division by zero polynomial");
    Polynomial<C> quot(a.vars(), a.order(), a.zero_coeff());
    Polynomial<C> r = a;
    while (!r.is_zero()) {
        if (!mono_divides(b.lead_exps(), r.lead_exps())) return false;
        Exps e = mono_div(r.lead_exps(), b.lead_exps());
        C c = r.lead_coeff() / b.lead_coeff();
        Polynomial<C> t(a.vars(), a.order(), a.zero_coeff());
        t.set_terms_sorted({{e, c}});
        quot = quot + t;
        r = r - b.term_mul(e, c);
    }
    q = quot;
    return true;
}

template <class C>
Polynomial<C> poly_divide_exact(const Polynomial<C>& a, const Polynomial<C>& b) {
    Polynomial<C> q(a.vars(), a.order(), a.zero_coeff());
    if (!poly_try_divide(a, b, q)) throw hs_error("inexact polynomial division");
    return q;
}

template <class C>
Polynomial<C> poly_monic(const Polynomial<C>& a) {
    if (a.is_zero()) return a;
    return a * a.lead_coeff().inv();
}

/// Pseudo-remainder of a by b viewed as univariate in `var`.
template <class C>
Polynomial<C> poly_prem(Polynomial<C> a, const Polynomial<C>& b, size_t var) {
    unsigned db = b.degree_in(var);
    auto bv = univariate_view(b, var);
    Polynomial<C> lb = bv.at(db);
    while (!a.is_zero() && a.degree_in(var) >= db) {
        unsigned da = a.degree_in(var);
        auto av = univariate_view(a, var);
        Polynomial<C> la = av.at(da);
        Exps shift(a.nvars(), 0);
        shift[var] = da - db;
        a = a * lb - b.term_mul(shift, a.zero_coeff().one()) * la;
    }
    return a;
}

template <class C>
Polynomial<C> poly_gcd(const Polynomial<C>& a, const Polynomial<C>& b);

/// gcd of the univariate-in-`var` coefficients of p.
template <class C>
Polynomial<C> poly_content_in(const Polynomial<C>& p, size_t var) {
    Polynomial<C> g(p.vars(), p.order(), p.zero_coeff());
    for (auto& [d, c] : univariate_view(p, var)) {
        (void)d;
        g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

/// Monic gcd over a field, by primitive pseudo-remainder sequences.
template <class C>
Polynomial<C> poly_gcd(const Polynomial<C>& a, const Polynomial<C>& b) {
    if (a.is_zero()) return poly_monic(b);
    if (b.is_zero()) return poly_monic(a);
    if (a.is_constant() || b.is_constant())
        return Polynomial<C>::constant(a.vars(), a.order(), a.zero_coeff().one());
    size_t var = 0;
    while (a.degree_in(var) == 0 && b.degree_in(var) == 0) ++var;
    if (a.degree_in(var) == 0) return poly_gcd(a, poly_content_in(b, var));
    if (b.degree_in(var) == 0) return poly_gcd(poly_content_in(a, var), b);
    Polynomial<C> ca = poly_content_in(a, var);
    Polynomial<C> cb = poly_content_in(b, var);
    Polynomial<C> c = poly_gcd(ca, cb);
    Polynomial<C> pa = poly_divide_exact(a, ca);
    Polynomial<C> pb = poly_divide_exact(b, cb);
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        Polynomial<C> r = poly_prem(pa, pb, var);
        pa = pb;
        if (r.is_zero()) break;
        pb = poly_divide_exact(r, poly_content_in(r, var));
    }
    return poly_monic(c * poly_divide_exact(pa, poly_content_in(pa, var)));
}

} // namespace hsjet
