#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <hsjet/numeric.hpp>

namespace hsjet {

enum class MonomialOrder { grevlex, lex };

/// Exponent vector; one entry per ambient variable.
using Exps = std::vector<unsigned>;

using VarsPtr = std::shared_ptr<const std::vector<std::string>>;

inline VarsPtr make_vars(std::vector<std::string> v) {
    return std::make_shared<const std::vector<std::string>>(std::move(v));
}

inline unsigned mono_degree(const Exps& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

/// Three-way monomial comparison under the given order: <0, 0, >0 as a <,=,> b.
inline int cmp_mono(const Exps& a, const Exps& b, MonomialOrder ord) {
    assert(a.size() == b.size());
    if (ord == MonomialOrder::lex) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    unsigned da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db ? -1 : 1;
    // graded reverse lex: last nonzero entry of a-b negative => a > b
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
}

struct MonoCmpDesc {
    MonomialOrder ord = MonomialOrder::grevlex;
    bool operator()(const Exps& a, const Exps& b) const { return cmp_mono(a, b, ord) > 0; }
};

inline Exps mono_mul(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool mono_divides(const Exps& a, const Exps& b) { // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exps mono_div(const Exps& b, const Exps& a) { // b / a
    Exps r(b.size());
    for (size_t i = 0; i < b.size(); ++i) {
        assert(b[i] >= a[i]);
        r[i] = b[i] - a[i];
    }
    return r;
}

inline Exps mono_lcm(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool mono_coprime(const Exps& a, const Exps& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

/// Sparse multivariate polynomial over an exact coefficient field C.
///
/// Terms are kept sorted descending in the active monomial order with no zero
/// coefficients, so equality is representational equality.  C must provide
/// field arithmetic, is_zero/is_one, operator==/<, str(), and
/// display_negative().
template <class C>
class Polynomial {
public:
    using Term = std::pair<Exps, C>;

    Polynomial(VarsPtr vars, MonomialOrder ord, C zero)
        : vars_(std::move(vars)), ord_(ord), zero_(std::move(zero)) {}

    static Polynomial constant(VarsPtr vars, MonomialOrder ord, const C& v) {
        Polynomial p(vars, ord, v - v);
        if (!v.is_zero()) p.terms_.push_back({Exps(p.nvars(), 0), v});
        return p;
    }

    static Polynomial variable(VarsPtr vars, MonomialOrder ord, const C& one, size_t idx,
                               unsigned deg = 1) {
        Polynomial p(vars, ord, one - one);
        assert(idx < p.nvars());
        if (deg == 0) return constant(vars, ord, one);
        Exps e(p.nvars(), 0);
        e[idx] = deg;
        p.terms_.push_back({std::move(e), one});
        return p;
    }

    size_t nvars() const { return vars_->size(); }
    const VarsPtr& vars() const { return vars_; }
    MonomialOrder order() const { return ord_; }
    const C& zero_coeff() const { return zero_; }
    bool is_zero() const { return terms_.empty(); }
    size_t nterms() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_[0].first) == 0);
    }

    const C& constant_value() const {
        assert(is_constant());
        return terms_.empty() ? zero_ : terms_[0].second;
    }

    const Exps& lead_exps() const {
        assert(!terms_.empty());
        return terms_.front().first;
    }

    const C& lead_coeff() const {
        assert(!terms_.empty());
        return terms_.front().second;
    }

    unsigned total_degree() const { // degree of the zero polynomial reported as 0
        unsigned d = 0;
        for (auto& t : terms_) d = std::max(d, mono_degree(t.first));
        return d;
    }

    unsigned degree_in(size_t var) const {
        unsigned d = 0;
        for (auto& t : terms_) d = std::max(d, t.first[var]);
        return d;
    }

    C coeff(const Exps& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [&](const Term& t, const Exps& key) {
                                       return cmp_mono(t.first, key, ord_) > 0;
                                   });
        if (it != terms_.end() && it->first == e) return it->second;
        return zero_;
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& t : r.terms_) t.second = zero_ - t.second;
        return r;
    }

    Polynomial operator+(const Polynomial& o) const {
        check_ring(o);
        Polynomial r(vars_, ord_, zero_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = cmp_mono(terms_[i].first, o.terms_[j].first, ord_);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                C s = terms_[i].second + o.terms_[j].second;
                if (!s.is_zero()) r.terms_.push_back({terms_[i].first, std::move(s)});
                ++i;
                ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    /// Multiply by a single term.
    Polynomial term_mul(const Exps& e, const C& c) const {
        Polynomial r(vars_, ord_, zero_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (auto& t : terms_) {
            C v = t.second * c;
            if (!v.is_zero()) r.terms_.push_back({mono_mul(t.first, e), std::move(v)});
        }
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        check_ring(o);
        std::map<Exps, C, MonoCmpDesc> acc{MonoCmpDesc{ord_}};
        for (auto& a : terms_)
            for (auto& b : o.terms_) {
                Exps e = mono_mul(a.first, b.first);
                C v = a.second * b.second;
                auto it = acc.find(e);
                if (it == acc.end()) {
                    if (!v.is_zero()) acc.emplace(std::move(e), std::move(v));
                } else {
                    it->second = it->second + v;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        Polynomial r(vars_, ord_, zero_);
        r.terms_.assign(acc.begin(), acc.end());
        return r;
    }

    Polynomial operator*(const C& c) const { return term_mul(Exps(nvars(), 0), c); }

    Polynomial pow(unsigned n) const {
        Polynomial base = *this;
        Polynomial r = constant_one();
        while (n > 0) {
            if (n & 1u) r = r * base;
            n >>= 1u;
            if (n) base = base * base;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].first != o.terms_[i].first || !(terms_[i].second == o.terms_[i].second))
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Total order for use as a map key (ring-wise arbitrary but fixed).
    int cmp(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size() ? -1 : 1;
        for (size_t i = 0; i < terms_.size(); ++i) {
            int c = cmp_mono(terms_[i].first, o.terms_[i].first, ord_);
            if (c != 0) return c;
            if (terms_[i].second < o.terms_[i].second) return -1;
            if (o.terms_[i].second < terms_[i].second) return 1;
        }
        return 0;
    }
    bool operator<(const Polynomial& o) const { return cmp(o) < 0; }

    /// Evaluate at a point given by one coefficient per variable.
    C evaluate(const std::vector<C>& point) const {
        assert(point.size() == nvars());
        C acc = zero_;
        for (auto& t : terms_) {
            C v = t.second;
            for (size_t i = 0; i < point.size(); ++i)
                for (unsigned k = 0; k < t.first[i]; ++k) v = v * point[i];
            acc = acc + v;
        }
        return acc;
    }

    /// Simultaneous substitution x_i -> images[i]; images share a target ring.
    Polynomial substitute(const std::vector<Polynomial>& images) const {
        assert(images.size() == nvars());
        assert(!images.empty() || nvars() == 0);
        VarsPtr tvars = images.empty() ? vars_ : images[0].vars_;
        MonomialOrder tord = images.empty() ? ord_ : images[0].ord_;
        Polynomial acc(tvars, tord, zero_);
        // cache powers per variable
        std::vector<std::vector<Polynomial>> pows(nvars());
        for (auto& t : terms_) {
            Polynomial m = Polynomial::constant(tvars, tord, t.second);
            for (size_t i = 0; i < nvars(); ++i) {
                unsigned e = t.first[i];
                if (e == 0) continue;
                auto& pv = pows[i];
                if (pv.empty()) pv.push_back(images[i]);
                while (pv.size() < e) pv.push_back(pv.back() * images[i]);
                m = m * pv[e - 1];
            }
            acc = acc + m;
        }
        return acc;
    }

    /// Map coefficients into another field, dropping produced zeros.
    template <class D, class F>
    Polynomial<D> map_coeffs(F&& f, const D& zero) const {
        Polynomial<D> r(vars_, ord_, zero);
        std::vector<typename Polynomial<D>::Term> ts;
        for (auto& t : terms_) {
            D v = f(t.second);
            if (!v.is_zero()) ts.push_back({t.first, std::move(v)});
        }
        r.set_terms_sorted(std::move(ts));
        return r;
    }

    /// Formal partial derivative; integer factors mapped through the field.
    Polynomial derivative(size_t var) const {
        Polynomial r(vars_, ord_, zero_);
        std::vector<Term> ts;
        for (auto& t : terms_) {
            if (t.first[var] == 0) continue;
            C c = t.second;
            C factor = zero_;
            for (unsigned k = 0; k < t.first[var]; ++k) factor = factor + one_of(c);
            c = c * factor;
            if (c.is_zero()) continue;
            Exps e = t.first;
            e[var] -= 1;
            ts.push_back({std::move(e), std::move(c)});
        }
        std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) {
            return cmp_mono(a.first, b.first, ord_) > 0;
        });
        r.terms_ = std::move(ts);
        return r;
    }

    /// Drop all monomials of total degree > d.
    Polynomial truncate_total_degree(unsigned d) const {
        Polynomial r(vars_, ord_, zero_);
        for (auto& t : terms_)
            if (mono_degree(t.first) <= d) r.terms_.push_back(t);
        return r;
    }

    Polynomial with_order(MonomialOrder ord) const {
        if (ord == ord_) return *this;
        Polynomial r(vars_, ord, zero_);
        r.terms_ = terms_;
        std::sort(r.terms_.begin(), r.terms_.end(), [&](const Term& a, const Term& b) {
            return cmp_mono(a.first, b.first, ord) > 0;
        });
        return r;
    }

    /// Reinterpret over a wider variable list; old variable i becomes position map[i].
    Polynomial embed(VarsPtr tvars, const std::vector<size_t>& map, MonomialOrder ord) const {
        Polynomial r(tvars, ord, zero_);
        std::vector<Term> ts;
        ts.reserve(terms_.size());
        for (auto& t : terms_) {
            Exps e(tvars->size(), 0);
            for (size_t i = 0; i < nvars(); ++i) e[map[i]] = t.first[i];
            ts.push_back({std::move(e), t.second});
        }
        std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) {
            return cmp_mono(a.first, b.first, ord) > 0;
        });
        r.terms_ = std::move(ts);
        return r;
    }

    void set_terms_sorted(std::vector<Term> ts) { terms_ = std::move(ts); }

    std::string str() const {
        return str([](const C& c) { return c.str(); });
    }

    template <class F>
    std::string str(F&& coeff_str) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& t : terms_) {
            C c = t.second;
            bool neg = c.display_negative();
            if (neg) c = zero_ - c;
            if (first) {
                if (neg) out += "-";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            std::string mono = mono_str(t.first);
            std::string cs = coeff_str(c);
            if (mono.empty()) {
                out += maybe_paren(cs);
            } else if (c.is_one()) {
                out += mono;
            } else {
                out += maybe_paren(cs) + "*" + mono;
            }
        }
        return out;
    }

    std::string mono_str(const Exps& e) const {
        std::string out;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += (*vars_)[i];
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
        return out;
    }

private:
    Polynomial constant_one() const {
        // derive 1 from the zero element's field handle
        C one = one_of(zero_);
        return constant(vars_, ord_, one);
    }

    static C one_of(const C& c) { return c.one(); }

    static std::string maybe_paren(const std::string& s) {
        if (s.find_first_of("+-*/ ") != std::string::npos) return "(" + s + ")";
        return s;
    }

    void check_ring(const Polynomial& o) const {
        if (nvars() != o.nvars() || ord_ != o.ord_)
            throw hs_error("polynomial ring mismatch");
    }

    VarsPtr vars_;
    MonomialOrder ord_;
    C zero_;
    std::vector<Term> terms_;
};

/// Coefficients of p viewed as univariate in `var`, as polynomials in the rest.
template <class C>
std::map<unsigned, Polynomial<C>> univariate_view(const Polynomial<C>& p, size_t var) {
    std::map<unsigned, Polynomial<C>> out;
    for (auto& t : p.terms()) {
        unsigned d = t.first[var];
        auto it = out.find(d);
        if (it == out.end())
            it = out.emplace(d, Polynomial<C>(p.vars(), p.order(), p.zero_coeff())).first;
        Exps e = t.first;
        e[var] = 0;
        Polynomial<C> m(p.vars(), p.order(), p.zero_coeff());
        m.set_terms_sorted({{std::move(e), t.second}});
        it->second = it->second + m;
    }
    return out;
}

} // namespace hsjet
