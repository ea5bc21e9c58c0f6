#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <hsjet/numeric.hpp>
#include <hsjet/polynomial.hpp>
#include <hsjet/polynomial_gcd.hpp>

namespace hsjet {

// ---------------------------------------------------------------------------
// BaseScalar: an element of Q or of a prime field F_p.

class BaseScalar {
public:
    BaseScalar() : q_(0) {}

    static BaseScalar rational(Rat v) {
        BaseScalar s;
        v.canonicalize();
        s.q_ = std::move(v);
        return s;
    }

    static BaseScalar mod_p(std::uint64_t p, std::uint64_t r) {
        BaseScalar s;
        s.p_ = p;
        s.r_ = r % p;
        return s;
    }

    /// Embed an integer into Q or F_p.
    static BaseScalar from_int(const Int& n, std::uint64_t p) {
        if (p == 0) return rational(Rat(n));
        return mod_p(p, fp_from_int(n, p));
    }

    /// Embed a rational into the field of characteristic p (error if p | den).
    static BaseScalar from_rat(const Rat& q, std::uint64_t p) {
        if (p == 0) return rational(q);
        Rat c = q;
        c.canonicalize();
        Int den = c.get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
            throw hs_error("rational " + rat_str(q) + " has no image in characteristic " +
                           std::to_string(p));
        std::uint64_t n = fp_from_int(c.get_num(), p);
        std::uint64_t d = fp_from_int(den, p);
        return mod_p(p, fp_mul(n, fp_inv(d, p), p));
    }

    std::uint64_t characteristic() const { return p_; }
    bool is_zero() const { return p_ == 0 ? q_ == 0 : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }
    const Rat& rat() const { return q_; }
    std::uint64_t residue() const { return r_; }

    BaseScalar one() const { return from_int(Int(1), p_); }

    BaseScalar operator+(const BaseScalar& o) const {
        check(o);
        return p_ == 0 ? rational(q_ + o.q_) : mod_p(p_, fp_add(r_, o.r_, p_));
    }
    BaseScalar operator-(const BaseScalar& o) const {
        check(o);
        return p_ == 0 ? rational(q_ - o.q_) : mod_p(p_, fp_sub(r_, o.r_, p_));
    }
    BaseScalar operator*(const BaseScalar& o) const {
        check(o);
        return p_ == 0 ? rational(q_ * o.q_) : mod_p(p_, fp_mul(r_, o.r_, p_));
    }
    BaseScalar inv() const {
        if (p_ == 0) {
            if (q_ == 0) throw hs_error("division by zero");
            return rational(1 / q_);
        }
        return mod_p(p_, fp_inv(r_, p_));
    }
    BaseScalar operator/(const BaseScalar& o) const { return *this * o.inv(); }
    BaseScalar operator-() const { return from_int(Int(0), p_) - *this; }

    bool operator==(const BaseScalar& o) const {
        return p_ == o.p_ && (p_ == 0 ? q_ == o.q_ : r_ == o.r_);
    }
    bool operator!=(const BaseScalar& o) const { return !(*this == o); }
    bool operator<(const BaseScalar& o) const {
        if (p_ != o.p_) return p_ < o.p_;
        return p_ == 0 ? q_ < o.q_ : r_ < o.r_;
    }

    bool display_negative() const { return p_ == 0 && q_ < 0; }

    std::string str() const {
        if (p_ == 0) return rat_str(q_);
        return std::to_string(r_);
    }

private:
    void check(const BaseScalar& o) const {
        if (p_ != o.p_) throw hs_error("mixed coefficient characteristics");
    }

    std::uint64_t p_ = 0; // 0 = rationals
    Rat q_;
    std::uint64_t r_ = 0;
};

using BasePoly = Polynomial<BaseScalar>;

// ---------------------------------------------------------------------------
// Field domains: Q, F_p, and one-layer fraction fields k(t_1,..,t_r).

struct FieldDomain {
    std::uint64_t p = 0;           // characteristic (0 for Q-based)
    std::vector<std::string> gens; // empty for prime fields
    VarsPtr gen_vars;              // shared variable list for numerators/denominators

    bool prime_field() const { return gens.empty(); }

    std::string name() const {
        std::string base = p == 0 ? "Q" : "F_" + std::to_string(p);
        if (gens.empty()) return base;
        std::string out = base + "(";
        for (size_t i = 0; i < gens.size(); ++i) {
            if (i) out += ",";
            out += gens[i];
        }
        return out + ")";
    }
};

using FieldPtr = std::shared_ptr<const FieldDomain>;

inline FieldPtr field_Q() {
    auto d = std::make_shared<FieldDomain>();
    d->gen_vars = make_vars({});
    return d;
}

inline FieldPtr field_Fp(std::uint64_t p) {
    auto d = std::make_shared<FieldDomain>();
    d->p = p;
    d->gen_vars = make_vars({});
    return d;
}

inline FieldPtr field_fraction(std::uint64_t p, std::vector<std::string> gens) {
    auto d = std::make_shared<FieldDomain>();
    d->p = p;
    d->gens = gens;
    d->gen_vars = make_vars(std::move(gens));
    return d;
}

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    return a == b || (a->p == b->p && a->gens == b->gens);
}

// ---------------------------------------------------------------------------
// Scalar: an element of a FieldDomain, always in canonical form (reduced
// fraction with monic denominator).

class Scalar {
public:
    Scalar() = default;

    static Scalar zero(const FieldPtr& dom) { return of_int(dom, Int(0)); }
    static Scalar one_of(const FieldPtr& dom) { return of_int(dom, Int(1)); }

    static Scalar of_int(const FieldPtr& dom, const Int& n) {
        return of_base(dom, BaseScalar::from_int(n, dom->p));
    }
    static Scalar of_int(const FieldPtr& dom, long n) { return of_int(dom, Int(n)); }
    static Scalar of_rat(const FieldPtr& dom, const Rat& q) {
        return of_base(dom, BaseScalar::from_rat(q, dom->p));
    }

    static Scalar of_base(const FieldPtr& dom, BaseScalar v) {
        if (v.characteristic() != dom->p) throw hs_error("scalar characteristic mismatch");
        Scalar s;
        s.dom_ = dom;
        if (dom->prime_field()) {
            s.base_ = std::move(v);
        } else {
            BasePoly num = BasePoly::constant(dom->gen_vars, MonomialOrder::grevlex, v);
            BasePoly den = BasePoly::constant(dom->gen_vars, MonomialOrder::grevlex,
                                              v.one());
            s.frac_ = std::make_shared<const Frac>(Frac{std::move(num), std::move(den)});
        }
        return s;
    }

    static Scalar generator(const FieldPtr& dom, size_t i) {
        if (dom->prime_field()) throw hs_error("prime field has no generators");
        BaseScalar one = BaseScalar::from_int(Int(1), dom->p);
        return fraction(dom,
                        BasePoly::variable(dom->gen_vars, MonomialOrder::grevlex, one, i),
                        BasePoly::constant(dom->gen_vars, MonomialOrder::grevlex, one));
    }

    static Scalar fraction(const FieldPtr& dom, BasePoly num, BasePoly den) {
        if (dom->prime_field()) throw hs_error("fraction in a prime field domain");
        if (den.is_zero()) throw hs_error("zero denominator");
        Scalar s;
        s.dom_ = dom;
        if (num.is_zero()) {
            den = BasePoly::constant(dom->gen_vars, MonomialOrder::grevlex,
                                     BaseScalar::from_int(Int(1), dom->p));
        } else {
            BasePoly g = poly_gcd(num, den);
            if (!g.is_constant()) {
                num = poly_divide_exact(num, g);
                den = poly_divide_exact(den, g);
            }
            BaseScalar lc = den.lead_coeff().inv();
            num = num * lc;
            den = den * lc;
        }
        s.frac_ = std::make_shared<const Frac>(Frac{std::move(num), std::move(den)});
        return s;
    }

    const FieldPtr& domain() const { return dom_; }
    std::uint64_t characteristic() const { return dom_->p; }
    bool prime_field_value() const { return !frac_; }

    const BaseScalar& base() const {
        assert(!frac_);
        return base_;
    }
    const BasePoly& num() const {
        assert(frac_);
        return frac_->num;
    }
    const BasePoly& den() const {
        assert(frac_);
        return frac_->den;
    }

    bool is_zero() const { return frac_ ? frac_->num.is_zero() : base_.is_zero(); }
    bool is_one() const {
        if (!frac_) return base_.is_one();
        return frac_->den.is_constant() && frac_->num.is_constant() && !frac_->num.is_zero() &&
               frac_->num.constant_value().is_one() && frac_->den.constant_value().is_one();
    }

    Scalar one() const { return one_of(dom_); }

    Scalar operator+(const Scalar& o) const {
        check(o);
        if (!frac_) return of_base(dom_, base_ + o.base_);
        return fraction(dom_, num() * o.den() + o.num() * den(), den() * o.den());
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        if (!frac_) return of_base(dom_, base_ - o.base_);
        return fraction(dom_, num() * o.den() - o.num() * den(), den() * o.den());
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        if (!frac_) return of_base(dom_, base_ * o.base_);
        return fraction(dom_, num() * o.num(), den() * o.den());
    }
    Scalar inv() const {
        if (!frac_) return of_base(dom_, base_.inv());
        if (is_zero()) throw hs_error("division by zero");
        return fraction(dom_, den(), num());
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
    Scalar operator-() const { return zero(dom_) - *this; }

    Scalar pow(long e) const {
        Scalar b = e < 0 ? inv() : *this;
        unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
        Scalar r = one_of(dom_);
        while (n) {
            if (n & 1ul) r = r * b;
            n >>= 1ul;
            if (n) b = b * b;
        }
        return r;
    }

    bool operator==(const Scalar& o) const {
        if (!same_field(dom_, o.dom_)) return false;
        if (!frac_) return base_ == o.base_;
        return num() == o.num() && den() == o.den();
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    bool operator<(const Scalar& o) const {
        if (dom_->p != o.dom_->p) return dom_->p < o.dom_->p;
        if (!frac_ != !o.frac_) return !frac_;
        if (!frac_) return base_ < o.base_;
        int c = num().cmp(o.num());
        if (c != 0) return c < 0;
        return den().cmp(o.den()) < 0;
    }

    bool display_negative() const {
        if (!frac_) return base_.display_negative();
        return !num().is_zero() && num().lead_coeff().display_negative();
    }

    std::string str() const {
        if (!frac_) return base_.str();
        std::string n = num().str();
        if (den().is_constant()) return n;
        std::string d = den().str();
        auto wrap = [](std::string s) {
            bool parenthesized = s.size() >= 2 && s.front() == '(' && s.back() == ')';
            if (s.find('*') != std::string::npos ||
                s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos ||
                (s.find('/') != std::string::npos && !parenthesized))
                return "(" + s + ")";
            return s;
        };
        return wrap(n) + "/" + wrap(d);
    }

private:
    struct Frac {
        BasePoly num, den;
    };

    void check(const Scalar& o) const {
        if (!same_field(dom_, o.dom_)) throw hs_error("mixed coefficient domains");
    }

    FieldPtr dom_;
    BaseScalar base_;
    std::shared_ptr<const Frac> frac_;
};

using Poly = Polynomial<Scalar>;

// ---------------------------------------------------------------------------
// Ring: a polynomial ring descriptor over a Scalar field.

struct Ring {
    FieldPtr field;
    VarsPtr vars;
    MonomialOrder ord = MonomialOrder::grevlex;

    size_t nvars() const { return vars->size(); }

    Poly zero() const { return Poly(vars, ord, Scalar::zero(field)); }
    Poly one() const { return constant(1); }
    Poly constant(const Scalar& c) const { return Poly::constant(vars, ord, c); }
    Poly constant(long n) const { return constant(Scalar::of_int(field, n)); }
    Poly var(size_t i, unsigned deg = 1) const {
        return Poly::variable(vars, ord, Scalar::one_of(field), i, deg);
    }

    std::optional<size_t> var_index(const std::string& name) const {
        for (size_t i = 0; i < vars->size(); ++i)
            if ((*vars)[i] == name) return i;
        return std::nullopt;
    }

    bool same(const Ring& o) const {
        return same_field(field, o.field) && *vars == *o.vars && ord == o.ord;
    }
};

inline Ring make_ring(FieldPtr field, std::vector<std::string> vars,
                      MonomialOrder ord = MonomialOrder::grevlex) {
    return Ring{std::move(field), make_vars(std::move(vars)), ord};
}

/// Map a characteristic-zero scalar (in Q or Q(c_1..c_e)) into the field K,
/// sending generator i to gen_values[i].  Rational coefficients are reduced
/// into the characteristic of K.
inline Scalar specialize_scalar(const Scalar& s, const FieldPtr& K,
                                const std::vector<Scalar>& gen_values) {
    if (s.characteristic() != 0)
        throw hs_error("specialization source must have characteristic 0");
    if (s.prime_field_value()) return Scalar::of_rat(K, s.base().rat());
    auto eval = [&](const BasePoly& p) {
        Scalar acc = Scalar::zero(K);
        for (auto& t : p.terms()) {
            Scalar v = Scalar::of_rat(K, t.second.rat());
            for (size_t i = 0; i < t.first.size(); ++i)
                for (unsigned k = 0; k < t.first[i]; ++k) v = v * gen_values.at(i);
            acc = acc + v;
        }
        return acc;
    };
    Scalar d = eval(s.den());
    if (d.is_zero()) throw hs_error("specialization hits a zero denominator");
    return eval(s.num()) / d;
}

} // namespace hsjet
