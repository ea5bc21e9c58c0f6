#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace hsjet {

using Int = mpz_class;
using Rat = mpq_class;

/// Error type for every precondition / axiom violation in the library.
struct hs_error : std::runtime_error {
    explicit hs_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline Int factorial_int(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int binomial_int(unsigned long n, unsigned long k) {
    if (k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string rat_str(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_str();
}

// ---------------------------------------------------------------------------
// Prime field arithmetic.  Moduli are word-sized primes; products go through
// 128-bit intermediates so any p < 2^63 is safe.

inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s >= p) s -= p;
    return s;
}

inline std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw hs_error("division by zero in F_" + std::to_string(p));
    // extended Euclid on (a, p)
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw hs_error("modulus " + std::to_string(p) + " is not prime");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

/// Reduce an arbitrary integer into [0, p).
inline std::uint64_t fp_from_int(const Int& n, std::uint64_t p) {
    Int r = n % Int(static_cast<unsigned long>(p));
    if (r < 0) r += Int(static_cast<unsigned long>(p));
    return r.get_ui();
}

} // namespace hsjet
