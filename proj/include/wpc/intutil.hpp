#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wpc {

using Int = mpz_class;
using Rat = mpq_class;

// fraction n/d in canonical form (the raw two-argument mpq_class ctor does not reduce)
inline Rat make_rat(const Int& n, const Int& d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = e < 0 ? -e : e;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw std::domain_error("rat_pow: negative power of zero");
        r = 1 / r;
    }
    return r;
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = sqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// Trial division with a Pollard rho fallback for the occasional large cofactor.
std::map<Int, int> factor_integer(Int n);

inline bool is_squarefree_int(const Int& n) {
    for (auto& [p, e] : factor_integer(abs(n)))
        if (e > 1) return false;
    return true;
}

// Primes up to n, cached sieve.
const std::vector<long>& primes_up_to(long n);

inline int kronecker(const Int& a, const Int& b) {
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

// x^2 = a (mod p) for odd prime p, -1 if no root. Tonelli-Shanks.
long sqrt_mod_p(const Int& a, long p);

inline std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace wpc
