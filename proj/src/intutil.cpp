#include "wpc/intutil.hpp"

#include <mutex>

namespace wpc {

namespace {

Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEul);
    while (true) {
        Int x = rng.get_z_range(n - 2) + 2;
        Int y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = abs(x - y);
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n && d > 1) return d;
    }
}

void factor_rec(Int n, std::map<Int, int>& out) {
    if (n <= 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        out[n]++;
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::map<Int, int> factor_integer(Int n) {
    if (n == 0) throw std::domain_error("factor_integer: zero");
    n = abs(n);
    std::map<Int, int> out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Int(p)]++;
            n /= p;
        }
        if (n == 1) return out;
    }
    Int p = 41;
    while (p * p <= n && p < 100000) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out[p]++;
            n /= p;
        }
        p += 2;
    }
    factor_rec(n, out);
    return out;
}

const std::vector<long>& primes_up_to(long n) {
    static std::vector<long> primes;
    static long sieved_to = 0;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (n > sieved_to) {
        long lim = std::max(n, 2 * sieved_to);
        std::vector<bool> comp(lim + 1, false);
        primes.clear();
        for (long i = 2; i <= lim; ++i) {
            if (!comp[i]) {
                primes.push_back(i);
                for (long j = 2 * i; j <= lim; j += i) comp[j] = true;
            }
        }
        sieved_to = lim;
    }
    return primes;
}

long sqrt_mod_p(const Int& a, long p) {
    Int am = ((a % p) + p) % p;
    if (p == 2) return mpz_get_si(am.get_mpz_t());
    if (am == 0) return 0;
    if (mpz_kronecker_si(am.get_mpz_t(), p) != 1) return -1;
    auto powmod = [&](Int b, Int e) {
        Int r, pz(p);
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), pz.get_mpz_t());
        return r;
    };
    if (p % 4 == 3) return mpz_get_si(powmod(am, Int((p + 1) / 4)).get_mpz_t());
    // Tonelli-Shanks
    Int q = p - 1;
    long s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    Int z = 2;
    while (mpz_kronecker_si(z.get_mpz_t(), p) != -1) ++z;
    Int m = s, c = powmod(z, q), t = powmod(am, q), r = powmod(am, (q + 1) / 2);
    while (t != 1) {
        Int tt = t;
        long i = 0;
        while (tt != 1) { tt = tt * tt % p; ++i; }
        Int b = c;
        for (long j = 0; j < mpz_get_si(m.get_mpz_t()) - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return mpz_get_si(r.get_mpz_t());
}

}  // namespace wpc
