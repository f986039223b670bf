#pragma once

#include <cmath>
#include <stdexcept>

#include "wpc/intutil.hpp"

namespace wpc {

// Exact real number a + b*sqrt(D), D > 1 squarefree (b = 0 when D = 0).
// Closed under multiplication; ordering is decided exactly.
struct QuadExact {
    Rat a, b;
    long D = 0;

    QuadExact() : a(0), b(0), D(0) {}
    QuadExact(Rat a_) : a(std::move(a_)), b(0), D(0) {}
    QuadExact(Rat a_, Rat b_, long D_) : a(std::move(a_)), b(std::move(b_)), D(D_) {
        if (b == 0) D = 0;
        if (D < 0) throw std::domain_error("QuadExact: D must be nonnegative");
    }

    bool is_rational() const { return b == 0; }

    QuadExact operator*(const QuadExact& o) const {
        long d = D ? D : o.D;
        if (D && o.D && D != o.D) throw std::domain_error("QuadExact: mixed radicands");
        return QuadExact(a * o.a + b * o.b * (d ? Rat(d) : Rat(0)), a * o.b + b * o.a, d);
    }
    QuadExact operator+(const QuadExact& o) const {
        long d = D ? D : o.D;
        if (D && o.D && D != o.D) throw std::domain_error("QuadExact: mixed radicands");
        return QuadExact(a + o.a, b + o.b, d);
    }
    QuadExact operator-() const { return QuadExact(-a, -b, D); }

    QuadExact pow(unsigned long e) const {
        QuadExact r{Rat(1)}, base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // sign of a + b*sqrt(D), exact
    int sign() const {
        int sa = sgn(a), sb = sgn(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // compare a^2 with b^2 D; sign decided by the larger magnitude side
        Rat lhs = a * a, rhs = b * b * Rat(D);
        int c = cmp(lhs, rhs);
        if (c == 0) return 0;
        return c > 0 ? sa : sb;
    }

    bool operator<(const QuadExact& o) const { return (*this + (-o)).sign() < 0; }
    bool operator<=(const QuadExact& o) const { return (*this + (-o)).sign() <= 0; }
    bool operator==(const QuadExact& o) const { return (*this + (-o)).sign() == 0; }

    QuadExact abs() const { return sign() < 0 ? -*this : *this; }

    double approx() const {
        int s = sign();
        if (s == 0) return 0.0;
        return s * std::exp(abs().log_approx());
    }

    // log of |a + b*sqrt(D)|, robust against cancellation and huge operands
    double log_approx() const {
        if (sign() == 0) throw std::domain_error("QuadExact: log of zero");
        if (b == 0) return log_abs_rat(a);
        if (a == 0) return log_abs_rat(b) + 0.5 * std::log((double)D);
        if (sgn(a) == sgn(b)) return log_sum_same_sign();
        // |a + b sqrt(D)| = |a^2 - D b^2| / |a - b sqrt(D)|, denominator has equal signs
        QuadExact conj(a, -b, D);
        return log_abs_rat(a * a - b * b * Rat(D)) - conj.log_sum_same_sign();
    }

    static double log_abs_rat(const Rat& q) {
        signed long en, ed;
        double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
        double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
        return std::log(std::fabs(dn)) - std::log(std::fabs(dd)) +
               (double)(en - ed) * std::log(2.0);
    }

  private:
    double log_sum_same_sign() const {
        double la = log_abs_rat(a);
        double lb = log_abs_rat(b) + 0.5 * std::log((double)D);
        double m = std::max(la, lb);
        return m + std::log(std::exp(la - m) + std::exp(lb - m));
    }
};

}  // namespace wpc
