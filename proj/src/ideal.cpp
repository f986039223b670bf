#include "wpc/ideal.hpp"

#include <algorithm>
#include <sstream>

namespace wpc {

std::string IntegralIdeal::str() const {
    std::ostringstream os;
    os << "[" << a.get_str() << "," << b.get_str() << "+" << c.get_str() << "w]";
    return os.str();
}

IntegralIdeal ideal_one(const BaseField&) { return IntegralIdeal{1, 0, 1}; }

Int ideal_norm(const BaseField& F, const IntegralIdeal& I) {
    if (F.is_rational()) return I.a;
    return I.a * I.c;
}

namespace {

// HNF of the Z-module spanned by the rows (u_i, v_i), each standing for
// u + v*omega. Result (a, b, c), throws if rank < 2 (not an ideal) for
// quadratic fields.
IntegralIdeal hnf_rows(std::vector<std::pair<Int, Int>> rows) {
    // Euclid on the second column
    while (true) {
        int nonzero = -1, count = 0;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].second != 0) { ++count; nonzero = int(i); }
        if (count <= 1) break;
        // pick the row with smallest |v| != 0, reduce all others by it
        size_t piv = nonzero;
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i].second != 0 && abs(rows[i].second) < abs(rows[piv].second)) piv = i;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == piv || rows[i].second == 0) continue;
            Int q = rows[i].second / rows[piv].second;  // truncated is fine for Euclid
            rows[i].first -= q * rows[piv].first;
            rows[i].second -= q * rows[piv].second;
        }
    }
    Int a = 0, b = 0, c = 0;
    for (auto& [u, v] : rows) {
        if (v != 0) { b = u; c = v; }
        else mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), u.get_mpz_t());
    }
    if (c < 0) { b = -b; c = -c; }
    if (a == 0 || c == 0) throw std::domain_error("ideal has rank < 2");
    b = ((b % a) + a) % a;
    return IntegralIdeal{a, b, c};
}

std::vector<std::pair<Int, Int>> ideal_zgens(const IntegralIdeal& I) {
    return {{I.a, Int(0)}, {I.b, I.c}};
}

}  // namespace

IntegralIdeal ideal_from_gens(const BaseField& F, const std::vector<FieldElement>& gens) {
    if (F.is_rational()) {
        Int g = 0;
        for (auto& x : gens) {
            if (x.a.get_den() != 1 || x.b != 0)
                throw std::domain_error("ideal_from_gens: non-integral generator");
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.a.get_num().get_mpz_t());
        }
        if (g == 0) throw std::domain_error("zero ideal");
        return IntegralIdeal{g, 0, 1};
    }
    std::vector<std::pair<Int, Int>> rows;
    Rat t(F.omega_trace()), n(F.omega_norm());
    for (auto& x : gens) {
        if (!fe_is_integral(F, x)) throw std::domain_error("ideal_from_gens: non-integral generator");
        if (x.is_zero()) continue;
        rows.emplace_back(x.a.get_num(), x.b.get_num());
        // x*omega = -b*n + (a + b*t)*omega
        FieldElement xo = fe_mul(F, x, FieldElement::omega());
        rows.emplace_back(xo.a.get_num(), xo.b.get_num());
    }
    if (rows.empty()) throw std::domain_error("zero ideal");
    return hnf_rows(std::move(rows));
}

IntegralIdeal ideal_principal(const BaseField& F, const FieldElement& x) {
    if (F.is_rational()) {
        if (x.a == 0) throw std::domain_error("zero ideal");
        Int g = abs(x.a.get_num());
        if (x.a.get_den() != 1) throw std::domain_error("ideal_principal: non-integral");
        return IntegralIdeal{g, 0, 1};
    }
    return ideal_from_gens(F, {x});
}

IntegralIdeal ideal_mul(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J) {
    if (F.is_rational()) return IntegralIdeal{I.a * J.a, 0, 1};
    std::vector<std::pair<Int, Int>> rows;
    auto gi = ideal_zgens(I), gj = ideal_zgens(J);
    Rat zero(0);
    for (auto& [u1, v1] : gi)
        for (auto& [u2, v2] : gj) {
            FieldElement prod = fe_mul(F, FieldElement(Rat(u1), Rat(v1)), FieldElement(Rat(u2), Rat(v2)));
            rows.emplace_back(prod.a.get_num(), prod.b.get_num());
        }
    return hnf_rows(std::move(rows));
}

IntegralIdeal ideal_pow(const BaseField& F, const IntegralIdeal& I, unsigned long e) {
    IntegralIdeal r = ideal_one(F), base = I;
    while (e) {
        if (e & 1) r = ideal_mul(F, r, base);
        base = ideal_mul(F, base, base);
        e >>= 1;
    }
    return r;
}

IntegralIdeal ideal_add(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J) {
    if (F.is_rational()) {
        Int g;
        mpz_gcd(g.get_mpz_t(), I.a.get_mpz_t(), J.a.get_mpz_t());
        return IntegralIdeal{g, 0, 1};
    }
    std::vector<std::pair<Int, Int>> rows = ideal_zgens(I);
    for (auto& r : ideal_zgens(J)) rows.push_back(r);
    return hnf_rows(std::move(rows));
}

IntegralIdeal ideal_conj(const BaseField& F, const IntegralIdeal& I) {
    if (F.is_rational()) return I;
    FieldElement g2 = fe_conj(F, FieldElement(Rat(I.b), Rat(I.c)));
    return ideal_from_gens(F, {FieldElement(Rat(I.a)), g2});
}

bool ideal_contains(const BaseField& F, const IntegralIdeal& I, const FieldElement& x) {
    if (!fe_is_integral(F, x)) return false;
    if (F.is_rational()) return mpz_divisible_p(x.a.get_num().get_mpz_t(), I.a.get_mpz_t());
    Int u = x.a.get_num(), v = x.b.get_num();
    if (!mpz_divisible_p(v.get_mpz_t(), I.c.get_mpz_t())) return false;
    Int q = v / I.c;
    Int rem = u - q * I.b;
    return mpz_divisible_p(rem.get_mpz_t(), I.a.get_mpz_t());
}

bool ideal_divides(const BaseField& F, const IntegralIdeal& J, const IntegralIdeal& I) {
    // J | I  <=>  I subset of J
    return ideal_contains(F, J, FieldElement(Rat(I.a))) &&
           ideal_contains(F, J, FieldElement(Rat(I.b), Rat(I.c)));
}

IntegralIdeal ideal_div(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J) {
    if (F.is_rational()) {
        if (!mpz_divisible_p(I.a.get_mpz_t(), J.a.get_mpz_t()))
            throw std::domain_error("ideal_div: not divisible");
        return IntegralIdeal{I.a / J.a, 0, 1};
    }
    // I / J = I * conj(J) / N(J)
    IntegralIdeal prod = ideal_mul(F, I, ideal_conj(F, J));
    Int n = ideal_norm(F, J);
    if (!mpz_divisible_p(prod.a.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(prod.b.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(prod.c.get_mpz_t(), n.get_mpz_t()))
        throw std::domain_error("ideal_div: not divisible");
    return IntegralIdeal{prod.a / n, prod.b / n, prod.c / n};
}

std::vector<PrimeIdeal> primes_above(const BaseField& F, const Int& p) {
    std::vector<PrimeIdeal> out;
    if (F.is_rational()) {
        PrimeIdeal P;
        P.p = p;
        P.ideal = IntegralIdeal{p, 0, 1};
        out.push_back(P);
        return out;
    }
    int chi = kronecker(F.discriminant(), p);
    long pl = mpz_get_si(p.get_mpz_t());
    Int t(F.omega_trace()), n(F.omega_norm());
    auto root_mod_p = [&]() -> Int {
        // root of x^2 - t x + n mod p
        if (pl == 2) {
            for (long r : {0L, 1L})
                if (((r * r - t.get_si() * r + n) % 2 + 2) % 2 == 0) return Int(r);
            throw std::logic_error("no root mod 2");
        }
        // complete the square: (2x - t)^2 = t^2 - 4n = disc
        long s = sqrt_mod_p(F.discriminant(), pl);
        if (s < 0) throw std::logic_error("no sqrt mod p");
        Int inv2;
        Int two(2), pz(p);
        mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), pz.get_mpz_t());
        Int r = ((t + s) * inv2) % p;
        return ((r % p) + p) % p;
    };
    if (chi == -1) {
        PrimeIdeal P;
        P.p = p; P.f = 2; P.e = 1; P.tag = SplitTag::inert;
        P.ideal = IntegralIdeal{p, 0, p};
        out.push_back(P);
    } else if (chi == 0) {
        PrimeIdeal P;
        P.p = p; P.f = 1; P.e = 2; P.tag = SplitTag::ramified;
        P.omega_root = root_mod_p();
        P.ideal = ideal_from_gens(F, {FieldElement(Rat(p)), FieldElement(Rat(-P.omega_root), Rat(1))});
        out.push_back(P);
    } else {
        Int r = root_mod_p();
        for (int k = 0; k < 2; ++k) {
            PrimeIdeal P;
            P.p = p; P.f = 1; P.e = 1; P.tag = SplitTag::split;
            P.omega_root = r;
            P.ideal = ideal_from_gens(F, {FieldElement(Rat(p)), FieldElement(Rat(-r), Rat(1))});
            out.push_back(P);
            r = ((t - r) % p + p) % p;  // the conjugate root
        }
        if (out[0].ideal == out[1].ideal) throw std::logic_error("split primes coincide");
    }
    return out;
}

std::vector<PrimeIdeal> primes_of_norm_up_to(const BaseField& F, long bound) {
    std::vector<PrimeIdeal> out;
    for (long p : primes_up_to(bound)) {
        if (p > bound) break;
        for (auto& P : primes_above(F, Int(p)))
            if (P.norm() <= bound) out.push_back(P);
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& x, const PrimeIdeal& y) {
        if (x.norm() != y.norm()) return x.norm() < y.norm();
        return x < y;
    });
    return out;
}

int ideal_valuation(const BaseField& F, const IntegralIdeal& I, const PrimeIdeal& P) {
    int v = 0;
    IntegralIdeal Pk = P.ideal;
    while (ideal_divides(F, Pk, I)) {
        ++v;
        Pk = ideal_mul(F, Pk, P.ideal);
    }
    return v;
}

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const BaseField& F, const IntegralIdeal& I) {
    std::vector<std::pair<PrimeIdeal, int>> out;
    Int n = ideal_norm(F, I);
    if (n == 0) throw std::domain_error("zero ideal not factorable");
    if (n == 1) return out;
    for (auto& [p, e] : factor_integer(n)) {
        for (auto& P : primes_above(F, p)) {
            int v = ideal_valuation(F, I, P);
            if (v > 0) out.emplace_back(P, v);
        }
    }
    return out;
}

int element_valuation(const BaseField& F, const FieldElement& x, const PrimeIdeal& P) {
    if (x.is_zero()) throw std::domain_error("infinite valuation");
    // write x = y/m with y integral
    Int m;
    mpz_lcm(m.get_mpz_t(), x.a.get_den().get_mpz_t(), x.b.get_den().get_mpz_t());
    FieldElement y{x.a * m, x.b * m};
    long vm = 0;
    Int mm = m;
    while (mpz_divisible_p(mm.get_mpz_t(), P.p.get_mpz_t())) { ++vm; mm /= P.p; }
    int vy = ideal_valuation(F, ideal_principal(F, y), P);
    return vy - int(vm) * P.e;
}

FieldElement ideal_reduce(const BaseField& F, const IntegralIdeal& I, const FieldElement& x) {
    (void)F;
    if (x.a.get_den() != 1 || x.b.get_den() != 1)
        throw std::invalid_argument("ideal_reduce needs an integral element");
    Int u = x.a.get_num(), v = x.b.get_num();
    Int j = v % I.c;
    if (j < 0) j += I.c;
    Int k = (v - j) / I.c;
    Int i = (u - k * I.b) % I.a;
    if (i < 0) i += I.a;
    return FieldElement{Rat(i), Rat(j)};
}

std::vector<FieldElement> residue_transversal(const BaseField& F, const IntegralIdeal& I) {
    (void)F;
    Int total = I.a * I.c;
    if (!total.fits_slong_p()) throw std::invalid_argument("residue class group too large");
    std::vector<FieldElement> out;
    out.reserve(total.get_si());
    for (Int j = 0; j < I.c; ++j)
        for (Int i = 0; i < I.a; ++i) out.push_back(FieldElement{Rat(i), Rat(j)});
    return out;
}

long residue_index(const BaseField& F, const IntegralIdeal& I, const FieldElement& x) {
    FieldElement r = ideal_reduce(F, I, x);
    Int idx = r.a.get_num() + I.a * r.b.get_num();
    if (!idx.fits_slong_p()) throw std::invalid_argument("residue index overflow");
    return idx.get_si();
}

bool is_squarefree_ideal(const BaseField& F, const IntegralIdeal& I) {
    for (auto& [P, e] : factor_ideal(F, I))
        if (e > 1) return false;
    return true;
}

int mobius_ideal(const BaseField& F, const IntegralIdeal& I) {
    int cnt = 0;
    for (auto& [P, e] : factor_ideal(F, I)) {
        if (e > 1) return 0;
        ++cnt;
    }
    return cnt % 2 == 0 ? 1 : -1;
}

}  // namespace wpc
