#pragma once

#include <optional>
#include <vector>

#include "wpc/field.hpp"

namespace wpc {

// Integral ideal in Hermite form: a*Z + (b + c*omega)*Z with a,c > 0, c|a,
// c|b, 0 <= b < a. For K = Q the ideal is (a) and b = 0, c = 1 by convention
// (norm = a). The zero ideal is not representable.
struct IntegralIdeal {
    Int a = 1, b = 0, c = 1;

    bool operator==(const IntegralIdeal& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const IntegralIdeal& o) const { return !(*this == o); }
    bool operator<(const IntegralIdeal& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool is_unit_ideal() const { return a == 1 && c == 1; }
    std::string str() const;
};

IntegralIdeal ideal_one(const BaseField& F);
Int ideal_norm(const BaseField& F, const IntegralIdeal& I);

// ideal generated by integral elements (throws on the zero ideal)
IntegralIdeal ideal_from_gens(const BaseField& F, const std::vector<FieldElement>& gens);
IntegralIdeal ideal_principal(const BaseField& F, const FieldElement& x);

IntegralIdeal ideal_mul(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J);
IntegralIdeal ideal_pow(const BaseField& F, const IntegralIdeal& I, unsigned long e);
// sum I + J (the gcd of ideals)
IntegralIdeal ideal_add(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J);
IntegralIdeal ideal_conj(const BaseField& F, const IntegralIdeal& I);
// exact quotient I/J; throws if J does not divide I
IntegralIdeal ideal_div(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J);
bool ideal_divides(const BaseField& F, const IntegralIdeal& J, const IntegralIdeal& I);
bool ideal_contains(const BaseField& F, const IntegralIdeal& I, const FieldElement& x);

enum class SplitTag { split, inert, ramified, rational_prime };

struct PrimeIdeal {
    Int p;               // residue characteristic
    int f = 1;           // residue degree
    int e = 1;           // ramification index
    SplitTag tag = SplitTag::rational_prime;
    IntegralIdeal ideal;
    // root of the minimal polynomial of omega mod p (split/ramified), else -1
    Int omega_root = -1;

    Int norm() const { return f == 2 ? p * p : p; }
    bool operator<(const PrimeIdeal& o) const {
        if (p != o.p) return p < o.p;
        return ideal < o.ideal;
    }
    bool operator==(const PrimeIdeal& o) const { return p == o.p && ideal == o.ideal; }
};

// all primes of K above the rational prime p
std::vector<PrimeIdeal> primes_above(const BaseField& F, const Int& p);

// primes of K with norm <= bound, sorted by norm
std::vector<PrimeIdeal> primes_of_norm_up_to(const BaseField& F, long bound);

std::vector<std::pair<PrimeIdeal, int>> factor_ideal(const BaseField& F, const IntegralIdeal& I);

int ideal_valuation(const BaseField& F, const IntegralIdeal& I, const PrimeIdeal& P);
// p-adic valuation of a (possibly non-integral) nonzero element
int element_valuation(const BaseField& F, const FieldElement& x, const PrimeIdeal& P);

// canonical representative of x mod I inside the transversal
// {i + j*omega : 0 <= i < a, 0 <= j < c}; throws on non-integral x
FieldElement ideal_reduce(const BaseField& F, const IntegralIdeal& I, const FieldElement& x);
// the transversal above, indexed by i + a*j (size = norm)
std::vector<FieldElement> residue_transversal(const BaseField& F, const IntegralIdeal& I);
// position of ideal_reduce(F, I, x) in residue_transversal(F, I)
long residue_index(const BaseField& F, const IntegralIdeal& I, const FieldElement& x);

bool is_squarefree_ideal(const BaseField& F, const IntegralIdeal& I);
// (-1)^{#distinct primes} on squarefree ideals, 0 otherwise
int mobius_ideal(const BaseField& F, const IntegralIdeal& I);

}  // namespace wpc
