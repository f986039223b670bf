#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "wpc/morphism.hpp"

namespace wpc {

// congruence condition at one finite place: a predicate on residue tuples in
// (O/p^m)^{n+1}, given on canonical representatives (see ideal_reduce); when the
// residue space is small the allowed set is cached as a bitmap
struct LocalCondition {
    PrimeIdeal prime;
    int m = 1;
    int nvars = 1;
    IntegralIdeal modulus;  // prime.ideal^m
    std::function<bool(const std::vector<FieldElement>&)> pred;
    std::vector<bool> allowed;  // tuple-index bitmap, empty when too large

    bool use_bitmap() const { return !allowed.empty(); }
};

LocalCondition make_condition(const BaseField& F, const PrimeIdeal& P, int m, int nvars,
                              std::function<bool(const std::vector<FieldElement>&)> pred);

// closed subscheme to avoid mod p: cut out by weighted polynomials, with the
// codimension recorded for tail estimates
struct SubschemeAvoidance {
    WeightVector weights;
    std::vector<WeightedHomogeneousPoly> polys;
    int codim = 2;
};

// the condition "x mod p not in Y(F_p)" at one prime
LocalCondition avoid_subscheme_condition(const BaseField& F, const PrimeIdeal& P,
                                         const SubschemeAvoidance& avoid);

// exact density #allowed / N(p^m)^{nvars}
Rat local_density(const BaseField& F, const LocalCondition& c);

bool satisfies(const BaseField& F, const std::vector<FieldElement>& x,
               const std::vector<LocalCondition>& conds);

// (-1)^{#distinct primes} on squarefree ideals, 0 otherwise
int mobius(const BaseField& F, const IntegralIdeal& n);

struct KFreeResult {
    long count = 0;
    double constant = 0;    // leading constant of the prediction
    double predicted = 0;   // constant * B^{w0}
};

// count classes of K^x/(K^x)^{w0} of height <= B whose w0-free integral
// representatives meet t = a mod n (n = (1): no congruence); prediction from the
// congruence-adjusted leading constant; class number > 1 unsupported
KFreeResult count_kfree(const BaseField& F, int w0, const FieldElement& a,
                        const IntegralIdeal& n, const Rat& B);

// number of integral tuples in the height-B coordinate box whose reduction lies on
// the subscheme at some prime of norm in (M, Mmax]; tests the tail decay in M
long tail_excess_estimate(const BaseField& F, const SubschemeAvoidance& avoid, const Rat& B,
                          long M, long Mmax);

}  // namespace wpc
