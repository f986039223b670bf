#pragma once

#include <set>
#include <string>
#include <vector>

#include "wpc/wproj.hpp"

namespace wpc {

struct Monomial {
    std::vector<long> exps;
    FieldElement coeff;
};

struct WeightedHomogeneousPoly {
    std::vector<Monomial> monomials;

    // common weighted degree sum exps[i] * w[i]; throws if monomials disagree
    long weighted_degree(const WeightVector& src) const;
    FieldElement evaluate(const BaseField& F, const std::vector<FieldElement>& xs) const;
    bool is_zero() const { return monomials.empty(); }
};

struct WeightedMorphism {
    WeightVector src, dst;
    std::vector<WeightedHomogeneousPoly> polys;
    long e_f = 1;
    long degree = 1;  // generic fiber cardinality, catalog metadata
    std::string name;

    bool is_identity() const;
};

// identity morphism on P(w)
WeightedMorphism identity_morphism(const WeightVector& w);

// checks weighted degrees (= e_f * w_i) and the only-common-zero-is-origin condition;
// throws std::invalid_argument with a reason on failure
void validate_morphism(const BaseField& F, const WeightedMorphism& f);

WeightedPoint evaluate(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x);

bool is_representable(const WeightedMorphism& f);
// sorted-weight comparison w'_i <= e(f) w_i, true for every valid morphism
bool weight_compatibility_check(const WeightedMorphism& f);

HeightValue height_through(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x);
HeightValue twisted_height(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x,
                           const FieldElement& d, int tau);

IntegralIdeal defect(const BaseField& F, const WeightedMorphism& f, const WeightedPoint& x);

// resultant of the two dehomogenizations (n = 1 only); zero iff the radical condition fails
FieldElement morphism_resultant(const BaseField& F, const WeightedMorphism& f);
// primes dividing the resultant: the candidate support of the defect set
std::vector<PrimeIdeal> defect_candidate_primes(const BaseField& F, const WeightedMorphism& f);

struct DefectSet {
    std::set<IntegralIdeal> defects;
    bool stabilized = false;  // no new defect when the search bound doubles
};

DefectSet defect_set(const BaseField& F, const WeightedMorphism& f, const Rat& height_bound,
                     const std::vector<PrimeIdeal>& prime_hint = {});

std::vector<WeightedMorphism> load_morphism_catalog(const BaseField& F, const std::string& path);

// integral candidates for one coordinate of a canonical representative of height <= B
// (weight wi); over Q exactly |v| <= B^{wi}, quadratic fields use an embedding box
// with class-representative and unit-cell margins
std::vector<FieldElement> coordinate_candidates(const BaseField& F, int wi, double B);

// all canonical orbit representatives of height <= B (small bounds only)
std::vector<NormalizedRep> small_height_points(const BaseField& F, const WeightVector& w,
                                               const Rat& B);

}  // namespace wpc
