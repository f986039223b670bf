#pragma once

#include <optional>

#include "wpc/ideal.hpp"

namespace wpc {

struct FieldInvariants {
    Int h = 1;                                   // class number
    std::vector<IntegralIdeal> class_reps;       // one ideal per class, reps[0] = (1)
    std::optional<FieldElement> fundamental_unit;  // real quadratic only
    double regulator = 1.0;
    int varpi = 2;  // number of roots of unity
};

// computed invariants are cached per field
const FieldInvariants& field_invariants(const BaseField& F);

// smallest unit > 1 of a real quadratic field (errors otherwise)
FieldElement fundamental_unit(const BaseField& F);

// generator of I if principal (up to units), deterministic choice
std::optional<FieldElement> principal_generator(const BaseField& F, const IntegralIdeal& I);

bool ideal_is_principal(const BaseField& F, const IntegralIdeal& I);
// same ideal class?
bool ideal_class_equal(const BaseField& F, const IntegralIdeal& I, const IntegralIdeal& J);
// index into field_invariants(F).class_reps
int ideal_class_index(const BaseField& F, const IntegralIdeal& I);

// torsion units of O_K^x (both signs; 4 for Q(i), 6 for Q(sqrt -3), else {1,-1})
std::vector<FieldElement> torsion_units(const BaseField& F);

// zeta_K(s) for integer s >= 2 within tol (default 1e-9)
double dedekind_zeta(const BaseField& F, int s, double tol = 1e-9);
// Euler product over prime ideals of norm <= cutoff, with the comparison-series
// tail bound on the relative error (second component)
std::pair<double, double> dedekind_zeta_euler(const BaseField& F, int s, long cutoff);

// roots-of-unity count divided by gcd with the weights
long varpi_weighted(const BaseField& F, const std::vector<int>& weights);

}  // namespace wpc
