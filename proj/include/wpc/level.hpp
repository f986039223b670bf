#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpc/morphism.hpp"

namespace wpc {

// A congruence family of elliptic curves, given by the subgroup it cuts out
// of SL2(Z) together with the weights of the coarse space it parametrizes.
// Two kinds appear:
//   torsion_family: the coarse space is a weighted projective line and the
//     family is counted directly through a weighted-degree map to P(4,6);
//   twist_family: curves admitting a cyclic isogeny of composite degree,
//     counted as quadratic twists of a torsion_family base (base_name).
struct LevelStructure {
    enum class Kind { torsion_family, twist_family };

    std::string name;         // e.g. "G(1,5)" or "G0(12)"
    std::string gamma_label;  // e.g. "Gamma_1(5)"
    Kind kind = Kind::torsion_family;
    long level = 1;           // the N the subgroup is defined mod
    long gamma_index = 1;     // index of the subgroup in SL2(Z)
    long psi_degree = 1;      // index of {+-1} * subgroup, fiber degree of the map
    int w0 = 4, w1 = 6;       // weights of the coarse space
    long e = 1;               // weighted degree scale of the map to P(4,6)

    // twist families only: the untwisted base and the residues mod `level`
    // realized by the twisting classes
    std::string base_name;
    std::vector<long> twist_classes;

    // explicit parametrization when one is in the catalog (for twist
    // families this is the map of the base family)
    std::optional<WeightedMorphism> morphism;

    bool has_morphism() const { return morphism.has_value(); }
    // growth exponent in the naive height (the 12th power of the weighted one)
    Rat naive_exponent() const { return make_rat(w0 + w1, 12 * e); }
};

}  // namespace wpc
