#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpc/enumerate.hpp"
#include "wpc/level.hpp"

namespace wpc {

// catalog file with the explicit parametrizations; WPC_CATALOG overrides the
// search of data/catalog.json upward from the working directory
std::string catalog_path();

// the built-in families: the torsion/full-level table plus the composite
// cyclic-isogeny twist families, with parametrizations attached from the
// catalog file where available. Self-consistency of every row is checked on
// first use.
const std::vector<LevelStructure>& level_catalog();
const LevelStructure& find_level(const std::string& name);

// residues mod N realized by the twisting classes of a cyclic N-isogeny family
std::vector<long> twist_residues(long N);

// y^2 = x^3 + Ax + B
struct EllipticCurve {
    FieldElement A, B;
};

// a point of P(4,6) is a curve unless it sits on the degenerate locus
// 4 x0^3 + 27 x1^2 = 0
std::optional<EllipticCurve> curve_from_point(const BaseField& F, const WeightedPoint& x);

// the naive height max(|A|^3, B^2) (all embeddings), i.e. the 12th power of
// the weighted height of the reduced representative
double naive_height(const BaseField& F, const WeightedPoint& x);

// exact rational B with B^12 in [H, H+1), so weighted height <= B iff the
// integer-valued naive height is <= H
Rat height_bound_for_naive(const Int& H);

struct CensusReport {
    std::string level;
    std::string field;
    Int naive_bound = 0;
    long count = 0;
    long cusps_excluded = 0;
    double seconds = 0.0;
    CountReport detail;

    static std::string csv_header();  // level,field,B,count,cusps_excluded,seconds
    std::string to_csv_row() const;
    std::string to_json() const;
};

// curves over F with the family's level structure and naive height <= H,
// counted through the attached parametrization (throws without one)
CensusReport count_curves(const BaseField& F, const LevelStructure& level, const Int& H,
                          int workers = 0, long budget = 50000000);

// twist families: curves with the composite cyclic isogeny, counted as
// quadratic twists of the base family (tau = 2)
CensusReport count_isogeny_curves(const BaseField& F, const LevelStructure& level,
                                  const Int& H, long gain_cap = 12, int workers = 0,
                                  long budget = 50000000);

}  // namespace wpc
