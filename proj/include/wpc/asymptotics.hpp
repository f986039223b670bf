#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wpc/level.hpp"
#include "wpc/number_field.hpp"
#include "wpc/wproj.hpp"

namespace wpc {

// Leading-term prediction for a point count: count(B) ~ constant * B^exponent
// * (log B)^log_power, with a power-saving error term of order B^error_exponent
// when one is known. `factors` records how the constant was assembled so
// reports can show the provenance of every piece. `partial` marks constants
// that involve numeric integration or truncated local data rather than a
// closed form.
struct Prediction {
    Rat exponent;
    int log_power = 0;
    double constant = 0.0;
    bool partial = false;
    bool has_error_term = false;
    Rat error_exponent;
    std::map<std::string, double> factors;
    std::vector<std::pair<double, double>> partial_sums;  // (cutoff, local sum)
    std::string to_json() const;
};

// volume of the unit height box {max |x_i|_v^(1/w_i) <= 1 at every
// archimedean place} inside K_R^(n+1): (2^(r1+r2) pi^r2)^(n+1) * R_K *
// |w|^(r1+r2-1)
double volume_F1(const BaseField& F, const WeightVector& w);

// numeric area of {x in R^2 : |f_i(x)| <= 1 for all i} for a two-variable
// weighted-homogeneous map over Q (midpoint rule on a grid covering an
// exact bounding box)
double morphism_cell_volume(const BaseField& F, const WeightedMorphism& f,
                            long grid = 2000);

// largest norm of the scaling ideal a reduced source can acquire under f,
// i.e. product over defect primes of N(P)^(max spectrum label); exact
Int max_defect_gain(const BaseField& F, const WeightedMorphism& f);

// certified positive lower bound for min over the unit weighted box boundary
// of max_i |f_i|^(1/(e w'_i)): grid minimum adjusted by a Lipschitz term, so
// the true minimum is never smaller than the returned value
double contraction_lower_bound(const BaseField& F, const WeightedMorphism& f,
                               long samples = 20000);

// points of height <= B on P(w)(K): constant = h * vol / (varpi_w *
// |disc|^((n+1)/2) * zeta_K(|w|)), exponent |w|, error |w| - wmin/deg(K)
Prediction predict_identity_constant(const BaseField& F, const WeightVector& w);

// same constant assembled the long way: class-group sum of lattice translate
// counts against their indices, with the Mobius alternation over the defect
// support. Agrees with predict_identity_constant to working precision; kept
// as a cross-check of the translate machinery.
Prediction assemble_identity_constant(const BaseField& F, const WeightVector& w);

// image points of f of height <= B: exponent |w'|/e(f) in the target height.
// Over Q the constant multiplies the numeric cell volume by the local defect
// sum; over quadratic fields (f not the identity) only the exponent is
// produced and the prediction is marked partial.
Prediction predict_morphism_constant(const BaseField& F, const WeightedMorphism& f);

// curve count for a torsion family, in the naive height: exponent
// (w0+w1)/(12 e), error exponent subtracts wmin/(12 e deg). Constant filled
// in when a parametrization is available over Q.
Prediction predict_level_structure(const BaseField& F, const LevelStructure& level);

// curve count for a twist family, in the naive height: exponent 1/6 with a
// log when e = 1. The local sum over twisting conductors is a finite product
// over the bad primes of the base map; partial_sums records it truncated at
// conductor norms 100, 1000, cap.
Prediction predict_twisted(const BaseField& F, const LevelStructure& level,
                           long cap = 10000);

// density, among w_src-primitive pairs over Z_p, of target valuation defect
// exactly t (exact rational; computed by refining p-adic digit classes until
// every class is decided)
Rat defect_local_density(const BaseField& F, const WeightedMorphism& f,
                         const PrimeIdeal& P, int t);
// all t with positive density, with densities (sums to 1)
std::vector<std::pair<int, Rat>> defect_density_spectrum(const BaseField& F,
                                                         const WeightedMorphism& f,
                                                         const PrimeIdeal& P);

// density, among w_src-primitive pairs over Z_p, of the valuation window
// picking out twisting exponent b at p: with s the coordinate minimizing
// v(f_s(x))/w_s, the condition is frac(v_s/w_s) in [(tau-b)/tau, (tau-b+1)/tau)
// for b >= 1 and [0, 1/tau) for b = 0. Ties between minimizing coordinates
// share the fractional part, so the window does not depend on the choice of s.
Rat twist_window_density(const BaseField& F, const WeightedMorphism& f,
                         const PrimeIdeal& P, int b, int tau);

// number of points of the scaled defect locus inside one fundamental domain
// of its comparison lattice, together with the lattice index. For ideals a, d:
// the locus is pairs congruent to a defect-d point after scaling by a, the
// lattice is a^w' away from the defect support and (q a^e)^w on it.
std::pair<Rat, Rat> defect_translate_count(const BaseField& F,
                                           const WeightedMorphism& f,
                                           const IntegralIdeal& a,
                                           const IntegralIdeal& d);

// least squares fit of log(count) = alpha log B + log kappa
// (- log log B first when log_correction), needs >= 3 points
struct FitResult {
    double alpha = 0.0;
    double kappa = 0.0;
    double max_residual = 0.0;
    std::vector<double> residuals;
};
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points,
                       bool log_correction = false);

}  // namespace wpc
