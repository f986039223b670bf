#pragma once

#include <string>
#include <vector>

#include "wpc/number_field.hpp"
#include "wpc/quadexact.hpp"

namespace wpc {

struct WeightVector {
    std::vector<int> w;

    WeightVector() = default;
    WeightVector(std::initializer_list<int> ws) : w(ws) { validate(); }
    explicit WeightVector(std::vector<int> ws) : w(std::move(ws)) { validate(); }

    void validate() const;
    int n() const { return (int)w.size() - 1; }
    long total() const;  // |w|
    int wmin() const;
    long lcm() const;
    int gcd_all() const;
    bool operator==(const WeightVector& o) const { return w == o.w; }
    std::string str() const;
};

struct WeightedPoint {
    BaseField field;
    WeightVector weights;
    std::vector<FieldElement> coords;

    WeightedPoint(BaseField F, WeightVector wv, std::vector<FieldElement> xs)
        : field(std::move(F)), weights(std::move(wv)), coords(std::move(xs)) {}
    bool is_zero() const;
};

// canonical integral representative of the orbit
struct NormalizedRep {
    std::vector<FieldElement> coords;
    IntegralIdeal scaling;  // lies in the class-representative set
    long class_index = 0;

    std::string key() const;  // deterministic serialization for dedup/equality
};

// exact height: pow = ht^{exponent} with exponent = lcm(w) * [K:Q]
struct HeightValue {
    QuadExact pow;
    long exponent = 1;

    double approx() const;
    // ht <= bound, decided exactly on the common power
    bool leq(const Rat& bound) const;
    bool operator==(const HeightValue& o) const;
};

NormalizedRep normalize(const WeightedPoint& x);
// scaling ideal of the given representative (may be fractional-free only if coords integral)
IntegralIdeal scaling_ideal_of_rep(const BaseField& F, const WeightVector& w,
                                   const std::vector<FieldElement>& coords);
std::pair<IntegralIdeal, long> scaling_ideal(const WeightedPoint& x);

HeightValue height(const WeightedPoint& x);
// fast path: height of an integral representative with known scaling ideal
HeightValue height_of_rep(const BaseField& F, const WeightVector& w,
                          const std::vector<FieldElement>& coords, const IntegralIdeal& J);

WeightedPoint twist(const WeightedPoint& x, const FieldElement& d, int tau);
bool point_equal(const WeightedPoint& x, const WeightedPoint& y);

// total order on elements used for canonical unit-orbit choices
bool fe_less(const FieldElement& x, const FieldElement& y);

std::string point_to_json(const WeightedPoint& x);
WeightedPoint point_from_json(const BaseField& F, const WeightVector& w, const std::string& js);

}  // namespace wpc
