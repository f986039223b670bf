#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "wpc/sieve.hpp"

namespace wpc {

enum class CountMode { source_points, image_points, twisted_pairs };

struct CountQuery {
    BaseField field = BaseField::rationals();
    WeightedMorphism morphism;  // identity allowed
    Rat bound = Rat(1);
    CountMode mode = CountMode::source_points;
    int tau = 2;  // twisted mode; must divide every target weight
    std::vector<LocalCondition> conditions;
    std::optional<long> class_filter;
    std::optional<IntegralIdeal> defect_filter;
    bool breakdown_by_class = true;
    bool breakdown_by_defect = false;
    bool exclude_discriminant_zero = false;  // image mode onto P(4,6): drop 4A^3+27B^2=0
    bool trivial_twist_only = false;         // twisted mode restricted to d = 1
    long radical_gain_cap = 12;              // twisted-mode height-reduction truncation
    long budget = 50000000;                  // max enumerated box tuples
    int workers = 0;                         // 0: library default
    // image mode: certified source height bound (skips the stabilization
    // doubling) and a bound on the reduction scaling norm (enables cheap
    // rejection of tuples by raw polynomial values); 0/1 = not supplied
    Rat source_bound_hint = Rat(0);
    Int image_gain_hint = 1;
};

// enumeration box larger than the configured budget
struct BudgetError : std::runtime_error {
    long required;
    explicit BudgetError(long req)
        : std::runtime_error("enumeration box needs " + std::to_string(req) +
                             " tuples, over budget"),
          required(req) {}
};

struct CountReport {
    std::string mode_str;
    std::string bound_str;
    long total = 0;
    long source_total = 0;  // image and twisted modes
    double source_image_ratio = 0.0;
    std::map<long, long> by_class;
    std::map<std::string, long> by_defect;
    std::map<std::string, long> by_bx;  // twisted mode, keyed by the ideal b_x
    long box_tuples = 0;
    bool twist_truncated = false;  // some b_x reached the radical gain cap
    double seconds = 0.0;

    std::string to_json() const;
    std::string to_csv_row() const;
};

CountReport count_source_points(const CountQuery& q);
CountReport count_image_points(const CountQuery& q);
CountReport count_twisted_pairs(const CountQuery& q);

// straightforward serial implementation of the same counts, kept as the reference
// the parallel engine is tested against
CountReport count_reference(const CountQuery& q);

// deterministic odometer-order stream of integral tuples; the bound b_i means
// |x| <= b_i over Q, N(x) <= b_i for imaginary quadratic fields, and both
// embeddings |s_j(x)| <= b_i for real quadratic fields
void enumerate_box(const BaseField& F, const std::vector<Rat>& bounds,
                   const std::function<void(const std::vector<FieldElement>&)>& emit);

}  // namespace wpc
