#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "wpc/morphism.hpp"

using namespace wpc;

namespace {

WeightedPoint qpoint(const WeightVector& w, std::vector<long> xs) {
    std::vector<FieldElement> cs;
    for (long v : xs) cs.emplace_back(Rat(v));
    return WeightedPoint(BaseField::rationals(), w, std::move(cs));
}

// f = (y0^2, y1^2) on P(2,2) -> P(2,2), e = 2
WeightedMorphism power_map() {
    WeightedMorphism f;
    f.src = f.dst = WeightVector{2, 2};
    f.e_f = 2;
    f.degree = 2;
    f.name = "square";
    f.polys = {{{Monomial{{2, 0}, FieldElement(Rat(1))}}},
               {{Monomial{{0, 2}, FieldElement(Rat(1))}}}};
    return f;
}

// two-torsion parametrization P(2,4) -> P(4,6), e = 1:
// y^2 = x^3 + a x^2 + b x  ->  short Weierstrass [3(3b - a^2) : 2a^3 - 9ab]
WeightedMorphism two_torsion_map() {
    WeightedMorphism f;
    f.src = WeightVector{2, 4};
    f.dst = WeightVector{4, 6};
    f.e_f = 1;
    f.degree = 3;
    f.name = "tors2";
    f.polys = {{{Monomial{{0, 1}, FieldElement(Rat(9))}, Monomial{{2, 0}, FieldElement(Rat(-3))}}},
               {{Monomial{{3, 0}, FieldElement(Rat(2))}, Monomial{{1, 1}, FieldElement(Rat(-9))}}}};
    return f;
}

}  // namespace

TEST_CASE("validation") {
    auto Q = BaseField::rationals();
    CHECK_NOTHROW(validate_morphism(Q, identity_morphism({4, 6})));
    CHECK_NOTHROW(validate_morphism(Q, power_map()));
    CHECK_NOTHROW(validate_morphism(Q, two_torsion_map()));

    // wrong weighted degree
    WeightedMorphism bad = power_map();
    bad.e_f = 1;
    CHECK_THROWS(validate_morphism(Q, bad));

    // common zero [0:1] shared by (y0^2, y0 y1)
    WeightedMorphism deg;
    deg.src = deg.dst = WeightVector{1, 1};
    deg.e_f = 2;
    deg.polys = {{{Monomial{{2, 0}, FieldElement(Rat(1))}}},
                 {{Monomial{{1, 1}, FieldElement(Rat(1))}}}};
    CHECK_THROWS(validate_morphism(Q, deg));

    // non-homogeneous
    WeightedMorphism nh = power_map();
    nh.polys[0].monomials.push_back(Monomial{{1, 0}, FieldElement(Rat(1))});
    CHECK_THROWS(validate_morphism(Q, nh));
}

TEST_CASE("evaluate") {
    auto Q = BaseField::rationals();
    auto id = identity_morphism({4, 6});
    CHECK(point_equal(evaluate(Q, id, qpoint({4, 6}, {2, 3})), qpoint({4, 6}, {2, 3})));

    auto f = power_map();
    CHECK(point_equal(evaluate(Q, f, qpoint({2, 2}, {1, 2})), qpoint({2, 2}, {1, 4})));
    CHECK(point_equal(evaluate(Q, f, qpoint({2, 2}, {3, 3})), qpoint({2, 2}, {1, 1})));

    // equivariance f(lambda * x) = lambda^e * f(x)
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        long a = (long)(rng() % 15) + 1, b = (long)(rng() % 15) + 1;
        long l = (long)(rng() % 5) + 2;
        auto y1 = evaluate(Q, f, qpoint({2, 2}, {a * l * l, b * l * l}));
        auto y0 = evaluate(Q, f, qpoint({2, 2}, {a, b}));
        CHECK(point_equal(y0, y1));
    }
}

TEST_CASE("representability and weight compatibility") {
    CHECK(is_representable(identity_morphism({4, 6})));
    CHECK(!is_representable(power_map()));  // gcd(2, 2) = 2

    WeightedMorphism f;
    f.src = WeightVector{1, 1};
    f.e_f = 4;
    CHECK(is_representable(f));

    CHECK(weight_compatibility_check(identity_morphism({4, 6})));
    CHECK(weight_compatibility_check(two_torsion_map()));
}

TEST_CASE("heights through morphisms") {
    auto Q = BaseField::rationals();
    auto id = identity_morphism({4, 6});
    auto x = qpoint({4, 6}, {2, 2});
    CHECK(height_through(Q, id, x) == height(x));

    auto f = power_map();
    CHECK(height_through(Q, f, qpoint({2, 2}, {1, 2})).pow == QuadExact(Rat(4)));

    // catalog-style map at [1:1]: image [6 : -7], coprime, ht^12 = max(6^3, 7^2)
    auto y = evaluate(Q, two_torsion_map(), qpoint({2, 4}, {1, 1}));
    CHECK(height(y) == height_through(Q, two_torsion_map(), qpoint({2, 4}, {1, 1})));

    // twisted height with trivial class equals plain height
    CHECK(twisted_height(Q, id, x, FieldElement(Rat(1)), 2) == height_through(Q, id, x));
    CHECK(twisted_height(Q, id, x, FieldElement(Rat(9)), 2) == height_through(Q, id, x));
}

TEST_CASE("defects") {
    auto Q = BaseField::rationals();
    auto id = identity_morphism({4, 6});
    CHECK(defect(Q, id, qpoint({4, 6}, {12, 18})).is_unit_ideal());

    auto f = power_map();
    long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (long p : primes)
        CHECK(defect(Q, f, qpoint({2, 2}, {p, p})) == IntegralIdeal{p, 0, 1});
    CHECK(defect(Q, f, qpoint({2, 2}, {1, 7})).is_unit_ideal());
}

TEST_CASE("defect is a class function and factors the image scaling ideal") {
    auto Q = BaseField::rationals();
    auto f = two_torsion_map();
    std::mt19937 rng(17);
    for (int pt = 0; pt < 5; ++pt) {
        long a = (long)(rng() % 20) + 1, b = (long)(rng() % 20) + 1;
        auto x = qpoint({2, 4}, {a, b});
        IntegralIdeal d0 = defect(Q, f, x);
        for (int trial = 0; trial < 100; ++trial) {
            long ln = (long)(rng() % 9) - 4, ld = (long)(rng() % 4) + 1;
            if (ln == 0) continue;
            Rat lam = make_rat(ln, ld);
            auto y = qpoint({2, 4}, {1, 1});
            y.coords[0] = FieldElement(Rat(a) * rat_pow(lam, 2));
            y.coords[1] = FieldElement(Rat(b) * rat_pow(lam, 4));
            CHECK(defect(Q, f, y) == d0);
        }
        // J_w(f(rep)) = defect * J_{w'}(rep)^e on the canonical representative
        NormalizedRep r = normalize(x);
        auto img = evaluate(Q, f, WeightedPoint(Q, f.src, r.coords));
        IntegralIdeal lhs = scaling_ideal_of_rep(Q, f.dst, img.coords);
        IntegralIdeal rhs =
            ideal_mul(Q, d0, ideal_pow(Q, r.scaling, (unsigned long)f.e_f));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("resultants and candidate primes") {
    auto Q = BaseField::rationals();
    auto f = two_torsion_map();
    FieldElement r = morphism_resultant(Q, f);
    CHECK(!r.is_zero());
    auto ps = defect_candidate_primes(Q, f);
    CHECK(!ps.empty());
    for (auto& P : ps) CHECK((P.p == 2 || P.p == 3));
    CHECK(defect_candidate_primes(Q, identity_morphism({4, 6})).empty());
}

TEST_CASE("defect sets") {
    auto Q = BaseField::rationals();
    // identity: exactly {(1)}, stable
    DefectSet s = defect_set(Q, identity_morphism({1, 1}), Rat(6));
    REQUIRE(s.defects.size() == 1);
    CHECK(s.defects.begin()->is_unit_ideal());
    CHECK(s.stabilized);

    // the power map has unbounded defect support: doubling finds new defects
    DefectSet t = defect_set(Q, power_map(), Rat(5));
    CHECK(!t.stabilized);
    CHECK(t.defects.size() > 2);

    // e = 1 map: finite defect, supported on the resultant primes
    DefectSet u = defect_set(Q, two_torsion_map(), Rat(3));
    CHECK(u.stabilized);
    auto ps = defect_candidate_primes(Q, two_torsion_map());
    for (auto& d : u.defects) {
        if (d.is_unit_ideal()) continue;
        for (auto& [P, e] : factor_ideal(Q, d)) {
            bool found = false;
            for (auto& C : ps) found = found || C.p == P.p;
            CHECK(found);
        }
    }
}

TEST_CASE("catalog file round trip") {
    auto Q = BaseField::rationals();
    const char* path = "/tmp/wpc_catalog_test.json";
    {
        std::ofstream out(path);
        out << R"([{"name":"tors2","src":[2,4],"dst":[4,6],"e":1,"degree":3,
                    "polys":[[{"exps":[0,1],"coeff":"9"},{"exps":[2,0],"coeff":"-3"}],
                             [{"exps":[3,0],"coeff":"2"},{"exps":[1,1],"coeff":"-9"}]]}])";
    }
    auto ms = load_morphism_catalog(Q, path);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].name == "tors2");
    CHECK(ms[0].e_f == 1);
    auto y = evaluate(Q, ms[0], qpoint({2, 4}, {1, 1}));
    CHECK(point_equal(y, evaluate(Q, two_torsion_map(), qpoint({2, 4}, {1, 1}))));
    std::remove(path);

    // loader rejects bad degrees
    {
        std::ofstream out(path);
        out << R"([{"name":"bad","src":[2,4],"dst":[4,6],"e":1,"degree":1,
                    "polys":[[{"exps":[1,0],"coeff":"1"}],[{"exps":[3,0],"coeff":"1"}]]}])";
    }
    CHECK_THROWS(load_morphism_catalog(Q, path));
    std::remove(path);
}
