#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "wpc/wproj.hpp"

using namespace wpc;

namespace {
WeightedPoint qpoint(const WeightVector& w, std::vector<long> xs) {
    std::vector<FieldElement> cs;
    for (long v : xs) cs.emplace_back(Rat(v));
    return WeightedPoint(BaseField::rationals(), w, std::move(cs));
}
}  // namespace

TEST_CASE("weight vector basics") {
    WeightVector w{4, 6};
    CHECK(w.total() == 10);
    CHECK(w.wmin() == 4);
    CHECK(w.lcm() == 12);
    CHECK(w.gcd_all() == 2);
    CHECK_THROWS(WeightVector{0, 1});
}

TEST_CASE("normalize examples over Q") {
    auto Q = BaseField::rationals();
    {
        auto r = normalize(qpoint({4, 6}, {16, 64}));
        CHECK(r.coords[0] == FieldElement(Rat(1)));
        CHECK(r.coords[1] == FieldElement(Rat(1)));
        CHECK(r.scaling.is_unit_ideal());
    }
    {
        WeightedPoint x(Q, {1, 1}, {FieldElement(Rat(3, 2)), FieldElement(Rat(5, 4))});
        auto r = normalize(x);
        CHECK(r.coords[0] == FieldElement(Rat(6)));
        CHECK(r.coords[1] == FieldElement(Rat(5)));
        CHECK(r.scaling.is_unit_ideal());
    }
    {
        auto r = normalize(qpoint({4, 6}, {2, 2}));
        CHECK(r.coords[0] == FieldElement(Rat(2)));
        CHECK(r.coords[1] == FieldElement(Rat(2)));
        CHECK(r.scaling.is_unit_ideal());
    }
    CHECK_THROWS(normalize(qpoint({1, 1}, {0, 0})));
}

TEST_CASE("scaling ideal examples") {
    auto Q = BaseField::rationals();
    CHECK(scaling_ideal_of_rep(Q, {4, 6}, {FieldElement(Rat(16)), FieldElement(Rat(64))}) ==
          IntegralIdeal{2, 0, 1});
    CHECK(scaling_ideal_of_rep(Q, {4, 6}, {FieldElement(Rat(2)), FieldElement(Rat(2))})
              .is_unit_ideal());

    auto F = BaseField::quadratic(-5);
    // (2, 1+sqrt(-5)): scaling ideal is the nonprincipal prime over 2
    IntegralIdeal J =
        scaling_ideal_of_rep(F, {1, 1}, {FieldElement(Rat(2)), FieldElement(Rat(1), Rat(1))});
    CHECK(ideal_norm(F, J) == 2);
    CHECK(!ideal_is_principal(F, J));
    // normalized rep keeps a class representative as scaling ideal
    WeightedPoint x(F, {1, 1}, {FieldElement(Rat(2)), FieldElement(Rat(1), Rat(1))});
    auto [I, cls] = scaling_ideal(x);
    CHECK(cls == 1);
    CHECK(I == field_invariants(F).class_reps[1]);
}

TEST_CASE("height examples") {
    {
        HeightValue h = height(qpoint({1, 1}, {3, 4}));
        CHECK(h.pow == QuadExact(Rat(4)));
        CHECK(h.exponent == 1);
        CHECK(h.leq(Rat(4)));
        CHECK(!h.leq(Rat(399, 100)));
    }
    {
        HeightValue h = height(qpoint({4, 6}, {2, 2}));  // ht = 2^{1/4}, ht^12 = 8
        CHECK(h.pow == QuadExact(Rat(8)));
        CHECK(h.exponent == 12);
        CHECK(h.approx() == doctest::Approx(std::pow(2.0, 0.25)));
    }
    CHECK(height(qpoint({4, 6}, {1, 1})).pow == QuadExact(Rat(1)));
    // scaling ideal discount: [2^4 : 2^6] is the same point as [1:1]
    CHECK(height(qpoint({4, 6}, {16, 64})).pow == QuadExact(Rat(1)));
}

TEST_CASE("twists") {
    auto x = qpoint({4, 6}, {1, 1});
    CHECK(point_equal(twist(x, FieldElement(Rat(1)), 2), x));
    CHECK(point_equal(twist(x, FieldElement(Rat(4)), 2), x));  // square acts trivially
    auto t = twist(x, FieldElement(Rat(2)), 2);                // [4:8], ht = sqrt 2
    CHECK(height(t).pow == QuadExact(Rat(64)));
    CHECK_THROWS(twist(x, FieldElement(Rat(2)), 3));
    CHECK_THROWS(twist(x, FieldElement(Rat(0)), 2));
}

TEST_CASE("point equality") {
    CHECK(point_equal(qpoint({1, 1}, {2, 3}), qpoint({1, 1}, {4, 6})));
    CHECK(!point_equal(qpoint({1, 1}, {1, 1}), qpoint({1, 1}, {1, -1})));
    CHECK(point_equal(qpoint({2, 2}, {1, 2}), qpoint({2, 2}, {4, 8})));
    CHECK_THROWS(point_equal(qpoint({1, 1}, {1, 1}), qpoint({2, 2}, {1, 1})));
}

TEST_CASE("height and scaling ideal are orbit invariants") {
    std::mt19937 rng(5);
    for (auto F : {BaseField::rationals(), BaseField::quadratic(-1), BaseField::quadratic(-5),
                   BaseField::quadratic(2)}) {
        for (WeightVector w : {WeightVector{1, 1}, WeightVector{4, 6}, WeightVector{2, 3, 4}}) {
            std::vector<FieldElement> cs;
            for (size_t i = 0; i < w.w.size(); ++i)
                cs.emplace_back(Rat((long)(rng() % 19) + 1),
                                F.is_rational() ? Rat(0) : Rat((long)(rng() % 7)));
            WeightedPoint x(F, w, cs);
            HeightValue h0 = height(x);
            auto [J0, c0] = scaling_ideal(x);
            std::string k0 = normalize(x).key();
            for (int trial = 0; trial < 100; ++trial) {
                long na = (long)(rng() % 13) - 6, nb = F.is_rational() ? 0 : (long)(rng() % 5) - 2;
                long de = 1 + (long)(rng() % 6);
                FieldElement lam(make_rat(na, de), make_rat(nb, de));
                if (lam.is_zero()) continue;
                std::vector<FieldElement> ys = cs;
                for (size_t i = 0; i < ys.size(); ++i)
                    ys[i] = fe_mul(F, fe_pow(F, lam, w.w[i]), ys[i]);
                WeightedPoint y(F, w, ys);
                CHECK(height(y) == h0);
                auto [J1, c1] = scaling_ideal(y);
                CHECK(c1 == c0);
                CHECK(normalize(y).key() == k0);
            }
        }
    }
}

TEST_CASE("scaling ideal equivariance J(lambda * x) = (lambda) J(x)") {
    std::mt19937 rng(11);
    auto F = BaseField::quadratic(-1);
    WeightVector w{1, 1};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FieldElement> cs = {FieldElement(Rat((long)(rng() % 9) + 1), Rat((long)(rng() % 5))),
                                        FieldElement(Rat((long)(rng() % 9) + 1), Rat((long)(rng() % 5)))};
        FieldElement lam(Rat((long)(rng() % 5) + 1), Rat((long)(rng() % 3)));
        std::vector<FieldElement> ys = cs;
        for (size_t i = 0; i < ys.size(); ++i) ys[i] = fe_mul(F, lam, ys[i]);
        IntegralIdeal J0 = scaling_ideal_of_rep(F, w, cs);
        IntegralIdeal J1 = scaling_ideal_of_rep(F, w, ys);
        CHECK(J1 == ideal_mul(F, ideal_principal(F, lam), J0));
    }
}

TEST_CASE("P1(Q) height equals max(|a|,|b|) on coprime pairs") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10000; ++trial) {
        long a = (long)(rng() % 2001) - 1000, b = (long)(rng() % 2001) - 1000;
        if (a == 0 && b == 0) continue;
        Int g = gcd(Int(a), Int(b));
        long m = std::max(std::labs(a), std::labs(b)) / g.get_si();
        CHECK(height(qpoint({1, 1}, {a, b})).pow == QuadExact(Rat(m)));
    }
}

TEST_CASE("unit invariance over real quadratic fields") {
    for (long d : {2L, 5L, 13L}) {
        auto F = BaseField::quadratic(d);
        FieldElement u = fundamental_unit(F);
        WeightVector w{1, 1};
        WeightedPoint x(F, w, {FieldElement(Rat(3), Rat(1)), FieldElement(Rat(1), Rat(2))});
        WeightedPoint y(F, w,
                        {fe_mul(F, u, x.coords[0]), fe_mul(F, u, x.coords[1])});
        CHECK(height(y) == height(x));
        CHECK(point_equal(x, y));
        // powers of the unit too
        WeightedPoint z(F, w,
                        {fe_mul(F, fe_pow(F, u, 3), x.coords[0]),
                         fe_mul(F, fe_pow(F, u, 3), x.coords[1])});
        CHECK(point_equal(x, z));
    }
}

TEST_CASE("json round trip") {
    auto F = BaseField::quadratic(-1);
    WeightVector w{1, 1};
    WeightedPoint x(F, w, {FieldElement(Rat(3, 2), Rat(-1)), FieldElement(Rat(5))});
    auto y = point_from_json(F, w, point_to_json(x));
    CHECK(point_equal(x, y));
}
