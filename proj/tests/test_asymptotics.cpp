#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "wpc/asymptotics.hpp"

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "wpc/morphism.hpp"

using namespace wpc;

namespace {

FieldElement fe(long n) { return FieldElement(Rat(n)); }

WeightedHomogeneousPoly poly(std::initializer_list<std::pair<std::vector<long>, long>> ms) {
    WeightedHomogeneousPoly p;
    for (auto& [e, c] : ms) p.monomials.push_back({e, fe(c)});
    return p;
}

WeightedMorphism squaring_map() {
    WeightedMorphism f;
    f.src = WeightVector{1, 1};
    f.dst = WeightVector{2, 2};
    f.e_f = 1;
    f.degree = 2;
    f.name = "squaring";
    f.polys = {poly({{{2, 0}, 1}}), poly({{{0, 2}, 1}})};
    validate_morphism(BaseField::rationals(), f);
    return f;
}

// two-torsion-point family: (a, b) on P(2,4) -> (9b - 3a^2, 2a^3 - 9ab)
WeightedMorphism two_torsion_map() {
    WeightedMorphism f;
    f.src = WeightVector{2, 4};
    f.dst = WeightVector{4, 6};
    f.e_f = 1;
    f.degree = 3;
    f.name = "torsion2";
    f.polys = {poly({{{0, 1}, 9}, {{2, 0}, -3}}),
               poly({{{3, 0}, 2}, {{1, 1}, -9}})};
    validate_morphism(BaseField::rationals(), f);
    return f;
}

// degree-12 family with a rational point of order 6 up to sign:
// c4 = 9c^4 + 12c^3 + 30c^2 + 12c + 1, c6 = 27c^6 + ... (homogenized in (t, s))
WeightedMorphism half_six_map() {
    WeightedMorphism f;
    f.src = WeightVector{1, 1};
    f.dst = WeightVector{4, 6};
    f.e_f = 1;
    f.degree = 12;
    f.name = "half6";
    f.polys = {poly({{{4, 0}, -27 * 9},
                     {{3, 1}, -27 * 12},
                     {{2, 2}, -27 * 30},
                     {{1, 3}, -27 * 12},
                     {{0, 4}, -27 * 1}}),
               poly({{{6, 0}, -54 * 27},
                     {{5, 1}, -54 * 54},
                     {{4, 2}, 54 * 135},
                     {{3, 3}, 54 * 180},
                     {{2, 4}, 54 * 99},
                     {{1, 5}, 54 * 18},
                     {{0, 6}, 54 * 1}})};
    validate_morphism(BaseField::rationals(), f);
    return f;
}

PrimeIdeal prime_over(const BaseField& F, long p) { return primes_above(F, Int(p))[0]; }

double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_CASE("archimedean box volumes match the closed forms") {
    BaseField Q = BaseField::rationals();
    CHECK(volume_F1(Q, WeightVector{1, 1}) == doctest::Approx(4.0));
    CHECK(volume_F1(Q, WeightVector{4, 6}) == doctest::Approx(4.0));

    BaseField Qi = BaseField::quadratic(-1);
    double pi = 3.14159265358979323846;
    CHECK(volume_F1(Qi, WeightVector{4, 6}) == doctest::Approx(4 * pi * pi));

    BaseField Qr2 = BaseField::quadratic(2);
    double reg = std::log(1 + std::sqrt(2.0));
    CHECK(volume_F1(Qr2, WeightVector{1, 1}) == doctest::Approx(16.0 * reg * 2.0));
}

TEST_CASE("identity constants reproduce the classical leading terms") {
    BaseField Q = BaseField::rationals();
    double zeta2 = 1.6449340668482264;
    Prediction p1 = predict_identity_constant(Q, WeightVector{1, 1});
    CHECK(p1.exponent == Rat(2));
    CHECK(p1.constant == doctest::Approx(2.0 / zeta2));
    CHECK_FALSE(p1.partial);

    Prediction p2 = predict_identity_constant(Q, WeightVector{4, 6});
    CHECK(p2.exponent == Rat(10));
    double zeta10 = dedekind_zeta(Q, 10);
    CHECK(p2.constant == doctest::Approx(4.0 / zeta10));
    CHECK(p2.error_exponent == Rat(6));

    // closed form for the curve count over any base: h (2^(r1+r2) pi^r2)^2 R
    // 10^(r1+r2-1) gcd(2, varpi) / (varpi |disc| zeta_K(10))
    double pi = 3.14159265358979323846;
    for (long D : {-1, -5, 2}) {
        BaseField K = BaseField::quadratic(D);
        const FieldInvariants& inv = field_invariants(K);
        int r12 = K.r1() + K.r2();
        double place = std::pow(2.0, r12) * std::pow(pi, K.r2());
        double closed = inv.h.get_d() * place * place * inv.regulator *
                        std::pow(10.0, r12 - 1) * std::gcd(2, inv.varpi) /
                        (inv.varpi * std::fabs(K.discriminant().get_d()) *
                         dedekind_zeta(K, 10));
        Prediction p = predict_identity_constant(K, WeightVector{4, 6});
        CHECK(rel_err(p.constant, closed) < 1e-12);
    }
}

TEST_CASE("the long assembly agrees with the closed form") {
    std::vector<BaseField> fields = {BaseField::rationals(), BaseField::quadratic(-1),
                                     BaseField::quadratic(-5), BaseField::quadratic(2)};
    for (auto& F : fields)
        for (auto w : {WeightVector{1, 1}, WeightVector{4, 6}}) {
            Prediction a = assemble_identity_constant(F, w);
            Prediction b = predict_identity_constant(F, w);
            CHECK(rel_err(a.constant, b.constant) < 1e-9);
        }
}

TEST_CASE("image constant of the squaring map") {
    BaseField Q = BaseField::rationals();
    WeightedMorphism sq = squaring_map();
    Prediction p = predict_morphism_constant(Q, sq);
    CHECK(p.exponent == Rat(2));
    CHECK(p.partial);
    CHECK(rel_err(p.constant, 1.0 / 1.6449340668482264) < 0.02);

    PrimeIdeal P2 = prime_over(Q, 2);
    CHECK(defect_local_density(Q, sq, P2, 0) == Rat(1));
    CHECK(defect_local_density(Q, sq, P2, 1) == Rat(0));
}

TEST_CASE("defect spectra match the enumerated defect sets") {
    BaseField Q = BaseField::rationals();
    WeightedMorphism f = two_torsion_map();
    DefectSet ds = defect_set(Q, f, Rat(3));
    REQUIRE(ds.stabilized);
    std::set<IntegralIdeal> from_spectra = {ideal_one(Q)};
    for (auto& P : defect_candidate_primes(Q, f)) {
        auto spec = defect_density_spectrum(Q, f, P);
        Rat total = 0;
        std::set<IntegralIdeal> next = from_spectra;
        for (auto& [t, rho] : spec) {
            CHECK(rho > 0);
            total += rho;
            if (t > 0)
                for (auto& d : from_spectra) next.insert(ideal_mul(Q, d, ideal_pow(Q, P.ideal, t)));
        }
        CHECK(total == Rat(1));
        from_spectra = next;
    }
    for (auto& d : ds.defects) CHECK(from_spectra.count(d) == 1);
}

TEST_CASE("translate counts for the identity") {
    BaseField K = BaseField::quadratic(-5);
    const FieldInvariants& inv = field_invariants(K);
    REQUIRE(inv.h == 2);
    WeightedMorphism id = identity_morphism({1, 1});
    for (auto& c : inv.class_reps) {
        auto [V, index] = defect_translate_count(K, id, c, ideal_one(K));
        CHECK(V == Rat(1));
        CHECK(index == Rat(int_pow(ideal_norm(K, c), 2)));
    }
    auto [V0, i0] = defect_translate_count(K, id, inv.class_reps[0], inv.class_reps[1]);
    CHECK(V0 == Rat(0));  // identity has no nontrivial defects
}

TEST_CASE("twist windows partition the density") {
    BaseField Q = BaseField::rationals();
    WeightedMorphism f = half_six_map();
    for (auto& P : defect_candidate_primes(Q, f)) {
        Rat l0 = twist_window_density(Q, f, P, 0, 2);
        Rat l1 = twist_window_density(Q, f, P, 1, 2);
        CHECK(l0 + l1 == Rat(1));
        CHECK(l0 > 0);
    }
}

TEST_CASE("family predictions carry the right exponents") {
    BaseField Q = BaseField::rationals();
    LevelStructure g15;
    g15.name = "G(1,5)";
    g15.gamma_label = "Gamma_1(5)";
    g15.level = 5;
    g15.gamma_index = 24;
    g15.psi_degree = 12;
    g15.w0 = g15.w1 = 1;
    g15.e = 1;
    Prediction p = predict_level_structure(Q, g15);
    CHECK(p.exponent == Rat(1, 6));
    CHECK(p.partial);  // no parametrization attached

    LevelStructure g06;
    g06.name = "G0(6)";
    g06.gamma_label = "Gamma_0(6)";
    g06.kind = LevelStructure::Kind::twist_family;
    g06.level = 6;
    g06.gamma_index = 12;
    g06.w0 = g06.w1 = 1;
    g06.e = 1;
    g06.base_name = "G(1,6)";
    g06.morphism = half_six_map();
    Prediction t = predict_twisted(Q, g06);
    CHECK(t.exponent == Rat(1, 6));
    CHECK(t.log_power == 1);
    CHECK(t.constant > 0);
    REQUIRE(t.partial_sums.size() == 3);
    CHECK(t.partial_sums[0].second <= t.partial_sums[2].second);
    CHECK(t.partial_sums[2].second == doctest::Approx(t.factors["conductor_sum"]));
}

TEST_CASE("exponent fitting") {
    std::vector<std::pair<double, double>> pts;
    for (double B : {10.0, 100.0, 1000.0, 10000.0}) pts.push_back({B, 3.7 * std::pow(B, 2.5)});
    FitResult r = fit_exponent(pts, false);
    CHECK(std::fabs(r.alpha - 2.5) < 1e-12);
    CHECK(std::fabs(r.kappa - 3.7) < 1e-10);
    CHECK(r.max_residual < 1e-12);

    std::vector<std::pair<double, double>> lpts;
    for (double B : {10.0, 100.0, 1000.0, 10000.0})
        lpts.push_back({B, 0.4 * std::pow(B, 1.0 / 6) * std::log(B)});
    FitResult lr = fit_exponent(lpts, true);
    CHECK(std::fabs(lr.alpha - 1.0 / 6) < 1e-12);
    CHECK(std::fabs(lr.kappa - 0.4) < 1e-10);

    CHECK_THROWS_AS(fit_exponent({{10.0, 5.0}, {20.0, 9.0}}, false), std::invalid_argument);
}

TEST_CASE("prediction serialization") {
    Prediction p = predict_identity_constant(BaseField::rationals(), WeightVector{1, 1});
    std::string js = p.to_json();
    CHECK(js.find("\"exponent\":\"2\"") != std::string::npos);
    CHECK(js.find("constant") != std::string::npos);
}
