#include "wpc/modular.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "wpc/asymptotics.hpp"

namespace wpc {

namespace {

struct RowSpec {
    const char* name;
    const char* gamma;
    LevelStructure::Kind kind;
    long level, index;
    bool minus_one;  // -I in the subgroup (fiber degree = index, else index/2)
    int w0, w1;
    long e;
    const char* base;
};

constexpr auto kTorsion = LevelStructure::Kind::torsion_family;
constexpr auto kTwist = LevelStructure::Kind::twist_family;

const RowSpec kRows[] = {
    {"G(1,1)", "Gamma(1)", kTorsion, 1, 1, true, 4, 6, 1, ""},
    {"G(1,2)", "Gamma_1(2)", kTorsion, 2, 3, true, 2, 4, 1, ""},
    {"G(1,3)", "Gamma_1(3)", kTorsion, 3, 8, false, 1, 3, 1, ""},
    {"G(1,4)", "Gamma_1(4)", kTorsion, 4, 12, false, 1, 2, 1, ""},
    {"G(1,5)", "Gamma_1(5)", kTorsion, 5, 24, false, 1, 1, 1, ""},
    {"G(1,6)", "Gamma_1(6)", kTorsion, 6, 24, false, 1, 1, 1, ""},
    {"G(1,7)", "Gamma_1(7)", kTorsion, 7, 48, false, 1, 1, 2, ""},
    {"G(1,8)", "Gamma_1(8)", kTorsion, 8, 48, false, 1, 1, 2, ""},
    {"G(1,9)", "Gamma_1(9)", kTorsion, 9, 72, false, 1, 1, 3, ""},
    {"G(1,10)", "Gamma_1(10)", kTorsion, 10, 72, false, 1, 1, 3, ""},
    {"G(1,12)", "Gamma_1(12)", kTorsion, 12, 96, false, 1, 1, 4, ""},
    {"G(2,2)", "Gamma(2)", kTorsion, 2, 6, true, 2, 2, 1, ""},
    {"G(2,4)", "Gamma(2,4)", kTorsion, 4, 24, false, 1, 1, 1, ""},
    {"G(2,6)", "Gamma(2,6)", kTorsion, 6, 48, false, 1, 1, 2, ""},
    {"G(2,8)", "Gamma(2,8)", kTorsion, 8, 96, false, 1, 1, 4, ""},
    {"G(3,3)", "Gamma(3)", kTorsion, 3, 24, false, 1, 1, 1, ""},
    {"G(3,6)", "Gamma(3,6)", kTorsion, 6, 72, false, 1, 1, 3, ""},
    {"G(4,4)", "Gamma(4)", kTorsion, 4, 48, false, 1, 1, 2, ""},
    {"G(5,5)", "Gamma(5)", kTorsion, 5, 120, false, 1, 1, 5, ""},
    {"G0(4)", "Gamma_0(4)", kTorsion, 4, 6, true, 2, 2, 1, ""},
    {"G0(6)", "Gamma_0(6)", kTwist, 6, 12, true, 1, 1, 1, "G(1,6)"},
    {"G0(8)", "Gamma_0(8)", kTwist, 8, 12, true, 1, 1, 1, "G1/2(8)"},
    {"G0(9)", "Gamma_0(9)", kTwist, 9, 12, true, 1, 1, 1, "G1/2(9)"},
    {"G0(12)", "Gamma_0(12)", kTwist, 12, 24, true, 1, 1, 2, "G1/2(12)"},
    {"G0(16)", "Gamma_0(16)", kTwist, 16, 24, true, 1, 1, 2, "G1/2(16)"},
    {"G0(18)", "Gamma_0(18)", kTwist, 18, 36, true, 1, 1, 3, "G1/2(18)"},
};

void check_row(const LevelStructure& L) {
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("level catalog row " + L.name + ": " + what);
    };
    if (L.kind == LevelStructure::Kind::torsion_family) {
        if (24 * L.e != (long)L.w0 * L.w1 * L.gamma_index)
            fail("weighted degree scale does not match the subgroup index");
        if (L.psi_degree != L.gamma_index && 2 * L.psi_degree != L.gamma_index)
            fail("fiber degree is neither the index nor half of it");
    }
    if (L.has_morphism()) {
        const WeightedMorphism& f = *L.morphism;
        std::vector<int> a = {L.w0, L.w1}, b = f.src.w;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) fail("parametrization source weights disagree with the row");
        if (!(f.dst == WeightVector{4, 6})) fail("parametrization target is not P(4,6)");
        if (f.e_f != L.e) fail("parametrization degree scale disagrees with the row");
        if (L.kind == LevelStructure::Kind::torsion_family && f.degree != L.psi_degree)
            fail("parametrization fiber degree disagrees with the row");
    }
    for (long h : L.twist_classes) {
        if (std::gcd(h, L.level) != 1) fail("twist class not coprime to the level");
        // the residues are the representatives min(a, N-a) of an index-two
        // subgroup that need not contain -1, so closure holds up to sign
        for (long g : L.twist_classes) {
            long prod = (h * g) % L.level;
            bool found = false;
            for (long q : L.twist_classes) found = found || q == prod || q == L.level - prod;
            if (!found) fail("twist classes are not multiplicatively closed up to sign");
        }
    }
}

std::vector<LevelStructure> build_catalog() {
    BaseField Q = BaseField::rationals();
    std::vector<WeightedMorphism> maps = load_morphism_catalog(Q, catalog_path());
    std::vector<LevelStructure> out;
    for (const RowSpec& r : kRows) {
        LevelStructure L;
        L.name = r.name;
        L.gamma_label = r.gamma;
        L.kind = r.kind;
        L.level = r.level;
        L.gamma_index = r.index;
        L.psi_degree = r.minus_one ? r.index : r.index / 2;
        L.w0 = r.w0;
        L.w1 = r.w1;
        L.e = r.e;
        L.base_name = r.base;
        if (r.kind == kTwist) L.twist_classes = twist_residues(r.level);
        std::string want = r.kind == kTwist ? r.base : r.name;
        for (auto& m : maps)
            if (m.name == want) L.morphism = m;
        check_row(L);
        out.push_back(std::move(L));
    }
    return out;
}

}  // namespace

std::string catalog_path() {
    if (const char* env = std::getenv("WPC_CATALOG")) return env;
    for (const char* p : {"data/catalog.json", "../data/catalog.json", "../../data/catalog.json"})
        if (std::ifstream(p).good()) return p;
    throw std::runtime_error("catalog file not found; set WPC_CATALOG");
}

const std::vector<LevelStructure>& level_catalog() {
    static std::vector<LevelStructure> cat = build_catalog();
    return cat;
}

const LevelStructure& find_level(const std::string& name) {
    for (auto& L : level_catalog())
        if (L.name == name) return L;
    throw std::invalid_argument("unknown level structure: " + name);
}

std::vector<long> twist_residues(long N) {
    switch (N) {
        case 6: return {1};
        case 8: return {1, 3};
        case 9: return {1, 2, 4};
        case 12: return {1, 5};
        case 16: return {1, 3, 5, 7};
        case 18: return {1, 5, 7};
    }
    throw std::invalid_argument("no twist family at level " + std::to_string(N));
}

std::optional<EllipticCurve> curve_from_point(const BaseField& F, const WeightedPoint& x) {
    if (!(x.weights == WeightVector{4, 6}))
        throw std::invalid_argument("curves live on P(4,6)");
    FieldElement A = x.coords[0], B = x.coords[1];
    FieldElement disc = fe_add(
        fe_mul(F, FieldElement(Rat(4)), fe_mul(F, A, fe_mul(F, A, A))),
        fe_mul(F, FieldElement(Rat(27)), fe_mul(F, B, B)));
    if (disc.is_zero()) return std::nullopt;
    return EllipticCurve{A, B};
}

double naive_height(const BaseField& F, const WeightedPoint& x) {
    (void)F;
    HeightValue h = height(x);
    return std::pow(h.approx(), 12.0);
}

Rat height_bound_for_naive(const Int& H) {
    if (H < 1) throw std::invalid_argument("naive bound must be positive");
    // denominator D > 12 H^(11/12) makes consecutive 12th powers of n/D less
    // than 1 apart near H, so the minimal n with (n/D)^12 >= H lands in [H, H+1)
    Int D = 12 * H;
    Int target = H * int_pow(D, 12);
    Int n;
    mpz_root(n.get_mpz_t(), target.get_mpz_t(), 12);
    if (int_pow(n, 12) < target) n += 1;
    Rat B = make_rat(n, D);
    if (!(rat_pow(B, 12) >= Rat(H) && rat_pow(B, 12) < Rat(H) + 1))
        throw std::logic_error("height bound construction failed");
    return B;
}

std::string CensusReport::csv_header() { return "level,field,B,count,cusps_excluded,seconds"; }

std::string CensusReport::to_csv_row() const {
    std::ostringstream os;
    os << level << "," << field << "," << naive_bound << "," << count << ","
       << cusps_excluded << "," << seconds;
    return os.str();
}

std::string CensusReport::to_json() const {
    nlohmann::json j;
    j["level"] = level;
    j["field"] = field;
    j["naive_bound"] = naive_bound.get_str();
    j["count"] = count;
    j["cusps_excluded"] = cusps_excluded;
    j["seconds"] = seconds;
    j["detail"] = nlohmann::json::parse(detail.to_json());
    return j.dump();
}

namespace {

// degenerate points over Q are (-3t^2, +-2t^3); the representative is reduced
// exactly when t is squarefree, with naive height 27 t^6
long rational_cusp_count(const Int& H) {
    long n = 0;
    for (Int t = 1; 27 * int_pow(t, 6) <= H; ++t)
        if (is_squarefree_int(t)) n += 2;
    return n;
}

CountQuery census_query(const BaseField& F, const LevelStructure& level, const Int& H,
                        int workers, long budget) {
    if (!level.has_morphism())
        throw std::runtime_error("no parametrization in the catalog for " + level.name);
    CountQuery q;
    q.field = F;
    q.morphism = *level.morphism;
    q.bound = height_bound_for_naive(H);
    q.exclude_discriminant_zero = true;
    q.workers = workers;
    q.budget = budget;
    if (!q.morphism.is_identity() && F.is_rational()) {
        // every accepted image pulls back to a reduced source of height at
        // most (B * gain)^(1/e) / m, so a single certified box suffices
        Int gain = max_defect_gain(F, q.morphism);
        double m = contraction_lower_bound(F, q.morphism);
        double hb = std::pow(q.bound.get_d() * gain.get_d(), 1.0 / q.morphism.e_f) / m;
        q.source_bound_hint = Rat((long)std::ceil(hb) + 1);
        q.image_gain_hint = gain;
    }
    return q;
}

CensusReport finish(const BaseField& F, const LevelStructure& level, const Int& H,
                    CountReport detail, long cusps) {
    CensusReport r;
    r.level = level.name;
    r.field = F.str();
    r.naive_bound = H;
    r.count = detail.total;
    r.cusps_excluded = cusps;
    r.seconds = detail.seconds;
    r.detail = std::move(detail);
    return r;
}

}  // namespace

CensusReport count_curves(const BaseField& F, const LevelStructure& level, const Int& H,
                          int workers, long budget) {
    if (level.kind != LevelStructure::Kind::torsion_family)
        throw std::invalid_argument(level.name + " is a twist family; use the isogeny census");
    CountQuery q = census_query(F, level, H, workers, budget);
    q.mode = CountMode::image_points;
    CountReport with = count_image_points(q);
    long cusps;
    if (level.morphism->is_identity() && F.is_rational()) {
        cusps = rational_cusp_count(H);  // avoids a second full enumeration
    } else {
        CountQuery q2 = q;
        q2.exclude_discriminant_zero = false;
        cusps = count_image_points(q2).total - with.total;
    }
    return finish(F, level, H, std::move(with), cusps);
}

CensusReport count_isogeny_curves(const BaseField& F, const LevelStructure& level,
                                  const Int& H, long gain_cap, int workers, long budget) {
    if (level.kind != LevelStructure::Kind::twist_family)
        throw std::invalid_argument(level.name + " is not a twist family");
    CountQuery q = census_query(F, level, H, workers, budget);
    q.mode = CountMode::twisted_pairs;
    q.tau = 2;
    q.radical_gain_cap = gain_cap;
    if (q.source_bound_hint > 0) {
        // twisted acceptance compares raw images against bound * gain_cap, so
        // the certified source box must scale accordingly
        double hb = std::pow(q.bound.get_d() * gain_cap *
                                 max_defect_gain(F, q.morphism).get_d(),
                             1.0 / q.morphism.e_f) /
                    contraction_lower_bound(F, q.morphism);
        q.source_bound_hint = Rat((long)std::ceil(hb) + 1);
    }
    CountReport with = count_twisted_pairs(q);
    CountQuery q2 = q;
    q2.exclude_discriminant_zero = false;
    long cusps = count_twisted_pairs(q2).total - with.total;
    return finish(F, level, H, std::move(with), cusps);
}

}  // namespace wpc
